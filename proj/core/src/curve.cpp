#include "decaylab/curve.hpp"

#include <cmath>
#include <stdexcept>

namespace decaylab {

void check_series(const CurveSeries& series) {
    if (series.t.size() != series.values.size())
        throw std::invalid_argument("curve series: t and values differ in length");
    for (std::size_t i = 0; i < series.t.size(); ++i) {
        if (!std::isfinite(series.t[i])) throw std::invalid_argument("curve series: non-finite time");
        if (i > 0 && !(series.t[i] > series.t[i - 1]))
            throw std::invalid_argument("curve series: time grid not strictly increasing");
        const double v = series.values[i];
        if (!std::isfinite(v)) throw std::invalid_argument("curve series: non-finite value");
        if (series.kind == CurveKind::probability && (v < 0.0 || v > 1.0 + 1e-9))
            throw std::invalid_argument("curve series: probability outside [0, 1]");
    }
}

const char* to_string(Frame frame) {
    return frame == Frame::rest ? "rest" : "boosted";
}

const char* to_string(CurveKind kind) {
    switch (kind) {
        case CurveKind::amplitude: return "amplitude";
        case CurveKind::probability: return "probability";
        case CurveKind::rate: return "rate";
        case CurveKind::timemap: return "timemap";
    }
    return "unknown";
}

}  // namespace decaylab

#pragma once

#include <string>
#include <vector>

namespace decaylab {

enum class Frame { rest, boosted };
enum class CurveKind { amplitude, probability, rate, timemap };

struct CurveSeries {
    std::vector<double> t;
    std::vector<double> values;
    Frame frame = Frame::rest;
    CurveKind kind = CurveKind::probability;
    std::string provenance;
};

/// Throws std::invalid_argument if t is not strictly increasing, sizes differ,
/// values are non-finite, or a probability leaves [0, 1 + 1e-9].
void check_series(const CurveSeries& series);

const char* to_string(Frame frame);
const char* to_string(CurveKind kind);

}  // namespace decaylab

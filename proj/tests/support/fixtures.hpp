#pragma once

#include <decaylab/kinematics.hpp>

#include <array>
#include <string>

namespace fixtures {

struct FigureCurve {
    const char* label;
    double momentum;
    double mass;
    double frequency;
    double amplitude;
    double gamma;  // caption value
};

// Natural units Γ = 1.
inline constexpr std::array<FigureCurve, 5> fig1 = {{
    {"a", 150.0, 30.0, 5.0, 0.09, 5.0990},
    {"b", 200.0, 80.0, 10.0, 0.04, 2.6926},
    {"c", 210.0, 100.0, 10.0, 0.04, 2.3259},
    {"d", 200.0, 150.0, 40.0, 0.01, 1.6667},
    {"e", 100.0, 100.0, 10.0, 0.04, 1.4142135623730951},
}};

inline constexpr std::array<FigureCurve, 5> fig3 = {{
    {"a", 100.0, 100.0, 10.0, 0.04, 1.4142135623730951},
    {"b", 200.0, 150.0, 40.0, 0.01, 1.6667},
    {"c", 210.0, 100.0, 10.0, 0.04, 2.3259},
    {"d", 200.0, 80.0, 10.0, 0.04, 2.6926},
    {"e", 150.0, 30.0, 5.0, 0.09, 5.0990},
}};

inline decaylab::RestModeSet single(double mass, double width, double frequency, double amplitude) {
    return decaylab::make_modes({mass, {{1.0, width, frequency, amplitude}}});
}

inline decaylab::RestModeSet single(const FigureCurve& c) {
    return single(c.mass, 1.0, c.frequency, c.amplitude);
}

// Three modes with distinct widths, one with zero frequency and one pure exponential.
inline decaylab::RestModeSet three_modes() {
    return decaylab::make_modes({120.0,
                                 {{0.5, 1.0, 10.0, 0.04}, {0.3, 1.7, 0.0, 0.1}, {0.2, 2.5, 6.0, 0.0}}});
}

// Two modes sharing a frequency.
inline decaylab::RestModeSet twin_frequency() {
    return decaylab::make_modes({100.0, {{0.6, 1.0, 8.0, 0.05}, {0.4, 1.5, 8.0, 0.08}}});
}

}  // namespace fixtures

#pragma once

#include <decaylab/kinematics.hpp>
#include <decaylab/oracle.hpp>
#include <decaylab/window.hpp>

#include <json.hpp>

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

namespace decaylab::cli {

namespace exit_code {
inline constexpr int ok = 0;
inline constexpr int bound_exceeded = 1;
inline constexpr int invalid = 2;
inline constexpr int io = 3;
inline constexpr int no_convergence = 4;
}  // namespace exit_code

class CliError : public std::runtime_error {
public:
    CliError(int code, const std::string& message) : std::runtime_error(message), code(code) {}
    int code;
};

enum class Spacing { linear, log };

struct GridSpec {
    double t_min = 0.0;
    double t_max = 1.0;
    std::size_t points = 2;
    Spacing spacing = Spacing::linear;

    std::vector<double> values() const;
};

struct RunConfig {
    ModeCandidate modes;
    ValidationOptions validation;
    double momentum = 0.0;
    GridSpec grid;
    WindowParams window;
    QuadratureSpec oracle;
    double bound = 1e-2;  // max relative deviation accepted by compare
    std::optional<std::string> output;
    std::string description;
};

/// Throws CliError with exit_code::io when the file cannot be read and
/// exit_code::invalid for malformed JSON or schema violations.
RunConfig load_config(const std::string& path);
RunConfig parse_config(const nlohmann::json& doc);

/// Throws CliError(exit_code::invalid) listing the violated constraints.
RestModeSet build_modes(const RunConfig& config);

nlohmann::json params_json(const RunConfig& config);

}  // namespace decaylab::cli

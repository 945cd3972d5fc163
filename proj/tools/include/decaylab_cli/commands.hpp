#pragma once

#include "decaylab_cli/config.hpp"

#include <decaylab/boosted.hpp>
#include <decaylab/window.hpp>

#include <cstdint>
#include <optional>
#include <ostream>
#include <string>

namespace decaylab::cli {

enum class Which { rest, boosted, rate, split };

struct Options {
    std::string config;
    std::optional<std::string> out;
    Which which = Which::rest;
    unsigned parallel = 1;
    std::optional<std::uint64_t> seed;  // reserved
    bool quiet = false;
};

int cmd_validate(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_curve(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_window(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_phi(const Options& opt, std::ostream& out, std::ostream& err);
int cmd_compare(const Options& opt, std::ostream& out, std::ostream& err);

nlohmann::json window_json(const RestModeSet& modes, const BoostContext& ctx, const TimeWindow& window);
nlohmann::json constraints_json(const ConstraintReport& report);

/// Probability rows are valid when inside the closed-form domain and within [0, 1 + 1e-6].
bool row_valid(const BoostedEvaluation& ev);

}  // namespace decaylab::cli

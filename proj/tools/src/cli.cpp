#include "decaylab_cli/cli.hpp"

#include "decaylab_cli/commands.hpp"

#include <decaylab/version.hpp>

#include <CLI11.hpp>

#include <map>

namespace decaylab::cli {

int run_cli(int argc, const char* const* argv, std::ostream& out, std::ostream& err) {
    CLI::App app{"Lab-frame survival probabilities for moving unstable systems", "decaylab"};
    app.set_version_flag("--version", decaylab::version);
    app.require_subcommand(1);
    app.fallthrough();

    Options opt;
    std::optional<std::string> out_path;
    std::optional<std::uint64_t> seed;
    app.add_option("--config", opt.config, "JSON run configuration");
    app.add_option("--out", out_path, "output path (default: config 'output', else stdout)");
    app.add_option("--parallel", opt.parallel, "worker threads for grid evaluation")->check(CLI::Range(1u, 1024u));
    app.add_option("--seed", seed, "reserved");
    app.add_flag("--quiet", opt.quiet, "suppress informational messages");

    auto* validate = app.add_subcommand("validate", "check the mode model and window constraints");
    auto* curve = app.add_subcommand("curve", "emit a survival/decay-rate curve as CSV");
    const std::map<std::string, Which> which_map{
        {"rest", Which::rest}, {"boosted", Which::boosted}, {"rate", Which::rate}, {"split", Which::split}};
    curve->add_option("--which", opt.which, "rest | boosted | rate | split")
        ->transform(CLI::CheckedTransformer(which_map, CLI::ignore_case));
    auto* window = app.add_subcommand("window", "exponential-time window report as JSON");
    auto* phi = app.add_subcommand("phi", "time map phi_p as CSV plus a linearity fit sidecar");
    auto* compare = app.add_subcommand("compare", "closed form against direct quadrature");

    try {
        app.parse(argc, argv);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return exit_code::ok;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return exit_code::ok;
    } catch (const CLI::CallForVersion&) {
        out << decaylab::version << '\n';
        return exit_code::ok;
    } catch (const CLI::ParseError& e) {
        err << e.what() << '\n';
        return exit_code::invalid;
    }
    opt.out = out_path;
    opt.seed = seed;

    try {
        if (validate->parsed()) return cmd_validate(opt, out, err);
        if (curve->parsed()) return cmd_curve(opt, out, err);
        if (window->parsed()) return cmd_window(opt, out, err);
        if (phi->parsed()) return cmd_phi(opt, out, err);
        if (compare->parsed()) return cmd_compare(opt, out, err);
    } catch (const CliError& e) {
        err << e.what() << '\n';
        return e.code;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << '\n';
        return exit_code::invalid;
    }
    return exit_code::invalid;
}

}  // namespace decaylab::cli

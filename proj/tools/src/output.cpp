#include "decaylab_cli/output.hpp"

#include "decaylab_cli/config.hpp"

#include <charconv>
#include <fstream>

namespace decaylab::cli {

std::string format_double(double v) {
    char buf[64];
    const auto res = std::to_chars(buf, buf + sizeof buf, v);
    return std::string(buf, res.ptr);
}

void write_text(const std::optional<std::string>& path, const std::string& text, std::ostream& fallback) {
    if (!path) {
        fallback << text;
        fallback.flush();
        return;
    }
    std::ofstream out(*path, std::ios::binary | std::ios::trunc);
    if (!out) throw CliError(exit_code::io, "cannot open '" + *path + "' for writing");
    out << text;
    out.close();
    if (!out) throw CliError(exit_code::io, "failed writing '" + *path + "'");
}

std::string dump_json(const nlohmann::json& doc) { return doc.dump(2) + "\n"; }

}  // namespace decaylab::cli

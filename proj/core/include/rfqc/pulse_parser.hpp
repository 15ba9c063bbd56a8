#pragma once

#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "rfqc/errors.hpp"
#include "rfqc/pulse_ast.hpp"

namespace rfqc::pulse {

enum class Severity { error, warning };

struct Diagnostic {
    std::string file;
    int line = 0;
    int col = 0;
    std::string code;
    std::string message;
    Severity severity = Severity::error;
};

/// One JSON object per line: {"file","line","col","code","severity","message"}.
std::string to_json_line(const Diagnostic& d);

struct ParseResult {
    std::optional<Program> program;  ///< present when there are no errors
    std::vector<Diagnostic> diagnostics;

    bool ok() const noexcept { return program.has_value(); }
};

/// Parse `.qpl` source. Never throws on bad input; problems are reported as diagnostics.
ParseResult parse(std::string_view text, const std::string& file = "<input>");

/// Thrown by parse_or_throw; carries the diagnostics.
class ParseError : public Error {
public:
    explicit ParseError(std::vector<Diagnostic> diags);
    const std::vector<Diagnostic>& diagnostics() const noexcept { return diags_; }

private:
    std::vector<Diagnostic> diags_;
};

Program parse_or_throw(std::string_view text, const std::string& file = "<input>");

/// Read and parse a file. Throws IoError if it cannot be read.
ParseResult parse_file(const std::string& path);

}  // namespace rfqc::pulse

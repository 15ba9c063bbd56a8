#pragma once

#include <filesystem>
#include <sstream>

#include "rfqc/cli/experiments.hpp"
#include "rfqc/pulse_parser.hpp"

namespace rfqc::cli {

struct LoadedProgram {
    pulse::Program program;
    std::string diagnostics;  ///< JSON lines, warnings included
};

inline LoadedProgram load_program(const std::filesystem::path& path)
{
    pulse::ParseResult res;
    try {
        res = pulse::parse_file(path.string());
    } catch (const IoError& e) {
        throw ConfigError(e.what());
    }
    std::ostringstream diags;
    for (const auto& d : res.diagnostics) {
        diags << pulse::to_json_line(d) << "\n";
    }
    if (!res.ok()) {
        throw ProgramError("program '" + path.string() + "' has errors", diags.str());
    }
    return {std::move(*res.program), diags.str()};
}

inline const pulse::CoherenceConstraint& find_constraint(const pulse::Program& p, const std::string& name)
{
    for (const auto& c : p.constraints) {
        if (c.name == name || name.empty()) {
            return c;
        }
    }
    throw ConfigError(name.empty() ? "program declares no constraint" : "program has no constraint '" + name + "'");
}

}  // namespace rfqc::cli

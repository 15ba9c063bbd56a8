#pragma once

#include <cstdint>
#include <filesystem>
#include <string>
#include <vector>

#include "rfqc/csv.hpp"

namespace rfqc::cli {

enum class Relation { less, less_equal, greater_equal, equal };

/// One checked quantity of an experiment.
struct Check {
    std::string name;
    double value = 0.0;
    double limit = 0.0;
    Relation relation = Relation::less;
    bool pass = false;
};

struct Trace {
    std::string name;  ///< file stem
    io::CsvTable table;
};

/// Everything an experiment emits: a summary record plus CSV traces.
struct Report {
    std::string experiment;
    std::uint64_t seed = 0;
    std::vector<Check> checks;
    std::vector<std::pair<std::string, double>> values;  ///< unchecked quantities worth recording
    std::vector<std::string> notes;
    std::vector<Trace> traces;
    std::vector<std::pair<std::string, std::string>> files;  ///< extra (name, content) artifacts

    /// Add a check and evaluate it.
    const Check& check(const std::string& name, double value, Relation relation, double limit);
    void value(const std::string& name, double v) { values.emplace_back(name, v); }
    void trace(const std::string& name, io::CsvTable table) { traces.push_back({name, std::move(table)}); }
    bool pass() const;
};

/// Machine-readable summary with a fixed key order.
std::string summary_json(const Report& r);

/// Write one CSV per trace, the extra files and summary.json into `dir` (created if needed).
/// Throws DomainError for a report without traces and IoError when the directory is unwritable.
void export_report(const Report& r, const std::filesystem::path& dir);

}  // namespace rfqc::cli

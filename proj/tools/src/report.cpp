#include "rfqc/cli/report.hpp"

#include <nlohmann/json.hpp>

#include <algorithm>
#include <cmath>
#include <fstream>
#include <sstream>

#include "rfqc/errors.hpp"

namespace rfqc::cli {

namespace {

const char* relation_text(Relation r)
{
    switch (r) {
    case Relation::less: return "<";
    case Relation::less_equal: return "<=";
    case Relation::greater_equal: return ">=";
    case Relation::equal: return "==";
    }
    return "?";
}

bool holds(double v, Relation r, double limit)
{
    switch (r) {
    case Relation::less: return v < limit;
    case Relation::less_equal: return v <= limit;
    case Relation::greater_equal: return v >= limit;
    case Relation::equal: return v == limit;
    }
    return false;
}

nlohmann::ordered_json number(double v)
{
    if (std::isfinite(v)) {
        return v;
    }
    return std::isnan(v) ? "nan" : (v > 0 ? "inf" : "-inf");
}

void write_file(const std::filesystem::path& path, const std::string& content)
{
    std::ofstream out(path, std::ios::binary);
    out << content;
    out.close();
    if (!out) {
        throw IoError("cannot write '" + path.string() + "'");
    }
}

}  // namespace

const Check& Report::check(const std::string& name, double value, Relation relation, double limit)
{
    checks.push_back({name, value, limit, relation, holds(value, relation, limit)});
    return checks.back();
}

bool Report::pass() const
{
    return std::all_of(checks.begin(), checks.end(), [](const Check& c) { return c.pass; });
}

std::string summary_json(const Report& r)
{
    nlohmann::ordered_json j;
    j["experiment"] = r.experiment;
    j["seed"] = r.seed;
    j["pass"] = r.pass();
    j["checks"] = nlohmann::ordered_json::array();
    for (const auto& c : r.checks) {
        nlohmann::ordered_json e;
        e["name"] = c.name;
        e["value"] = number(c.value);
        e["relation"] = relation_text(c.relation);
        e["limit"] = number(c.limit);
        e["pass"] = c.pass;
        j["checks"].push_back(e);
    }
    j["values"] = nlohmann::ordered_json::object();
    for (const auto& [k, v] : r.values) {
        j["values"][k] = number(v);
    }
    j["notes"] = r.notes;
    j["artifacts"] = nlohmann::ordered_json::array();
    for (const auto& t : r.traces) {
        j["artifacts"].push_back(t.name + ".csv");
    }
    for (const auto& f : r.files) {
        j["artifacts"].push_back(f.first);
    }
    return j.dump(2) + "\n";
}

void export_report(const Report& r, const std::filesystem::path& dir)
{
    if (r.traces.empty()) {
        throw DomainError("report has no traces to export");
    }
    std::error_code ec;
    std::filesystem::create_directories(dir, ec);
    if (ec || !std::filesystem::is_directory(dir)) {
        throw IoError("cannot create output directory '" + dir.string() + "'");
    }
    for (const auto& t : r.traces) {
        std::ostringstream os;
        io::write_table(os, t.table);
        write_file(dir / (t.name + ".csv"), os.str());
    }
    for (const auto& [name, content] : r.files) {
        write_file(dir / name, content);
    }
    write_file(dir / "summary.json", summary_json(r));
}

}  // namespace rfqc::cli

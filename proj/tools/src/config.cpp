#include "rfqc/cli/config.hpp"

#include <cctype>
#include <cmath>
#include <fstream>
#include <map>
#include <numbers>
#include <sstream>

namespace rfqc::cli {

namespace {

struct Suffix {
    Unit unit;
    double scale;
};

const std::map<std::string, Suffix>& suffixes()
{
    static const std::map<std::string, Suffix> table{
        {"Hz", {Unit::frequency, 1.0}},    {"kHz", {Unit::frequency, 1e3}}, {"MHz", {Unit::frequency, 1e6}},
        {"GHz", {Unit::frequency, 1e9}},   {"s", {Unit::time, 1.0}},         {"ms", {Unit::time, 1e-3}},
        {"us", {Unit::time, 1e-6}},        {"ns", {Unit::time, 1e-9}},       {"rad", {Unit::angle, 1.0}},
        {"deg", {Unit::angle, std::numbers::pi / 180.0}},
    };
    return table;
}

std::string join(const std::string& where, const std::string& key)
{
    return where.empty() ? key : where + "." + key;
}

}  // namespace

double parse_quantity(const std::string& text, Unit unit)
{
    std::size_t used = 0;
    double v = 0.0;
    try {
        v = std::stod(text, &used);
    } catch (const std::exception&) {
        throw ConfigError("'" + text + "' is not a number");
    }
    std::string rest = text.substr(used);
    rest.erase(0, rest.find_first_not_of(" \t"));
    rest.erase(rest.find_last_not_of(" \t") + 1);
    if (rest.empty()) {
        return v;
    }
    const auto it = suffixes().find(rest);
    if (it == suffixes().end() || it->second.unit != unit) {
        throw ConfigError("unit '" + rest + "' does not fit '" + text + "'");
    }
    return v * it->second.scale;
}

Config::Config(YAML::Node node, std::filesystem::path base, std::string where)
    : node_(std::move(node)), base_(std::move(base)), where_(std::move(where))
{
}

Config Config::load(const std::filesystem::path& file)
{
    std::ifstream in(file);
    if (!in) {
        throw ConfigError("cannot read config file '" + file.string() + "'");
    }
    std::stringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), file.parent_path().empty() ? std::filesystem::path(".") : file.parent_path());
}

Config Config::parse(const std::string& text, const std::filesystem::path& base)
{
    try {
        YAML::Node n = YAML::Load(text);
        if (!n.IsMap()) {
            throw ConfigError("config must be a mapping of keys to values");
        }
        return Config(n, base, "");
    } catch (const YAML::Exception& e) {
        throw ConfigError(std::string("malformed config: ") + e.what());
    }
}

YAML::Node Config::get(const std::string& key) const
{
    if (!node_ || !node_.IsMap()) {
        return YAML::Node();
    }
    return node_[key];
}

void Config::fail(const std::string& key, const std::string& what) const
{
    throw ConfigError("config key '" + join(where_, key) + "': " + what);
}

bool Config::has(const std::string& key) const
{
    const auto n = get(key);
    return n.IsDefined() && !n.IsNull();
}

Config Config::section(const std::string& key) const
{
    const auto n = get(key);
    if (n.IsDefined() && !n.IsNull() && !n.IsMap()) {
        fail(key, "expected a mapping");
    }
    return Config(n.IsDefined() ? n : YAML::Node(YAML::NodeType::Map), base_, join(where_, key));
}

double Config::convert(const YAML::Node& n, Unit unit, const std::string& key) const
{
    if (!n.IsScalar()) {
        fail(key, "expected a scalar");
    }
    try {
        const double v = parse_quantity(n.Scalar(), unit);
        if (!std::isfinite(v)) {
            fail(key, "value is not finite");
        }
        return v;
    } catch (const ConfigError& e) {
        fail(key, e.what());
    }
}

double Config::number(const std::string& key, double fallback) const
{
    return quantity(key, Unit::none, fallback);
}

double Config::number(const std::string& key) const
{
    return quantity(key, Unit::none);
}

double Config::quantity(const std::string& key, Unit unit, double fallback) const
{
    return has(key) ? quantity(key, unit) : fallback;
}

double Config::quantity(const std::string& key, Unit unit) const
{
    if (!has(key)) {
        fail(key, "missing");
    }
    return convert(get(key), unit, key);
}

std::vector<double> Config::quantities(const std::string& key, Unit unit) const
{
    const auto n = get(key);
    if (!n.IsDefined() || !n.IsSequence()) {
        fail(key, "expected a list");
    }
    std::vector<double> out;
    for (const auto& item : n) {
        out.push_back(convert(item, unit, key));
    }
    return out;
}

std::vector<double> Config::quantities(const std::string& key, Unit unit, const std::vector<double>& fallback) const
{
    return has(key) ? quantities(key, unit) : fallback;
}

long long Config::integer(const std::string& key, long long fallback) const
{
    if (!has(key)) {
        return fallback;
    }
    const double v = number(key);
    if (v != std::floor(v) || std::abs(v) > 9e15) {
        fail(key, "expected an integer");
    }
    return static_cast<long long>(v);
}

std::vector<long long> Config::integers(const std::string& key, const std::vector<long long>& fallback) const
{
    if (!has(key)) {
        return fallback;
    }
    std::vector<long long> out;
    for (double v : quantities(key, Unit::none)) {
        if (v != std::floor(v)) {
            fail(key, "expected integers");
        }
        out.push_back(static_cast<long long>(v));
    }
    return out;
}

std::string Config::text(const std::string& key, const std::string& fallback) const
{
    return has(key) ? text(key) : fallback;
}

std::string Config::text(const std::string& key) const
{
    const auto n = get(key);
    if (!n.IsDefined() || !n.IsScalar()) {
        fail(key, "expected text");
    }
    return n.Scalar();
}

bool Config::flag(const std::string& key, bool fallback) const
{
    if (!has(key)) {
        return fallback;
    }
    const std::string t = text(key);
    if (t == "true" || t == "yes" || t == "on") {
        return true;
    }
    if (t == "false" || t == "no" || t == "off") {
        return false;
    }
    fail(key, "expected true or false");
}

std::vector<std::string> Config::texts(const std::string& key) const
{
    std::vector<std::string> out;
    const auto n = get(key);
    if (!n.IsDefined() || n.IsNull()) {
        return out;
    }
    if (!n.IsSequence()) {
        fail(key, "expected a list");
    }
    for (const auto& item : n) {
        if (!item.IsScalar()) {
            fail(key, "expected a list of text");
        }
        out.push_back(item.Scalar());
    }
    return out;
}

std::filesystem::path Config::path(const std::string& key) const
{
    const std::filesystem::path p = text(key);
    return p.is_absolute() ? p : base_ / p;
}

}  // namespace rfqc::cli

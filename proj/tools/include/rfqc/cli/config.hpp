#pragma once

#include <yaml-cpp/yaml.h>

#include <filesystem>
#include <string>
#include <vector>

#include "rfqc/errors.hpp"

namespace rfqc::cli {

/// Missing file, malformed YAML, or a value of the wrong type or unit.
class ConfigError : public Error {
public:
    using Error::Error;
};

enum class Unit { none, frequency, time, angle };

/// Read-only view of a YAML scenario file.
///
/// Physical values are plain numbers in SI units or strings with a unit suffix:
/// "880 MHz", "200 ns", "180 deg". Angles are returned in radians.
class Config {
public:
    Config() = default;
    Config(YAML::Node node, std::filesystem::path base, std::string where);

    static Config load(const std::filesystem::path& file);
    static Config parse(const std::string& text, const std::filesystem::path& base = ".");

    bool has(const std::string& key) const;
    /// Sub-mapping; an absent key yields an empty section, so defaults apply.
    Config section(const std::string& key) const;

    double number(const std::string& key, double fallback) const;
    double number(const std::string& key) const;
    double quantity(const std::string& key, Unit unit, double fallback) const;
    double quantity(const std::string& key, Unit unit) const;
    std::vector<double> quantities(const std::string& key, Unit unit) const;
    std::vector<double> quantities(const std::string& key, Unit unit, const std::vector<double>& fallback) const;
    long long integer(const std::string& key, long long fallback) const;
    std::vector<long long> integers(const std::string& key, const std::vector<long long>& fallback) const;
    std::string text(const std::string& key, const std::string& fallback) const;
    std::string text(const std::string& key) const;
    bool flag(const std::string& key, bool fallback) const;
    std::vector<std::string> texts(const std::string& key) const;
    /// Path value resolved against the directory of the config file.
    std::filesystem::path path(const std::string& key) const;

private:
    YAML::Node get(const std::string& key) const;
    [[noreturn]] void fail(const std::string& key, const std::string& what) const;
    double convert(const YAML::Node& n, Unit unit, const std::string& key) const;

    YAML::Node node_;
    std::filesystem::path base_{"."};
    std::string where_;
};

/// Parse "12.5 MHz" style text. Throws ConfigError on an unknown or mismatched unit.
double parse_quantity(const std::string& text, Unit unit);

}  // namespace rfqc::cli

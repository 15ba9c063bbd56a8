#include <CLI11.hpp>

#include <algorithm>
#include <ostream>

#include "rfqc/cli/experiments.hpp"

namespace rfqc::cli {

const std::vector<std::string>& experiment_names()
{
    static const std::vector<std::string> names{"mux-loopback", "predistort", "phase-stability", "crosstalk",
                                                "gate-phase",   "plan-mux",   "check-program"};
    return names;
}

Report run_experiment(const std::string& name, const Config& c, std::uint64_t seed)
{
    Report r;
    if (name == "mux-loopback") {
        r = mux_loopback(c, seed);
    } else if (name == "predistort") {
        r = predistort(c, seed);
    } else if (name == "phase-stability") {
        r = phase_stability(c, seed);
    } else if (name == "crosstalk") {
        r = crosstalk(c, seed);
    } else if (name == "gate-phase") {
        r = gate_phase(c, seed);
    } else if (name == "plan-mux") {
        r = plan_mux(c, seed);
    } else if (name == "check-program") {
        r = check_program(c, seed);
    } else {
        throw DomainError("unknown experiment '" + name + "'");
    }
    r.experiment = name;
    r.seed = seed;
    return r;
}

int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err)
{
    const auto& names = experiment_names();
    if (std::find(names.begin(), names.end(), spec.name) == names.end()) {
        err << "rfqc: unknown experiment '" << spec.name << "'\n";
        return kUsage;
    }
    Report report;
    try {
        const Config config = Config::load(spec.config);
        const std::string declared = config.text("experiment", spec.name);
        if (declared != spec.name) {
            err << "rfqc: config is for experiment '" << declared << "', not '" << spec.name << "'\n";
            return kBadConfig;
        }
        report = run_experiment(spec.name, config, spec.seed);
    } catch (const ConfigError& e) {
        err << "rfqc: " << e.what() << "\n";
        return kBadConfig;
    } catch (const InfeasibleError& e) {
        err << "rfqc: infeasible: " << e.what() << "\n";
        return kInfeasible;
    } catch (const ProgramError& e) {
        err << e.diagnostics() << "rfqc: " << e.what() << "\n";
        return kProgramError;
    } catch (const Error& e) {
        err << "rfqc: " << e.what() << "\n";
        return kBadConfig;
    }
    try {
        export_report(report, spec.out);
    } catch (const Error& e) {
        err << "rfqc: " << e.what() << "\n";
        return kWriteError;
    }
    for (const auto& c : report.checks) {
        out << (c.pass ? "[PASS] " : "[FAIL] ") << c.name << " = " << c.value << "\n";
    }
    for (const auto& n : report.notes) {
        out << "note: " << n << "\n";
    }
    return report.pass() ? kOk : kCheckFailed;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err)
{
    CLI::App app{"Run an RF control-chain experiment from a scenario config", "rfqc"};
    ExperimentSpec spec;
    std::string config;
    std::string dir;
    app.add_option("--experiment", spec.name, "Experiment name")->required();
    app.add_option("--config", config, "Scenario config (YAML)")->required();
    app.add_option("--out", dir, "Output directory")->required();
    app.add_option("--seed", spec.seed, "Random seed")->default_val(0);
    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "rfqc: " << e.what() << "\n";
        err << "experiments:";
        for (const auto& n : experiment_names()) {
            err << ' ' << n;
        }
        err << "\n";
        return kUsage;
    }
    spec.config = config;
    spec.out = dir;
    return run_experiment(spec, out, err);
}

}  // namespace rfqc::cli

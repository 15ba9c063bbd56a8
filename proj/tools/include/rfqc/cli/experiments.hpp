#pragma once

#include <cstdint>
#include <filesystem>
#include <iosfwd>
#include <string>
#include <vector>

#include "rfqc/cli/config.hpp"
#include "rfqc/cli/report.hpp"

namespace rfqc::cli {

enum ExitCode : int {
    kOk = 0,
    kCheckFailed = 1,
    kUsage = 2,
    kBadConfig = 3,
    kInfeasible = 4,
    kProgramError = 5,
    kWriteError = 6,
};

/// The program named by a check-program or phase-stability config has errors.
class ProgramError : public Error {
public:
    ProgramError(const std::string& what, std::string diagnostics)
        : Error(what), diagnostics_(std::move(diagnostics)) {}

    const std::string& diagnostics() const noexcept { return diagnostics_; }

private:
    std::string diagnostics_;
};

struct ExperimentSpec {
    std::string name;
    std::filesystem::path config;
    std::filesystem::path out;
    std::uint64_t seed = 0;
};

const std::vector<std::string>& experiment_names();

Report mux_loopback(const Config& c, std::uint64_t seed);
Report predistort(const Config& c, std::uint64_t seed);
Report phase_stability(const Config& c, std::uint64_t seed);
Report crosstalk(const Config& c, std::uint64_t seed);
Report gate_phase(const Config& c, std::uint64_t seed);
Report plan_mux(const Config& c, std::uint64_t seed);
Report check_program(const Config& c, std::uint64_t seed);

/// Dispatch by name. Throws DomainError for an unknown experiment.
Report run_experiment(const std::string& name, const Config& c, std::uint64_t seed);

/// Load, run, export, print a one-line verdict per check to `out`, and map failures to exit codes.
int run_experiment(const ExperimentSpec& spec, std::ostream& out, std::ostream& err);

/// Command-line entry: --experiment, --config, --out, --seed.
int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err);

}  // namespace rfqc::cli

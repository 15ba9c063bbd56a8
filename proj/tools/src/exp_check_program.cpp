#include <cmath>

#include "program_util.hpp"
#include "rfqc/cli/experiments.hpp"
#include "rfqc/pulse_coherence.hpp"

namespace rfqc::cli {

Report check_program(const Config& c, std::uint64_t)
{
    const auto loaded = load_program(c.path("program"));
    const auto& program = loaded.program;
    const std::string model_name = c.text("model", "dds");
    pulse::PhaseModel model = pulse::PhaseModel::dds;
    if (model_name == "analog_lo") {
        model = pulse::PhaseModel::analog_lo;
    } else if (model_name != "dds") {
        throw ConfigError("model must be 'dds' or 'analog_lo'");
    }
    const long long reps = c.integer("repetitions", 100);
    std::vector<std::string> names = c.texts("constraints");
    if (names.empty()) {
        for (const auto& k : program.constraints) {
            names.push_back(k.name);
        }
    }

    Report r;
    if (!loaded.diagnostics.empty()) {
        r.files.emplace_back("diagnostics.jsonl", loaded.diagnostics);
    }
    io::CsvTable t{{"constraint", "static_pass", "numeric_pass", "drift_per_rep_rad", "worst_drift_rad",
                    "lo_combination_hz", "numeric_variance_rad2"},
                   {}};
    if (names.empty()) {
        r.notes.push_back("program declares no coherence constraints");
    }
    for (std::size_t i = 0; i < names.size(); ++i) {
        const auto& constraint = find_constraint(program, names[i]);
        pulse::CoherenceReport stat;
        pulse::CoherenceTrace sim;
        try {
            stat = pulse::check_phase_coherence(program, constraint, model, reps);
            sim = pulse::simulate_coherence(program, constraint, model, reps);
        } catch (const DomainError& e) {
            throw ProgramError(e.what(), loaded.diagnostics);
        }
        r.check(constraint.name + ".coherent", stat.pass ? 1.0 : 0.0, Relation::equal, 1.0);
        r.check(constraint.name + ".static_matches_numeric", stat.pass == sim.pass ? 1.0 : 0.0, Relation::equal, 1.0);
        r.value(constraint.name + ".drift_per_rep_rad", stat.drift_per_rep);
        r.value(constraint.name + ".worst_drift_rad", stat.worst_drift);
        r.value(constraint.name + ".lo_combination_hz", stat.lo_combination);
        if (!stat.note.empty()) {
            r.notes.push_back(constraint.name + ": " + stat.note);
        }
        t.rows.push_back({static_cast<double>(i), stat.pass ? 1.0 : 0.0, sim.pass ? 1.0 : 0.0, stat.drift_per_rep,
                          stat.worst_drift, stat.lo_combination, sim.variance});
    }
    r.value("instructions", static_cast<double>(pulse::statement_count(program)));
    r.trace("coherence", std::move(t));
    return r;
}

}  // namespace rfqc::cli

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "rfqc/pulse_coherence.hpp"

namespace rfqc::acceptance {

/// One program of the coherence corpus with the verdict its construction implies, if any.
struct CorpusEntry {
    std::string name;
    std::string source;
    pulse::PhaseModel model = pulse::PhaseModel::dds;
    bool reset = false;               ///< every repetition starts with a phase reset
    bool lo_combination_zero = true;  ///< analog model only
    std::optional<bool> expected;
};

/// Fifty three-channel programs: half constrain q-plus-pump-minus-q combinations, half
/// constrain a measurement axis with a half pump coefficient. They mix DDS programs with and
/// without reset and analog-LO programs with zero and nonzero LO combinations.
std::vector<CorpusEntry> coherence_corpus(unsigned seed = 4);

}  // namespace rfqc::acceptance

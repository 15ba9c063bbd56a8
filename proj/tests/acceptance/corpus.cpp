#include "corpus.hpp"

#include <cstdint>
#include <iomanip>
#include <random>
#include <sstream>

namespace rfqc::acceptance {

namespace {

constexpr double kClock = 6881.28e6;

struct Layout {
    bool half = false;     // axis constraint +b -1/2*c -a, otherwise +a +c -b
    std::int64_t period = 0;
    int repeats = 0;
    bool reset = false;
    bool targeted_reset = false;
    bool nested = false;
};

std::string mhz(double hz)
{
    std::ostringstream s;
    s << std::fixed << std::setprecision(4) << hz / 1e6 << " MHz";
    return s.str();
}

std::string render(const Layout& l, const double (&freq)[3], const std::int64_t* lo)
{
    static const char* names[3] = {"a", "b", "c"};
    std::ostringstream s;
    s << "clock 6881.28 MHz\n\n";
    for (int k = 0; k < 3; ++k) {
        s << "channel " << names[k] << " freq " << mhz(freq[k]);
        if (lo) {
            s << " lo " << lo[k] << " Hz";
        }
        s << '\n';
    }
    s << "\nenvelope pi gaussian length 96 sigma 16 amp 0.9\n";
    s << "envelope long flat length 344 amp 0.4\n\n";
    s << (l.half ? "constraint combo +b -1/2*c -a\n\n" : "constraint combo +a +c -b\n\n");
    s << "repeat " << l.repeats << " period " << l.period << " {\n";
    if (l.reset) {
        s << (l.targeted_reset ? "  phase_reset a b c\n" : "  phase_reset\n");
    }
    s << "  play a pi\n";
    if (l.nested) {
        s << "  repeat 3 {\n    play b pi\n  }\n";
    } else {
        s << "  play b pi\n";
    }
    s << "  sync\n  play c long\n}\n";
    return s.str();
}

}  // namespace

std::vector<CorpusEntry> coherence_corpus(unsigned seed)
{
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> freq(50e6, 2500e6);
    std::uniform_real_distribution<double> unit(0.0, 1.0);
    std::uniform_int_distribution<std::int64_t> lo_hz(3'000'000'000, 6'000'000'000);
    const std::int64_t periods[] = {68813, 137626, 94271};

    std::vector<CorpusEntry> out;
    for (int i = 0; i < 50; ++i) {
        Layout l;
        l.half = i % 2 == 1;
        l.period = periods[i % 3];
        l.repeats = 100 + 50 * (i % 4);
        l.nested = i % 7 == 3;
        const int kind = (i / 2) % 5;
        CorpusEntry e;
        double f[3] = {freq(rng), freq(rng), freq(rng)};
        switch (kind) {
        case 0:
        case 4:
            e.model = pulse::PhaseModel::dds;
            l.reset = true;
            l.targeted_reset = kind == 4;
            e.expected = true;
            e.source = render(l, f, nullptr);
            break;
        case 1:
            e.model = pulse::PhaseModel::dds;
            e.source = render(l, f, nullptr);
            break;
        case 2:
        case 3: {
            e.model = pulse::PhaseModel::analog_lo;
            l.reset = true;
            std::int64_t lo[3];
            lo[0] = lo_hz(rng);
            lo[2] = 2 * (lo_hz(rng) / 4);
            // a + c - b = 0, or b - c/2 - a = 0 for the axis constraint.
            lo[1] = l.half ? lo[0] + lo[2] / 2 : lo[0] + lo[2];
            if (kind == 3) {
                // Leave a fraction of a cycle per repetition: a tenth to a third of pi.
                const double seconds = static_cast<double>(l.period) / kClock;
                const double cycles = (0.05 + 0.12 * unit(rng)) * (l.half ? 1.0 : 2.0);
                lo[1] += static_cast<std::int64_t>(cycles / seconds) + 1;
                e.lo_combination_zero = false;
            }
            for (int k = 0; k < 3; ++k) {
                f[k] = static_cast<double>(lo[k]) + (f[k] - 1275e6) / 2.0;
            }
            e.expected = kind == 2;
            e.source = render(l, f, lo);
            break;
        }
        }
        e.reset = l.reset;
        e.name = "corpus_" + std::to_string(i) + (l.half ? "_axis" : "_swap");
        out.push_back(std::move(e));
    }
    return out;
}

}  // namespace rfqc::acceptance

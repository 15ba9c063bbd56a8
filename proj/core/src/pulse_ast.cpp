#include "rfqc/pulse_ast.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "rfqc/csv.hpp"
#include "rfqc/errors.hpp"

namespace rfqc::pulse {

namespace {

template <typename T>
const T* find_named(const std::vector<T>& items, const std::string& name) noexcept
{
    const auto it = std::find_if(items.begin(), items.end(),
                                 [&](const T& item) { return item.name == name; });
    return it == items.end() ? nullptr : &*it;
}

std::string num(double x)
{
    return io::format_double(x);
}

const char* shape_name(dsp::EnvelopeShape s)
{
    switch (s) {
    case dsp::EnvelopeShape::gaussian: return "gaussian";
    case dsp::EnvelopeShape::drag: return "drag";
    case dsp::EnvelopeShape::triangle: return "triangle";
    case dsp::EnvelopeShape::flat: return "flat";
    case dsp::EnvelopeShape::user: return "user";
    }
    return "flat";
}

void print_term(std::ostream& os, const Term& t)
{
    os << ' ' << (t.half_units < 0 ? '-' : '+');
    if (std::abs(t.half_units) == 1) {
        os << "1/2*";
    } else if (std::abs(t.half_units) != 2) {
        os << std::abs(t.half_units) << "/2*";
    }
    os << t.channel;
}

void print_at(std::ostream& os, const std::optional<std::int64_t>& at)
{
    if (at) {
        os << " @ " << *at;
    }
}

void print_body(std::ostream& os, const std::vector<Statement>& body, int depth)
{
    const std::string indent(static_cast<std::size_t>(2 * depth), ' ');
    for (const auto& s : body) {
        os << indent;
        switch (s.op) {
        case Op::set_freq: os << "set_freq " << s.targets.at(0) << ' ' << num(s.value); break;
        case Op::set_phase: os << "set_phase " << s.targets.at(0) << ' ' << num(s.value); break;
        case Op::set_gain: os << "set_gain " << s.targets.at(0) << ' ' << num(s.value); break;
        case Op::play:
            os << "play " << s.targets.at(0) << ' ' << s.operand;
            print_at(os, s.at);
            break;
        case Op::trigger:
            os << "trigger " << s.targets.at(0);
            if (s.amount > 0) {
                os << " length " << s.amount;
            }
            print_at(os, s.at);
            break;
        case Op::phase_reset:
            os << "phase_reset";
            for (const auto& t : s.targets) {
                os << ' ' << t;
            }
            print_at(os, s.at);
            break;
        case Op::wait: os << "wait " << s.amount; break;
        case Op::sync: os << "sync"; break;
        case Op::repeat:
            os << "repeat " << s.amount;
            if (s.period) {
                os << " period " << *s.period;
            }
            os << " {\n";
            print_body(os, s.body, depth + 1);
            os << indent << '}';
            break;
        }
        os << '\n';
    }
}

std::size_t count_body(const std::vector<Statement>& body) noexcept
{
    std::size_t n = 0;
    for (const auto& s : body) {
        n += 1 + count_body(s.body);
    }
    return n;
}

}  // namespace

const ChannelDecl* Program::find_channel(const std::string& name) const noexcept
{
    return find_named(channels, name);
}

const EnvelopeDecl* Program::find_envelope(const std::string& name) const noexcept
{
    return find_named(envelopes, name);
}

const ReadoutDecl* Program::find_readout(const std::string& name) const noexcept
{
    return find_named(readouts, name);
}

const CoherenceConstraint* Program::find_constraint(const std::string& name) const noexcept
{
    return find_named(constraints, name);
}

std::string print(const Program& p)
{
    std::ostringstream os;
    if (p.clock) {
        os << "clock " << num(*p.clock) << '\n';
    }
    for (const auto& c : p.channels) {
        os << "channel " << c.name << " freq " << num(c.freq);
        if (c.lo != 0.0) {
            os << " lo " << num(c.lo);
        }
        if (!c.mux_tones.empty()) {
            os << " mux";
            for (double f : c.mux_tones) {
                os << ' ' << num(f);
            }
        }
        os << '\n';
    }
    for (const auto& e : p.envelopes) {
        os << "envelope " << e.name << ' ' << shape_name(e.shape);
        if (e.shape == dsp::EnvelopeShape::user) {
            os << " values";
            for (double v : e.values) {
                os << ' ' << num(v);
            }
        } else {
            os << " length " << e.length;
            if (e.shape == dsp::EnvelopeShape::gaussian || e.shape == dsp::EnvelopeShape::drag) {
                os << " sigma " << num(e.sigma);
            }
            if (e.shape == dsp::EnvelopeShape::drag) {
                os << " alpha " << num(e.alpha);
            }
            os << " amp " << num(e.amplitude);
        }
        if (e.interpolated) {
            os << " interp";
        }
        os << '\n';
    }
    for (const auto& r : p.readouts) {
        os << "readout " << r.name << " freq " << num(r.freq) << " length " << r.length << '\n';
    }
    for (const auto& c : p.constraints) {
        os << "constraint " << c.name;
        for (const auto& t : c.terms) {
            print_term(os, t);
        }
        os << '\n';
    }
    print_body(os, p.body, 0);
    return os.str();
}

dsp::Envelope build_envelope(const EnvelopeDecl& decl)
{
    const int divisor = decl.interpolated ? dsp::kInterpolationFactor : 1;
    const auto n = static_cast<std::size_t>(decl.length);
    switch (decl.shape) {
    case dsp::EnvelopeShape::gaussian: return dsp::make_gaussian(n, decl.sigma, decl.amplitude, divisor);
    case dsp::EnvelopeShape::drag:
        return dsp::make_drag(n, decl.sigma, decl.alpha, decl.amplitude, divisor);
    case dsp::EnvelopeShape::triangle: return dsp::make_triangle(n, decl.amplitude, divisor);
    case dsp::EnvelopeShape::flat: return dsp::make_flat(n, decl.amplitude, divisor);
    case dsp::EnvelopeShape::user:
        return dsp::make_user(std::vector<Complex>(decl.values.begin(), decl.values.end()), divisor);
    }
    throw DomainError("unknown envelope shape");
}

std::size_t statement_count(const Program& p) noexcept
{
    return count_body(p.body);
}

}  // namespace rfqc::pulse

#include "rfqc/pulse_parser.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <fstream>
#include <nlohmann/json.hpp>
#include <numbers>
#include <set>
#include <iomanip>
#include <sstream>

namespace rfqc::pulse {

namespace {

struct Token {
    std::string text;
    int col = 0;
};

struct LineError {
    int col;
    std::string code;
    std::string message;
};

std::vector<Token> tokenize(std::string_view line)
{
    std::vector<Token> out;
    std::size_t i = 0;
    while (i < line.size()) {
        if (line[i] == '#') {
            break;
        }
        if (std::isspace(static_cast<unsigned char>(line[i]))) {
            ++i;
            continue;
        }
        const std::size_t start = i;
        if (line[i] == '{' || line[i] == '}' || line[i] == '@') {
            ++i;
        } else {
            while (i < line.size() && !std::isspace(static_cast<unsigned char>(line[i])) &&
                   line[i] != '#' && line[i] != '{' && line[i] != '}' && line[i] != '@') {
                ++i;
            }
        }
        out.push_back(Token{std::string(line.substr(start, i - start)), static_cast<int>(start) + 1});
    }
    return out;
}

bool is_identifier(const std::string& s)
{
    if (s.empty() || !(std::isalpha(static_cast<unsigned char>(s[0])) || s[0] == '_')) {
        return false;
    }
    for (char c : s) {
        if (!(std::isalnum(static_cast<unsigned char>(c)) || c == '_' || c == '.')) {
            return false;
        }
    }
    return true;
}

/// Splits "12.5MHz" into 12.5 and "MHz". Returns false when no leading number is present.
bool split_number(const std::string& text, double& value, std::string& suffix)
{
    std::size_t skip = (!text.empty() && text[0] == '+') ? 1 : 0;
    const char* first = text.data() + skip;
    const char* last = text.data() + text.size();
    auto [ptr, ec] = std::from_chars(first, last, value);
    if (ec != std::errc{} || !std::isfinite(value)) {
        return false;
    }
    suffix.assign(ptr, last);
    return true;
}

enum class Quantity { frequency, time, phase, plain, count };

class LineParser {
public:
    LineParser(std::vector<Token> toks, std::optional<double> clock, std::vector<Diagnostic>& warnings,
               const std::string& file, int line)
        : toks_(std::move(toks)), clock_(clock), warnings_(warnings), file_(file), line_(line)
    {
    }

    bool done() const noexcept { return pos_ >= toks_.size(); }
    const Token& peek() const { return toks_.at(pos_); }
    int col() const noexcept { return done() ? (toks_.empty() ? 1 : toks_.back().col) : toks_[pos_].col; }

    [[noreturn]] void fail(const std::string& code, const std::string& msg) const
    {
        throw LineError{col(), code, msg};
    }

    const Token& next(const char* what)
    {
        if (done()) {
            fail("E100", std::string("expected ") + what);
        }
        return toks_[pos_++];
    }

    bool accept(const std::string& word)
    {
        if (!done() && toks_[pos_].text == word) {
            ++pos_;
            return true;
        }
        return false;
    }

    std::string identifier(const char* what)
    {
        const int c = col();
        const Token& t = next(what);
        if (!is_identifier(t.text)) {
            throw LineError{c, "E100", std::string("expected ") + what + ", found '" + t.text + "'"};
        }
        return t.text;
    }

    void expect_end()
    {
        if (!done()) {
            fail("E100", "unexpected '" + peek().text + "'");
        }
    }

    double quantity(Quantity kind, const char* what)
    {
        const int c = col();
        const Token& t = next(what);
        double v = 0.0;
        std::string suffix;
        if (!split_number(t.text, v, suffix)) {
            throw LineError{c, "E102", std::string("expected ") + what + ", found '" + t.text + "'"};
        }
        if (suffix.empty() && !done() && is_unit(kind, peek().text)) {
            suffix = next("unit").text;
        }
        return apply_unit(kind, v, suffix, c, t.text);
    }

    std::int64_t time(const char* what) { return static_cast<std::int64_t>(quantity(Quantity::time, what)); }

    std::int64_t count(const char* what)
    {
        return static_cast<std::int64_t>(quantity(Quantity::count, what));
    }

    std::optional<std::int64_t> at_clause()
    {
        if (accept("@")) {
            return time("time after '@'");
        }
        return std::nullopt;
    }

private:
    static bool is_unit(Quantity kind, const std::string& s)
    {
        switch (kind) {
        case Quantity::frequency: return s == "Hz" || s == "kHz" || s == "MHz" || s == "GHz";
        case Quantity::time: return s == "ns" || s == "us";
        case Quantity::phase: return s == "deg" || s == "rad";
        default: return false;
        }
    }

    double apply_unit(Quantity kind, double v, const std::string& suffix, int c, const std::string& text)
    {
        if (!suffix.empty() && !is_unit(kind, suffix)) {
            throw LineError{c, "E102", "bad unit in '" + text + "'"};
        }
        switch (kind) {
        case Quantity::frequency:
            if (suffix == "kHz") return v * 1e3;
            if (suffix == "MHz") return v * 1e6;
            if (suffix == "GHz") return v * 1e9;
            return v;
        case Quantity::phase: return suffix == "deg" ? v * std::numbers::pi / 180.0 : v;
        case Quantity::plain: return v;
        case Quantity::count:
            if (v < 0 || v != std::floor(v) || v > 1e12) {
                throw LineError{c, "E102", "expected a non-negative integer, found '" + text + "'"};
            }
            return v;
        case Quantity::time: break;
        }
        if (suffix.empty()) {
            if (v < 0 || v != std::floor(v) || v > 9e15) {
                throw LineError{c, "E102", "time in samples must be a non-negative integer: '" + text + "'"};
            }
            return v;
        }
        if (!clock_) {
            throw LineError{c, "E103", "'" + suffix + "' times need a preceding clock declaration"};
        }
        const double seconds = v * (suffix == "ns" ? 1e-9 : 1e-6);
        const double exact = seconds * *clock_;
        const double rounded = std::nearbyint(exact);
        if (rounded < 0) {
            throw LineError{c, "E102", "negative time '" + text + "'"};
        }
        if (std::abs(exact - rounded) > 1e-9 * std::max(1.0, std::abs(exact))) {
            std::ostringstream msg;
            msg << std::setprecision(12) << v << ' ' << suffix << " is " << exact << " samples, rounded to " << static_cast<std::int64_t>(rounded);
            warnings_.push_back(Diagnostic{file_, line_, c, "W100", msg.str(), Severity::warning});
        }
        return rounded;
    }

    std::vector<Token> toks_;
    std::size_t pos_ = 0;
    std::optional<double> clock_;
    std::vector<Diagnostic>& warnings_;
    const std::string& file_;
    int line_;
};

Term parse_term(const std::string& text, int c)
{
    Term t;
    std::string rest = text;
    int sign = 1;
    if (!rest.empty() && (rest[0] == '+' || rest[0] == '-')) {
        sign = rest[0] == '-' ? -1 : 1;
        rest.erase(0, 1);
    }
    int half = 2;
    if (const auto star = rest.find('*'); star != std::string::npos) {
        const std::string coef = rest.substr(0, star);
        rest.erase(0, star + 1);
        if (coef == "1/2" || coef == "0.5") {
            half = 1;
        } else if (coef != "1") {
            throw LineError{c, "E102", "coefficient must be 1 or 1/2, found '" + coef + "'"};
        }
    }
    if (!is_identifier(rest)) {
        throw LineError{c, "E100", "bad constraint term '" + text + "'"};
    }
    t.channel = rest;
    t.half_units = sign * half;
    return t;
}

dsp::EnvelopeShape shape_from(const std::string& s, int c)
{
    if (s == "gaussian") return dsp::EnvelopeShape::gaussian;
    if (s == "drag") return dsp::EnvelopeShape::drag;
    if (s == "triangle") return dsp::EnvelopeShape::triangle;
    if (s == "flat") return dsp::EnvelopeShape::flat;
    if (s == "user") return dsp::EnvelopeShape::user;
    throw LineError{c, "E102", "unknown envelope shape '" + s + "'"};
}

class Parser {
public:
    Parser(std::string_view text, const std::string& file) : text_(text), file_(file) {}

    ParseResult run()
    {
        std::istringstream in{std::string(text_)};
        std::string line;
        int line_no = 0;
        blocks_.push_back(Block{&program_.body, 0, 0});
        while (std::getline(in, line)) {
            ++line_no;
            auto toks = tokenize(line);
            if (toks.empty()) {
                continue;
            }
            try {
                handle(std::move(toks), line_no);
            } catch (const LineError& e) {
                error(line_no, e.col, e.code, e.message);
            }
        }
        if (blocks_.size() > 1) {
            error(blocks_.back().line, blocks_.back().col, "E100", "unterminated repeat block");
        }
        ParseResult r;
        r.diagnostics = std::move(diags_);
        const bool failed = std::any_of(r.diagnostics.begin(), r.diagnostics.end(),
                                        [](const Diagnostic& d) { return d.severity == Severity::error; });
        if (!failed) {
            r.program = std::move(program_);
        }
        return r;
    }

private:
    struct Block {
        std::vector<Statement>* body;
        int line;
        int col;
    };

    void error(int line, int col, const std::string& code, const std::string& msg)
    {
        diags_.push_back(Diagnostic{file_, line, col, code, msg, Severity::error});
    }

    void declare(const std::string& name, int line, int col)
    {
        if (!names_.insert(name).second) {
            throw LineError{col, "E201", "duplicate declaration of '" + name + "'"};
        }
        (void)line;
    }

    void require_channel(const std::string& name, int col) const
    {
        if (!program_.find_channel(name)) {
            throw LineError{col, "E200", "undeclared channel '" + name + "'"};
        }
    }

    void require_toplevel(const LineParser& lp) const
    {
        if (blocks_.size() > 1) {
            lp.fail("E100", "declarations are not allowed inside repeat blocks");
        }
    }

    void handle(std::vector<Token> toks, int line_no)
    {
        const std::string head = toks.front().text;
        const Span span{line_no, toks.front().col};
        LineParser lp(std::move(toks), program_.clock, diags_, file_, line_no);
        lp.next("keyword");

        if (head == "}") {
            lp.expect_end();
            if (blocks_.size() == 1) {
                throw LineError{span.col, "E100", "'}' without matching repeat"};
            }
            blocks_.pop_back();
            return;
        }
        if (head == "clock") {
            require_toplevel(lp);
            if (program_.clock) {
                throw LineError{span.col, "E201", "duplicate clock declaration"};
            }
            const double rate = lp.quantity(Quantity::frequency, "sample rate");
            lp.expect_end();
            if (!(rate > 0)) {
                throw LineError{span.col, "E102", "clock rate must be positive"};
            }
            program_.clock = rate;
            return;
        }
        if (head == "channel") {
            require_toplevel(lp);
            ChannelDecl c;
            c.span = span;
            const int name_col = lp.col();
            c.name = lp.identifier("channel name");
            while (!lp.done()) {
                if (lp.accept("freq")) {
                    c.freq = lp.quantity(Quantity::frequency, "frequency");
                } else if (lp.accept("lo")) {
                    c.lo = lp.quantity(Quantity::frequency, "LO frequency");
                } else if (lp.accept("mux")) {
                    while (!lp.done()) {
                        c.mux_tones.push_back(lp.quantity(Quantity::frequency, "tone frequency"));
                    }
                    if (c.mux_tones.empty()) {
                        lp.fail("E100", "mux channel needs at least one tone");
                    }
                } else {
                    lp.fail("E100", "unexpected '" + lp.peek().text + "' in channel declaration");
                }
            }
            declare(c.name, line_no, name_col);
            program_.channels.push_back(std::move(c));
            return;
        }
        if (head == "envelope") {
            require_toplevel(lp);
            EnvelopeDecl e;
            e.span = span;
            const int name_col = lp.col();
            e.name = lp.identifier("envelope name");
            const int shape_col = lp.col();
            e.shape = shape_from(lp.next("envelope shape").text, shape_col);
            bool have_length = false;
            while (!lp.done()) {
                if (lp.accept("length")) {
                    e.length = lp.count("length");
                    have_length = true;
                } else if (lp.accept("sigma")) {
                    e.sigma = lp.quantity(Quantity::plain, "sigma");
                } else if (lp.accept("alpha")) {
                    e.alpha = lp.quantity(Quantity::plain, "alpha");
                } else if (lp.accept("amp")) {
                    e.amplitude = lp.quantity(Quantity::plain, "amplitude");
                } else if (lp.accept("interp")) {
                    e.interpolated = true;
                } else if (lp.accept("values")) {
                    while (!lp.done() && lp.peek().text != "interp") {
                        e.values.push_back(lp.quantity(Quantity::plain, "sample value"));
                    }
                    e.length = static_cast<std::int64_t>(e.values.size());
                    have_length = true;
                } else {
                    lp.fail("E100", "unexpected '" + lp.peek().text + "' in envelope declaration");
                }
            }
            if ((e.shape == dsp::EnvelopeShape::user) != !e.values.empty() || !have_length) {
                throw LineError{span.col, "E100",
                                e.shape == dsp::EnvelopeShape::user ? "user envelope needs 'values'"
                                                                    : "envelope needs 'length'"};
            }
            if (e.length <= 0) {
                throw LineError{span.col, "E102", "envelope length must be positive"};
            }
            if ((e.shape == dsp::EnvelopeShape::gaussian || e.shape == dsp::EnvelopeShape::drag) &&
                !(e.sigma > 0)) {
                throw LineError{span.col, "E102", "gaussian envelopes need sigma > 0"};
            }
            try {
                build_envelope(e);
            } catch (const Error& err) {
                throw LineError{span.col, "E102", err.what()};
            }
            declare(e.name, line_no, name_col);
            program_.envelopes.push_back(std::move(e));
            return;
        }
        if (head == "readout") {
            require_toplevel(lp);
            ReadoutDecl r;
            r.span = span;
            const int name_col = lp.col();
            r.name = lp.identifier("readout name");
            while (!lp.done()) {
                if (lp.accept("freq")) {
                    r.freq = lp.quantity(Quantity::frequency, "frequency");
                } else if (lp.accept("length")) {
                    r.length = lp.time("length");
                } else {
                    lp.fail("E100", "unexpected '" + lp.peek().text + "' in readout declaration");
                }
            }
            declare(r.name, line_no, name_col);
            program_.readouts.push_back(std::move(r));
            return;
        }
        if (head == "constraint") {
            require_toplevel(lp);
            CoherenceConstraint c;
            c.span = span;
            const int name_col = lp.col();
            c.name = lp.identifier("constraint name");
            while (!lp.done()) {
                const int c0 = lp.col();
                std::string text = lp.next("term").text;
                if ((text == "+" || text == "-") && !lp.done()) {
                    text += lp.next("term").text;
                }
                Term t = parse_term(text, c0);
                const ChannelDecl* ch = program_.find_channel(t.channel);
                if (!ch) {
                    throw LineError{c0, "E200", "undeclared channel '" + t.channel + "'"};
                }
                if (!ch->mux_tones.empty()) {
                    throw LineError{c0, "E102", "mux channel '" + t.channel + "' has no single phase"};
                }
                c.terms.push_back(std::move(t));
            }
            if (c.terms.size() < 2) {
                throw LineError{span.col, "E102", "a constraint needs at least two terms"};
            }
            declare(c.name, line_no, name_col);
            program_.constraints.push_back(std::move(c));
            return;
        }

        Statement s;
        s.span = span;
        auto channel_target = [&](Statement& st) {
            const int c0 = lp.col();
            st.targets.push_back(lp.identifier("channel"));
            require_channel(st.targets.back(), c0);
        };
        if (head == "set_freq") {
            s.op = Op::set_freq;
            channel_target(s);
            s.value = lp.quantity(Quantity::frequency, "frequency");
        } else if (head == "set_phase") {
            s.op = Op::set_phase;
            channel_target(s);
            s.value = lp.quantity(Quantity::phase, "phase");
        } else if (head == "set_gain") {
            s.op = Op::set_gain;
            channel_target(s);
            const int c0 = lp.col();
            s.value = lp.quantity(Quantity::plain, "gain");
            if (std::abs(s.value) > 1.0) {
                throw LineError{c0, "E102", "gain must lie in [-1, 1]"};
            }
        } else if (head == "play") {
            s.op = Op::play;
            channel_target(s);
            const int c0 = lp.col();
            s.operand = lp.identifier("envelope");
            if (!program_.find_envelope(s.operand)) {
                throw LineError{c0, "E200", "undeclared envelope '" + s.operand + "'"};
            }
            s.at = lp.at_clause();
        } else if (head == "trigger") {
            s.op = Op::trigger;
            const int c0 = lp.col();
            s.targets.push_back(lp.identifier("readout"));
            if (!program_.find_readout(s.targets[0])) {
                throw LineError{c0, "E200", "undeclared readout '" + s.targets[0] + "'"};
            }
            while (!lp.done()) {
                if (lp.accept("length")) {
                    s.amount = lp.time("length");
                } else if (!lp.done() && lp.peek().text == "@") {
                    s.at = lp.at_clause();
                } else {
                    lp.fail("E100", "unexpected '" + lp.peek().text + "'");
                }
            }
        } else if (head == "phase_reset") {
            s.op = Op::phase_reset;
            while (!lp.done() && lp.peek().text != "@") {
                channel_target(s);
            }
            s.at = lp.at_clause();
        } else if (head == "wait") {
            s.op = Op::wait;
            s.amount = lp.time("duration");
        } else if (head == "sync") {
            s.op = Op::sync;
        } else if (head == "repeat") {
            s.op = Op::repeat;
            const int c0 = lp.col();
            s.amount = lp.count("repeat count");
            if (s.amount < 1) {
                throw LineError{c0, "E102", "repeat count must be at least 1"};
            }
            if (lp.accept("period")) {
                s.period = lp.time("period");
            }
            if (!lp.accept("{")) {
                lp.fail("E100", "expected '{'");
            }
            lp.expect_end();
            auto& body = *blocks_.back().body;
            body.push_back(std::move(s));
            blocks_.push_back(Block{&body.back().body, span.line, span.col});
            return;
        } else {
            throw LineError{span.col, "E101", "unknown statement '" + head + "'"};
        }
        lp.expect_end();
        blocks_.back().body->push_back(std::move(s));
    }

    std::string_view text_;
    std::string file_;
    Program program_;
    std::vector<Block> blocks_;
    std::vector<Diagnostic> diags_;
    std::set<std::string> names_;
};

}  // namespace

std::string to_json_line(const Diagnostic& d)
{
    nlohmann::ordered_json j;
    j["file"] = d.file;
    j["line"] = d.line;
    j["col"] = d.col;
    j["code"] = d.code;
    j["severity"] = d.severity == Severity::error ? "error" : "warning";
    j["message"] = d.message;
    return j.dump();
}

ParseResult parse(std::string_view text, const std::string& file)
{
    return Parser(text, file).run();
}

namespace {

std::string summarize(const std::vector<Diagnostic>& diags)
{
    std::ostringstream os;
    for (const auto& d : diags) {
        if (d.severity == Severity::error) {
            os << d.file << ':' << d.line << ':' << d.col << ": " << d.code << ' ' << d.message;
            break;
        }
    }
    return os.str();
}

}  // namespace

ParseError::ParseError(std::vector<Diagnostic> diags) : Error(summarize(diags)), diags_(std::move(diags)) {}

Program parse_or_throw(std::string_view text, const std::string& file)
{
    auto r = parse(text, file);
    if (!r.ok()) {
        throw ParseError(std::move(r.diagnostics));
    }
    return std::move(*r.program);
}

ParseResult parse_file(const std::string& path)
{
    std::ifstream in(path);
    if (!in) {
        throw IoError("cannot read program file '" + path + "'");
    }
    std::ostringstream ss;
    ss << in.rdbuf();
    return parse(ss.str(), path);
}

}  // namespace rfqc::pulse

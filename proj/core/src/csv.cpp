#include "rfqc/csv.hpp"

#include <charconv>
#include <cstdio>
#include <istream>
#include <ostream>
#include <sstream>

#include "rfqc/errors.hpp"

namespace rfqc::io {

namespace {

std::vector<std::string> split(const std::string& line)
{
    std::vector<std::string> out;
    std::string cell;
    std::istringstream ss(line);
    while (std::getline(ss, cell, ',')) {
        const auto b = cell.find_first_not_of(" \t\r");
        const auto e = cell.find_last_not_of(" \t\r");
        out.push_back(b == std::string::npos ? std::string{} : cell.substr(b, e - b + 1));
    }
    return out;
}

double parse_number(const std::string& cell, std::size_t line_no)
{
    double v = 0.0;
    const auto* first = cell.data();
    const auto* last = cell.data() + cell.size();
    auto [ptr, ec] = std::from_chars(first, last, v);
    if (ec != std::errc{} || ptr != last) {
        throw IoError("line " + std::to_string(line_no) + ": not a number: '" + cell + "'");
    }
    return v;
}

}  // namespace

std::string format_double(double x)
{
    char buf[64];
    auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), x);
    if (ec != std::errc{}) {
        std::snprintf(buf, sizeof(buf), "%.17g", x);
        return buf;
    }
    return std::string(buf, ptr);
}

void write_table(std::ostream& os, const CsvTable& table)
{
    for (std::size_t c = 0; c < table.header.size(); ++c) {
        os << (c ? "," : "") << table.header[c];
    }
    os << '\n';
    for (const auto& row : table.rows) {
        for (std::size_t c = 0; c < row.size(); ++c) {
            os << (c ? "," : "") << format_double(row[c]);
        }
        os << '\n';
    }
}

CsvTable read_table(std::istream& is)
{
    CsvTable t;
    std::string line;
    std::size_t line_no = 0;
    while (std::getline(is, line)) {
        ++line_no;
        if (line.empty() || line == "\r" || line[0] == '#') {
            continue;
        }
        if (t.header.empty()) {
            t.header = split(line);
            continue;
        }
        const auto cells = split(line);
        if (cells.size() != t.header.size()) {
            throw IoError("line " + std::to_string(line_no) + ": expected " +
                          std::to_string(t.header.size()) + " columns");
        }
        std::vector<double> row;
        row.reserve(cells.size());
        for (const auto& c : cells) {
            row.push_back(parse_number(c, line_no));
        }
        t.rows.push_back(std::move(row));
    }
    if (t.header.empty()) {
        throw IoError("empty CSV");
    }
    return t;
}

void write_complex_csv(std::ostream& os, std::span<const Complex> samples, std::int64_t first_index)
{
    os << "index,re,im\n";
    for (std::size_t k = 0; k < samples.size(); ++k) {
        os << first_index + static_cast<std::int64_t>(k) << ',' << format_double(samples[k].real())
           << ',' << format_double(samples[k].imag()) << '\n';
    }
}

void write_waveform_csv(std::ostream& os, const ComplexWaveform& w)
{
    write_complex_csv(os, w.samples, w.start);
}

std::vector<Complex> read_complex_csv(std::istream& is)
{
    const CsvTable t = read_table(is);
    if (t.header != std::vector<std::string>{"index", "re", "im"}) {
        throw IoError("expected header index,re,im");
    }
    std::vector<Complex> out;
    out.reserve(t.rows.size());
    for (std::size_t k = 0; k < t.rows.size(); ++k) {
        if (k > 0 && t.rows[k][0] != t.rows[k - 1][0] + 1.0) {
            throw IoError("non-consecutive index at row " + std::to_string(k + 1));
        }
        out.emplace_back(t.rows[k][1], t.rows[k][2]);
    }
    return out;
}

std::vector<double> read_coefficients_csv(std::istream& is)
{
    const CsvTable t = read_table(is);
    const std::size_t col = t.header.size() == 1 ? 0 : t.header.size() == 2 ? 1 : SIZE_MAX;
    if (col == SIZE_MAX) {
        throw IoError("coefficient file needs one or two columns");
    }
    std::vector<double> out;
    out.reserve(t.rows.size());
    for (const auto& r : t.rows) {
        out.push_back(r[col]);
    }
    return out;
}

}  // namespace rfqc::io

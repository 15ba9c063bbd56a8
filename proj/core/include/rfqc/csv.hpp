#pragma once

#include <iosfwd>
#include <span>
#include <string>
#include <vector>

#include "rfqc/waveform.hpp"

namespace rfqc::io {

/// Numeric table with a fixed column order.
struct CsvTable {
    std::vector<std::string> header;
    std::vector<std::vector<double>> rows;
};

/// Shortest round-trippable text for a double ("%.17g"); locale independent.
std::string format_double(double x);

void write_table(std::ostream& os, const CsvTable& table);

/// Parse a numeric CSV with a header line. Throws IoError on malformed input.
CsvTable read_table(std::istream& is);

/// `index,re,im` rows, index counting from `first_index`.
void write_complex_csv(std::ostream& os, std::span<const Complex> samples, std::int64_t first_index = 0);

/// Waveform export uses the envelope format with absolute sample indices.
void write_waveform_csv(std::ostream& os, const ComplexWaveform& w);

/// Read `index,re,im` rows. Indices must be consecutive; returns the samples in order.
std::vector<Complex> read_complex_csv(std::istream& is);

/// Read a single-column (or `index,value`) coefficient file, e.g. PFB prototype taps.
std::vector<double> read_coefficients_csv(std::istream& is);

}  // namespace rfqc::io

#include "minkowski/csv.hpp"

#include <cstdio>
#include <stdexcept>

namespace minkowski {

std::string format_number(double value, int precision) {
  if (precision < 1 || precision > 17) throw std::invalid_argument("precision must be in 1..17");
  if (value == 0.0) return "0";
  char buf[64];
  std::snprintf(buf, sizeof buf, "%.*g", precision, value);
  return buf;
}

CsvWriter::CsvWriter(std::ostream& out, int precision) : out_(out), precision_(precision) {
  format_number(1.0, precision);
}

void CsvWriter::header(std::initializer_list<std::string_view> names) {
  bool first = true;
  for (std::string_view n : names) {
    if (!first) out_ << ',';
    out_ << n;
    first = false;
  }
  out_ << '\n';
}

void CsvWriter::write_cell(double v, bool first) {
  if (!first) out_ << ',';
  out_ << format_number(v, precision_);
}

void CsvWriter::write_cell(std::uint64_t v, bool first) {
  if (!first) out_ << ',';
  out_ << v;
}

void CsvWriter::write_cell(const std::string& v, bool first) {
  if (!first) out_ << ',';
  out_ << v;
}

}  // namespace minkowski

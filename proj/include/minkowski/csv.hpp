#pragma once

#include <cstdint>
#include <initializer_list>
#include <ostream>
#include <string>
#include <string_view>

namespace minkowski {

/// Shortest "%.{precision}g" rendering; -0 prints as 0.
std::string format_number(double value, int precision = 15);

/// Comma-separated rows with LF endings and fixed significant digits.
class CsvWriter {
 public:
  explicit CsvWriter(std::ostream& out, int precision = 15);

  void header(std::initializer_list<std::string_view> names);

  template <typename... Cells>
  void row(const Cells&... cells) {
    bool first = true;
    ((write_cell(cells, first), first = false), ...);
    out_ << '\n';
  }

 private:
  void write_cell(double v, bool first);
  void write_cell(std::uint64_t v, bool first);
  void write_cell(int v, bool first) { write_cell(static_cast<std::uint64_t>(v), first); }
  void write_cell(const std::string& v, bool first);
  void write_cell(const char* v, bool first) { write_cell(std::string(v), first); }

  std::ostream& out_;
  int precision_;
};

}  // namespace minkowski

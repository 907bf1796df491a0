#pragma once

#include <cstddef>
#include <cstdint>
#include <ostream>
#include <vector>

namespace minkowski {

/// Stern-Brocot fractions of rows 0..rows binned into `bins` equal cells;
/// cell m (zero-based) is [m/M, (m+1)/M).
struct Histogram {
  unsigned rows = 0;
  std::size_t bins = 0;
  std::vector<std::uint64_t> counts;
  /// counts scaled so that (1/M) * sum(density) = 1.
  std::vector<double> density;

  std::uint64_t total() const;
  double left_edge(std::size_t m) const { return static_cast<double>(m) / static_cast<double>(bins); }
  double right_edge(std::size_t m) const { return static_cast<double>(m + 1) / static_cast<double>(bins); }
};

/// Throws std::invalid_argument if bins = 0 and ResourceLimitError when the
/// tree rows exceed the resource cap.
Histogram farey_histogram(unsigned rows, std::size_t bins);

struct HistogramReport {
  /// ?((m+1)/M) - ?(m/M), per bin.
  std::vector<double> qmark_delta;
  /// density - M * qmark_delta, per bin.
  std::vector<double> deviation;
  double max_abs_deviation = 0;
  double mean_abs_deviation = 0;
  /// sum over bins of (mass - qmark_delta); zero up to rounding.
  double total_mass_deviation = 0;
};

HistogramReport histogram_vs_qmark(const Histogram& h);

/// Worst-case per-bin density deviation 2M / (2^(rows+1) - 1): each bin count
/// differs by less than one from its share of the 2^(rows+1) - 1 dyadics.
double histogram_deviation_bound(unsigned rows, std::size_t bins);

/// CSV: bin_index,left_edge,right_edge,density,qmark_delta,deviation
/// (bin_index is one-based).
void write_histogram_csv(std::ostream& out, const Histogram& h, const HistogramReport& report, int precision = 15);

}  // namespace minkowski

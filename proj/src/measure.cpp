#include "minkowski/measure.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>

#include "minkowski/csv.hpp"
#include "minkowski/qmark.hpp"
#include "minkowski/rational.hpp"
#include "minkowski/stern_brocot.hpp"

namespace minkowski {

std::uint64_t Histogram::total() const { return std::accumulate(counts.begin(), counts.end(), std::uint64_t{0}); }

Histogram farey_histogram(unsigned rows, std::size_t bins) {
  if (bins == 0) throw std::invalid_argument("farey_histogram: bins must be >= 1");
  Histogram h;
  h.rows = rows;
  h.bins = bins;
  h.counts.assign(bins, 0);
  const BigInt m_big(static_cast<unsigned long>(bins));
  BigInt cell;
  for (const Rational& x : stern_brocot_rows_through(rows)) {
    // Zero-based cell index floor(M p / q), exact.
    const BigInt scaled = m_big * x.num();
    mpz_fdiv_q(cell.get_mpz_t(), scaled.get_mpz_t(), x.den().get_mpz_t());
    ++h.counts[cell.get_ui()];
  }
  const double scale = static_cast<double>(bins) / static_cast<double>(h.total());
  h.density.reserve(bins);
  for (std::uint64_t c : h.counts) h.density.push_back(static_cast<double>(c) * scale);
  return h;
}

HistogramReport histogram_vs_qmark(const Histogram& h) {
  HistogramReport r;
  const double m = static_cast<double>(h.bins);
  const BigInt m_big(static_cast<unsigned long>(h.bins));
  Rational previous(0);
  Rational mass_gap(0);
  const Rational total(BigInt(static_cast<unsigned long>(h.total())));
  for (std::size_t i = 0; i < h.bins; ++i) {
    const Rational next = question_mark(Rational(BigInt(static_cast<unsigned long>(i + 1)), m_big)).to_rational();
    const Rational delta = next - previous;
    previous = next;
    const double dq = delta.to_double();
    r.qmark_delta.push_back(dq);
    const double dev = h.density[i] - m * dq;
    r.deviation.push_back(dev);
    r.max_abs_deviation = std::max(r.max_abs_deviation, std::fabs(dev));
    r.mean_abs_deviation += std::fabs(dev);
    mass_gap += Rational(BigInt(static_cast<unsigned long>(h.counts[i]))) / total - delta;
  }
  r.mean_abs_deviation /= m;
  r.total_mass_deviation = mass_gap.to_double();
  return r;
}

double histogram_deviation_bound(unsigned rows, std::size_t bins) {
  return 2.0 * static_cast<double>(bins) / (std::ldexp(1.0, static_cast<int>(rows) + 1) - 1.0);
}

void write_histogram_csv(std::ostream& out, const Histogram& h, const HistogramReport& report, int precision) {
  CsvWriter csv(out, precision);
  csv.header({"bin_index", "left_edge", "right_edge", "density", "qmark_delta", "deviation"});
  for (std::size_t i = 0; i < h.bins; ++i) {
    csv.row(static_cast<std::uint64_t>(i + 1), h.left_edge(i), h.right_edge(i), h.density[i], report.qmark_delta[i],
            report.deviation[i]);
  }
}

}  // namespace minkowski

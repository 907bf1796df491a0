#include "minkowski/operators.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <memory>
#include <numbers>
#include <random>
#include <stdexcept>

#include "minkowski/errors.hpp"

namespace minkowski {

namespace {

using Matrix = std::vector<double>;  // row-major, square unless noted

// Solves A X = B in place (A is n x n, B is n x m), partial pivoting.
void lu_solve(std::vector<double> a, std::vector<double>& b, std::size_t n, std::size_t m) {
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t pivot = c;
    for (std::size_t r = c + 1; r < n; ++r) {
      if (std::fabs(a[r * n + c]) > std::fabs(a[pivot * n + c])) pivot = r;
    }
    if (a[pivot * n + c] == 0.0) throw std::domain_error("singular linear system");
    if (pivot != c) {
      for (std::size_t k = 0; k < n; ++k) std::swap(a[c * n + k], a[pivot * n + k]);
      for (std::size_t k = 0; k < m; ++k) std::swap(b[c * m + k], b[pivot * m + k]);
    }
    for (std::size_t r = c + 1; r < n; ++r) {
      const double f = a[r * n + c] / a[c * n + c];
      if (f == 0.0) continue;
      for (std::size_t k = c; k < n; ++k) a[r * n + k] -= f * a[c * n + k];
      for (std::size_t k = 0; k < m; ++k) b[r * m + k] -= f * b[c * m + k];
    }
  }
  for (std::size_t c = n; c-- > 0;) {
    for (std::size_t k = 0; k < m; ++k) {
      double s = b[c * m + k];
      for (std::size_t j = c + 1; j < n; ++j) s -= a[c * n + j] * b[j * m + k];
      b[c * m + k] = s / a[c * n + c];
    }
  }
}

std::vector<double> multiply(const Matrix& a, const std::vector<double>& x, std::size_t n) {
  std::vector<double> y(n, 0.0);
  for (std::size_t i = 0; i < n; ++i) {
    double s = 0.0;
    for (std::size_t j = 0; j < n; ++j) s += a[i * n + j] * x[j];
    y[i] = s;
  }
  return y;
}

Matrix transpose(const Matrix& a, std::size_t n) {
  Matrix t(n * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) t[j * n + i] = a[i * n + j];
  }
  return t;
}

double dot(const std::vector<double>& a, const std::vector<double>& b) {
  double s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += a[i] * b[i];
  return s;
}

double norm(const std::vector<double>& a) { return std::sqrt(dot(a, a)); }

void scale(std::vector<double>& a, double f) {
  for (double& v : a) v *= f;
}

// Barycentric weights for Chebyshev points of the first kind.
std::vector<double> chebyshev_weights(std::size_t n) {
  std::vector<double> w(n);
  for (std::size_t j = 0; j < n; ++j) {
    const double s = std::sin((2.0 * static_cast<double>(j) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n)));
    w[j] = (j % 2 == 0 ? 1.0 : -1.0) * s;
  }
  return w;
}

// Adds weight * l_j(t) to out[j] for every Lagrange basis function.
void add_lagrange(const std::vector<double>& nodes, const std::vector<double>& w, double t, double weight,
                  double* out) {
  const std::size_t n = nodes.size();
  for (std::size_t j = 0; j < n; ++j) {
    if (t == nodes[j]) {
      out[j] += weight;
      return;
    }
  }
  double denom = 0.0;
  for (std::size_t j = 0; j < n; ++j) denom += w[j] / (t - nodes[j]);
  for (std::size_t j = 0; j < n; ++j) out[j] += weight * (w[j] / (t - nodes[j])) / denom;
}

// Preimages of a point under each branch of an operator, with their weights
// 1/|T'(x)|; GKW stops at `terms` and reports the start of the dropped tail.
template <typename Visit>
void for_each_preimage(const TransferOp& op, double y, Visit&& visit) {
  switch (op.kind) {
    case OperatorKind::Bernoulli:
      visit(0.5 * y, 0.5);
      visit(0.5 * (y + 1.0), 0.5);
      break;
    case OperatorKind::TwistedBernoulli:
      visit(y / (1.0 + y), 1.0 / ((1.0 + y) * (1.0 + y)));
      visit(1.0 / (2.0 - y), 1.0 / ((2.0 - y) * (2.0 - y)));
      break;
    case OperatorKind::GKW:
      for (unsigned n = 1; n <= op.gkw_terms; ++n) {
        const double s = y + n;
        visit(1.0 / s, 1.0 / (s * s));
      }
      break;
  }
}

constexpr int kGkwTailPoints = 8;

// Midpoint rule for the GKW tail integral over [0, u0].
template <typename Visit>
void for_each_gkw_tail_point(double x, unsigned terms, Visit&& visit) {
  const double u0 = 1.0 / (x + terms + 0.5);
  const double du = u0 / kGkwTailPoints;
  for (int s = 0; s < kGkwTailPoints; ++s) visit((s + 0.5) * du, du);
}

// Column j of the result = image of y^j, sampled at the given points.
Matrix sample_monomial_images(const TransferOp& op, const std::vector<double>& xs, std::size_t dim) {
  Matrix g(xs.size() * dim, 0.0);
  auto add_powers = [&](std::size_t i, double t, double weight) {
    double p = weight;
    for (std::size_t j = 0; j < dim; ++j) {
      g[i * dim + j] += p;
      p *= t;
    }
  };
  for (std::size_t i = 0; i < xs.size(); ++i) {
    for_each_preimage(op, xs[i], [&](double t, double weight) { add_powers(i, t, weight); });
    if (op.kind == OperatorKind::GKW) {
      const double u0 = 1.0 / (xs[i] + op.gkw_terms + 0.5);
      double p = u0;
      for (std::size_t j = 0; j < dim; ++j) {
        g[i * dim + j] += p / static_cast<double>(j + 1);
        p *= u0;
      }
    }
  }
  return g;
}

OperatorMatrix chebyshev_matrix(const TransferOp& op, std::size_t dim);

Matrix vandermonde_at(const std::vector<double>& xs) {
  const std::size_t dim = xs.size();
  Matrix v(dim * dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double p = 1.0;
    for (std::size_t j = 0; j < dim; ++j) {
      v[i * dim + j] = p;
      p *= xs[i];
    }
  }
  return v;
}

OperatorMatrix monomial_matrix(const TransferOp& op, std::size_t dim) {
  OperatorMatrix m;
  m.kind = op.kind;
  m.basis = Basis::Monomial;
  m.dim = dim;
  m.ill_conditioned = dim > kMonomialDimLimit;
  m.entries.assign(dim * dim, 0.0);
  if (op.kind == OperatorKind::Bernoulli) {
    // (1/2)((y/2)^j + ((y+1)/2)^j) = 2^(-j-1) (y^j + sum_i C(j,i) y^i)
    for (std::size_t j = 0; j < dim; ++j) {
      const double scale = std::ldexp(1.0, -static_cast<int>(j) - 1);
      double binom = 1.0;
      for (std::size_t i = 0; i <= j; ++i) {
        m.entries[i * dim + j] = scale * binom * (i == j ? 2.0 : 1.0);
        binom = binom * static_cast<double>(j - i) / static_cast<double>(i + 1);
      }
    }
    return m;
  }
  m.nodes = chebyshev_nodes(dim);
  m.entries = sample_monomial_images(op, m.nodes, dim);
  lu_solve(vandermonde_at(m.nodes), m.entries, dim, dim);
  m.nodal = chebyshev_matrix(op, dim).entries;
  return m;
}

OperatorMatrix chebyshev_matrix(const TransferOp& op, std::size_t dim) {
  OperatorMatrix m;
  m.kind = op.kind;
  m.basis = Basis::Chebyshev;
  m.dim = dim;
  m.nodes = chebyshev_nodes(dim);
  m.entries.assign(dim * dim, 0.0);
  const std::vector<double> w = chebyshev_weights(dim);
  for (std::size_t i = 0; i < dim; ++i) {
    double* row = &m.entries[i * dim];
    for_each_preimage(op, m.nodes[i], [&](double t, double weight) { add_lagrange(m.nodes, w, t, weight, row); });
    if (op.kind == OperatorKind::GKW) {
      for_each_gkw_tail_point(m.nodes[i], op.gkw_terms,
                              [&](double t, double weight) { add_lagrange(m.nodes, w, t, weight, row); });
    }
  }
  return m;
}

OperatorMatrix cell_matrix(const TransferOp& op, std::size_t dim) {
  OperatorMatrix m;
  m.kind = op.kind;
  m.basis = Basis::Cells;
  m.dim = dim;
  m.entries.assign(dim * dim, 0.0);
  const double n = static_cast<double>(dim);
  // Spreads the preimage interval [lo, hi] of target cell i over source cells.
  auto deposit = [&](std::size_t i, double lo, double hi) {
    if (hi < lo) std::swap(lo, hi);
    const auto first = static_cast<std::size_t>(std::min(n - 1, std::floor(lo * n)));
    const auto last = static_cast<std::size_t>(std::min(n - 1, std::floor(hi * n)));
    for (std::size_t j = first; j <= last; ++j) {
      const double left = std::max(lo, static_cast<double>(j) / n);
      const double right = std::min(hi, static_cast<double>(j + 1) / n);
      if (right > left) m.entries[i * dim + j] += (right - left) * n;
    }
  };
  for (std::size_t i = 0; i < dim; ++i) {
    const double l = static_cast<double>(i) / n;
    const double r = static_cast<double>(i + 1) / n;
    switch (op.kind) {
      case OperatorKind::Bernoulli:
        deposit(i, l / 2, r / 2);
        deposit(i, (l + 1) / 2, (r + 1) / 2);
        break;
      case OperatorKind::TwistedBernoulli:
        deposit(i, l / (1 + l), r / (1 + r));
        deposit(i, 1 / (2 - l), 1 / (2 - r));
        break;
      case OperatorKind::GKW: {
        // Branches n > dim land inside cell 0; their total length telescopes
        // to digamma differences.
        for (std::size_t b = 1; b <= dim; ++b) deposit(i, 1 / (r + b), 1 / (l + b));
        m.entries[i * dim] += (digamma(n + 1 + r) - digamma(n + 1 + l)) * n;
        break;
      }
    }
  }
  return m;
}

struct PowerResult {
  std::vector<std::vector<double>> basis;  // 1 or 2 vectors spanning the invariant subspace
  std::vector<double> values;              // eigenvalues (size 1 or 2), or the modulus when complex
  bool complex_pair = false;
};

// Power iteration with a two-term recurrence fallback for dominant pairs
// (complex conjugates or +-lambda).
PowerResult dominant_subspace(const Matrix& a, std::size_t n, const SpectrumOptions& opt, unsigned seed,
                              double scale_norm) {
  std::mt19937_64 rng(seed);
  std::uniform_real_distribution<double> u(0.5, 1.5);
  std::vector<double> x(n);
  for (double& v : x) v = u(rng);
  scale(x, 1.0 / norm(x));
  for (std::size_t it = 0; it < opt.max_iterations; ++it) {
    std::vector<double> y = multiply(a, x, n);
    const double ny = norm(y);
    if (ny == 0.0) return {{x}, {0.0}, false};
    const double lambda = dot(x, y);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (y[i] - lambda * x[i]) * (y[i] - lambda * x[i]);
    residual = std::sqrt(residual);
    const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale_norm;
    if (residual <= std::max(opt.tolerance * std::fabs(lambda), floor)) return {{x}, {lambda}, false};

    if (it % 16 == 15) {
      const std::vector<double> z = multiply(a, y, n);
      // Least-squares fit z = alpha y + beta x.
      const double yy = dot(y, y), xy = dot(x, y), xx = 1.0;
      const double zy = dot(z, y), zx = dot(z, x);
      const double det = yy * xx - xy * xy;
      if (det > 1e-10 * yy * xx) {
        const double alpha = (zy * xx - zx * xy) / det;
        const double beta = (zx * yy - zy * xy) / det;
        double fit = 0.0;
        for (std::size_t i = 0; i < n; ++i) {
          const double e = z[i] - alpha * y[i] - beta * x[i];
          fit += e * e;
        }
        const double fit_floor = 64.0 * std::numeric_limits<double>::epsilon() * scale_norm * scale_norm;
        if (std::sqrt(fit) <= std::max(opt.tolerance * norm(z), fit_floor)) {
          const double disc = alpha * alpha + 4.0 * beta;
          if (disc < 0.0) return {{x, y}, {std::sqrt(-beta)}, true};
          const double mu1 = 0.5 * (alpha + std::sqrt(disc));
          const double mu2 = 0.5 * (alpha - std::sqrt(disc));
          // Distinct moduli separate under plain iteration; only +-lambda needs the pair.
          if (std::fabs(std::fabs(mu1) - std::fabs(mu2)) > 1e-6 * std::max(std::fabs(mu1), std::fabs(mu2))) {
            scale(y, 1.0 / ny);
            x = std::move(y);
            continue;
          }
          std::vector<double> v1(n), v2(n);
          for (std::size_t i = 0; i < n; ++i) {
            v1[i] = y[i] - mu2 * x[i];
            v2[i] = y[i] - mu1 * x[i];
          }
          return {{v1, v2}, {mu1, mu2}, false};
        }
      }
    }
    scale(y, 1.0 / ny);
    x = std::move(y);
  }
  throw ConvergenceError("spectrum: power iteration did not converge in " + std::to_string(opt.max_iterations) +
                         " iterations");
}

// A - (A V)(W^T V)^-1 W^T: removes the span of V while keeping the other
// eigenvalues, given W spanning the matching left invariant subspace.
Matrix deflate(const Matrix& a, const std::vector<std::vector<double>>& v, const std::vector<std::vector<double>>& w,
               std::size_t n) {
  const std::size_t p = v.size();
  if (p == 0) return a;
  std::vector<double> wtv(p * p);
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t c = 0; c < p; ++c) wtv[r * p + c] = dot(w[r], v[c]);
  }
  std::vector<double> wt(p * n);
  for (std::size_t r = 0; r < p; ++r) {
    for (std::size_t c = 0; c < n; ++c) wt[r * n + c] = w[r][c];
  }
  lu_solve(wtv, wt, p, n);
  std::vector<std::vector<double>> av;
  for (const auto& col : v) av.push_back(multiply(a, col, n));
  Matrix out = a;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double s = 0.0;
      for (std::size_t r = 0; r < p; ++r) s += av[r][i] * wt[r * n + j];
      out[i * n + j] -= s;
    }
  }
  return out;
}

// Shifted inverse iteration on the undeflated matrix, polishing an eigenpair
// found on a deflated one.
void refine_eigenvector(const Matrix& a, std::size_t n, double& lambda, std::vector<double>& x, double scale_norm) {
  const double floor = 64.0 * std::numeric_limits<double>::epsilon() * scale_norm;
  for (int it = 0; it < 6; ++it) {
    const std::vector<double> ax = multiply(a, x, n);
    lambda = dot(x, ax) / dot(x, x);
    double residual = 0.0;
    for (std::size_t i = 0; i < n; ++i) residual += (ax[i] - lambda * x[i]) * (ax[i] - lambda * x[i]);
    if (std::sqrt(residual) <= floor * norm(x)) return;
    Matrix shifted = a;
    const double shift = lambda + 1e-10 * scale_norm;
    for (std::size_t i = 0; i < n; ++i) shifted[i * n + i] -= shift;
    std::vector<double> y = x;
    try {
      lu_solve(shifted, y, n, 1);
    } catch (const std::domain_error&) {
      return;  // shift hit an eigenvalue exactly; x is already converged
    }
    const double ny = norm(y);
    if (!std::isfinite(ny) || ny == 0.0) return;
    scale(y, 1.0 / ny);
    x = std::move(y);
  }
}

void normalize_sign(std::vector<double>& v) {
  double big = 0.0;
  for (double e : v) {
    if (std::fabs(e) > std::fabs(big)) big = e;
  }
  if (big != 0.0) scale(v, 1.0 / big);
}

}  // namespace

double apply_twisted_bernoulli(const RealFunction& f, double y) { return apply_twisted_bernoulli(f, f, y); }

double apply_twisted_bernoulli(const RealFunction& left, const RealFunction& right, double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("apply_twisted_bernoulli: y outside [0,1]");
  const double a = 1.0 + y;
  const double b = 2.0 - y;
  return left(y / a) / (a * a) + right(1.0 / b) / (b * b);
}

double apply_bernoulli(const RealFunction& f, double y) {
  if (!(y >= 0.0 && y <= 1.0)) throw std::domain_error("apply_bernoulli: y outside [0,1]");
  return 0.5 * (f(0.5 * y) + f(0.5 * (y + 1.0)));
}

double apply_gkw(const RealFunction& f, double x, unsigned terms) {
  if (terms == 0) throw std::invalid_argument("apply_gkw: terms must be >= 1");
  if (!(x >= 0.0 && x <= 1.0)) throw std::domain_error("apply_gkw: x outside [0,1]");
  double tail = 0.0;
  for_each_gkw_tail_point(x, terms, [&](double u, double du) { tail += f(u) * du; });
  // Smallest terms first.
  double sum = tail;
  for (unsigned n = terms; n >= 1; --n) {
    const double s = x + n;
    sum += f(1.0 / s) / (s * s);
  }
  return sum;
}

double gkw_tail_bound(double sup_abs_f, unsigned terms) {
  if (terms == 0) throw std::invalid_argument("gkw_tail_bound: terms must be >= 1");
  return sup_abs_f / terms;
}

RealFunction complete_f1_from_f0(RealFunction f0) {
  return [f0 = std::move(f0)](double y) {
    if (!(y >= 0.5 && y <= 1.0)) throw std::domain_error("completed piece is defined on [1/2,1]");
    const double d = 3.0 * y - 1.0;
    return 1.0 / (y * y) - f0((2.0 * y - 1.0) / d) / (d * d);
  };
}

double orbit_product(const RealFunction& f, double y, unsigned depth) {
  const ShiftMap A = ShiftMap::farey();
  double p = 1.0;
  for (unsigned k = 0; k < depth; ++k) {
    p *= f(y);
    y = A.apply(y);
  }
  return p;
}

// ---------------------------------------------------------------------------

CoefficientSequence::CoefficientSequence(std::string name, std::function<double(unsigned long)> term,
                                         std::function<double(unsigned long)> remainder)
    : name_(std::move(name)), term_(std::move(term)), remainder_(std::move(remainder)) {
  total_ = total();
}

CoefficientSequence CoefficientSequence::geometric() {
  return {"geometric", [](unsigned long n) { return std::ldexp(1.0, -static_cast<int>(std::min(n, 2000UL))); },
          [](unsigned long n) { return std::ldexp(1.0, -static_cast<int>(std::min(n, 2000UL))); }};
}

CoefficientSequence CoefficientSequence::basel() {
  const double c = 6.0 / (std::numbers::pi * std::numbers::pi);
  return {"basel",
          [c](unsigned long n) {
            const double x = static_cast<double>(n);
            return c / (x * x);
          },
          [c](unsigned long n) {
            // Euler-Maclaurin for sum_{k>n} 1/k^2.
            const double x = static_cast<double>(n);
            return c * (1.0 / x - 1.0 / (2 * x * x) + 1.0 / (6 * x * x * x) - 1.0 / (30 * std::pow(x, 5)));
          }};
}

CoefficientSequence CoefficientSequence::finite(std::vector<double> weights) {
  for (double w : weights) {
    if (!(w >= 0.0)) throw std::invalid_argument("CoefficientSequence: weights must be non-negative");
  }
  auto shared = std::make_shared<const std::vector<double>>(std::move(weights));
  return {"finite", [shared](unsigned long n) { return n >= 1 && n <= shared->size() ? (*shared)[n - 1] : 0.0; },
          [shared](unsigned long n) {
            double s = 0.0;
            for (std::size_t k = n; k < shared->size(); ++k) s += (*shared)[k];
            return s;
          }};
}

double CoefficientSequence::total(unsigned long cutoff) const {
  double s = remainder(cutoff);
  for (unsigned long n = cutoff; n >= 1; --n) s += term(n);
  return s;
}

double gkw_Rf_density(const CoefficientSequence& a, double y, unsigned depth) {
  if (!(std::fabs(a.cached_total() - 1.0) <= 1e-12)) {
    throw std::invalid_argument("gkw_Rf_density: weights of '" + a.name() + "' sum to " +
                                std::to_string(a.cached_total()) + ", not 1");
  }
  if (!(y > 0.0 && y <= 1.0)) throw std::invalid_argument("gkw_Rf_density: y outside (0,1]");
  double p = 1.0;
  for (unsigned k = 0; k < depth; ++k) {
    if (y == 0.0) return 0.0;
    const double inv = 1.0 / y;
    const double n = std::floor(inv);
    p *= a.term(static_cast<unsigned long>(std::min(n, 1e18))) * inv * inv;
    y = inv - n;
  }
  return p;
}

// ---------------------------------------------------------------------------

std::string to_string(OperatorKind k) {
  switch (k) {
    case OperatorKind::TwistedBernoulli:
      return "twisted";
    case OperatorKind::GKW:
      return "gkw";
    case OperatorKind::Bernoulli:
      return "bernoulli";
  }
  return "unknown";
}

std::string to_string(Basis b) {
  switch (b) {
    case Basis::Monomial:
      return "monomial";
    case Basis::Cells:
      return "cells";
    case Basis::Chebyshev:
      return "chebyshev";
  }
  return "unknown";
}

OperatorKind parse_operator_kind(const std::string& s) {
  if (s == "twisted") return OperatorKind::TwistedBernoulli;
  if (s == "gkw") return OperatorKind::GKW;
  if (s == "bernoulli") return OperatorKind::Bernoulli;
  throw std::invalid_argument("unknown operator '" + s + "'");
}

Basis parse_basis(const std::string& s) {
  if (s == "monomial") return Basis::Monomial;
  if (s == "cells") return Basis::Cells;
  if (s == "chebyshev") return Basis::Chebyshev;
  throw std::invalid_argument("unknown basis '" + s + "'");
}

double TransferOp::apply(const RealFunction& f, double y) const {
  switch (kind) {
    case OperatorKind::TwistedBernoulli:
      return apply_twisted_bernoulli(f, y);
    case OperatorKind::GKW:
      return apply_gkw(f, y, gkw_terms);
    case OperatorKind::Bernoulli:
      return apply_bernoulli(f, y);
  }
  throw std::logic_error("unknown operator kind");
}

double OperatorMatrix::column_sum(std::size_t j) const {
  double s = 0.0;
  for (std::size_t i = 0; i < dim; ++i) s += (*this)(i, j);
  return s;
}

std::vector<double> chebyshev_nodes(std::size_t n) {
  std::vector<double> x(n);
  for (std::size_t k = 0; k < n; ++k) {
    x[k] = 0.5 * (1.0 - std::cos((2.0 * static_cast<double>(k) + 1.0) * std::numbers::pi / (2.0 * static_cast<double>(n))));
  }
  return x;
}

OperatorMatrix discretize(const TransferOp& op, Basis basis, std::size_t dim) {
  if (dim < 2) throw std::invalid_argument("discretize: dim must be >= 2");
  if (op.kind == OperatorKind::GKW && op.gkw_terms == 0) throw std::invalid_argument("discretize: gkw_terms must be >= 1");
  switch (basis) {
    case Basis::Monomial:
      return monomial_matrix(op, dim);
    case Basis::Cells:
      return cell_matrix(op, dim);
    case Basis::Chebyshev:
      return chebyshev_matrix(op, dim);
  }
  throw std::logic_error("unknown basis");
}

std::vector<Eigenpair> spectrum(const OperatorMatrix& m, std::size_t k, const SpectrumOptions& options) {
  const std::size_t n = m.dim;
  if (k > n) throw std::invalid_argument("spectrum: k exceeds the matrix dimension");
  if (!m.nodal.empty()) {
    // The collocated monomial matrix is V^-1 N V; iterate on N and map the
    // nodal eigenvectors back to coefficients.
    OperatorMatrix nodal = m;
    nodal.basis = Basis::Chebyshev;
    nodal.entries = m.nodal;
    nodal.nodal.clear();
    std::vector<Eigenpair> pairs = spectrum(nodal, k, options);
    for (Eigenpair& e : pairs) {
      lu_solve(vandermonde_at(m.nodes), e.vector, n, 1);
      normalize_sign(e.vector);
    }
    return pairs;
  }
  const Matrix& original = m.entries;
  const Matrix original_t = transpose(original, n);
  // Residuals are measured against the Frobenius norm of the original matrix.
  const double scale_norm = std::max(norm(original), 1e-300);
  std::vector<std::vector<double>> right_found, left_found;
  std::vector<Eigenpair> out;
  unsigned seed = 1;
  while (out.size() < k) {
    const Matrix a = deflate(original, right_found, left_found, n);
    PowerResult right = dominant_subspace(a, n, options, seed++, scale_norm);
    PowerResult left = dominant_subspace(transpose(a, n), n, options, seed++, scale_norm);
    const std::size_t p = right.basis.size();
    if (left.basis.size() != p || left.complex_pair != right.complex_pair) {
      throw ConvergenceError("spectrum: left and right iterations found different invariant subspaces");
    }
    if (!right.complex_pair) {
      for (std::size_t i = 0; i < p; ++i) {
        refine_eigenvector(original, n, right.values[i], right.basis[i], scale_norm);
        refine_eigenvector(original_t, n, left.values[i], left.basis[i], scale_norm);
        if (std::fabs(left.values[i] - right.values[i]) > 1e-8 * std::max(1.0, std::fabs(right.values[i]))) {
          throw ConvergenceError("spectrum: left and right iterations disagree on an eigenvalue (" +
                                 std::to_string(right.values[i]) + " vs " + std::to_string(left.values[i]) + ")");
        }
        // Two-sided Rayleigh quotient.
        right.values[i] = dot(left.basis[i], multiply(original, right.basis[i], n)) / dot(left.basis[i], right.basis[i]);
      }
    }
    for (const Eigenpair& e : out) {
      for (std::size_t i = 0; i < p; ++i) {
        if (!e.complex_pair && !right.complex_pair &&
            std::fabs(e.value - right.values[i]) <= 1e-12 * std::max(1.0, std::fabs(e.value))) {
          throw ConvergenceError("spectrum: refinement returned an eigenvalue twice; the basis is too ill-conditioned");
        }
      }
    }
    for (std::size_t i = 0; i < p && out.size() < k; ++i) {
      out.push_back({right.complex_pair ? right.values[0] : right.values[i], right.complex_pair, right.basis[i]});
    }
    for (std::size_t i = 0; i < p; ++i) {
      right_found.push_back(right.basis[i]);
      left_found.push_back(left.basis[i]);
    }
  }
  for (Eigenpair& e : out) normalize_sign(e.vector);
  return out;
}

std::vector<double> sample_eigenvector(const OperatorMatrix& m, const std::vector<double>& coeffs,
                                       const std::vector<double>& y) {
  if (coeffs.size() != m.dim) throw std::invalid_argument("sample_eigenvector: coefficient count != dim");
  std::vector<double> out;
  out.reserve(y.size());
  const std::vector<double> w = m.basis == Basis::Chebyshev ? chebyshev_weights(m.dim) : std::vector<double>{};
  for (double t : y) {
    if (!(t >= 0.0 && t <= 1.0)) throw std::domain_error("sample_eigenvector: point outside [0,1]");
    switch (m.basis) {
      case Basis::Monomial: {
        double s = 0.0;
        for (std::size_t j = m.dim; j-- > 0;) s = s * t + coeffs[j];
        out.push_back(s);
        break;
      }
      case Basis::Cells: {
        const auto j = std::min(m.dim - 1, static_cast<std::size_t>(t * static_cast<double>(m.dim)));
        out.push_back(coeffs[j]);
        break;
      }
      case Basis::Chebyshev: {
        std::vector<double> l(m.dim, 0.0);
        add_lagrange(m.nodes, w, t, 1.0, l.data());
        out.push_back(dot(l, coeffs));
        break;
      }
    }
  }
  return out;
}

double digamma(double x) {
  if (!(x > 0.0)) throw std::domain_error("digamma: argument must be positive");
  double result = 0.0;
  while (x < 10.0) {
    result -= 1.0 / x;
    x += 1.0;
  }
  const double inv = 1.0 / x;
  const double inv2 = inv * inv;
  result += std::log(x) - 0.5 * inv -
            inv2 * (1.0 / 12 -
                    inv2 * (1.0 / 120 - inv2 * (1.0 / 252 - inv2 * (1.0 / 240 - inv2 * (1.0 / 132 - inv2 * (691.0 / 32760))))));
  return result;
}

}  // namespace minkowski

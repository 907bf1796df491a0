#pragma once

#include <cstddef>
#include <functional>
#include <string>
#include <vector>

#include "minkowski/product.hpp"

namespace minkowski {

using RealFunction = std::function<double(double)>;

/// [L f](y) = f(y/(1+y)) / (1+y)^2 + f(1/(2-y)) / (2-y)^2.
double apply_twisted_bernoulli(const RealFunction& f, double y);
/// Same operator with separate pieces: `left` is read on [0,1/2] and `right`
/// on [1/2,1], so both may be evaluated at 1/2 without a clash.
double apply_twisted_bernoulli(const RealFunction& left, const RealFunction& right, double y);

/// [L f](y) = (f(y/2) + f((y+1)/2)) / 2.
double apply_bernoulli(const RealFunction& f, double y);

/// sum_{n <= terms} f(1/(x+n)) / (x+n)^2 plus the remaining sum estimated by
/// the integral of f over [0, 1/(x+terms+1/2)]. Throws std::invalid_argument
/// if terms = 0.
double apply_gkw(const RealFunction& f, double x, unsigned terms = 2000);

/// Bound sup|f| / terms on what the dropped GKW terms can contribute.
double gkw_tail_bound(double sup_abs_f, unsigned terms);

/// The right piece that makes L f = 1 on [0,1] given the left piece f0 on
/// [0,1/2]: f1(y) = 1/y^2 - f0((2y-1)/(3y-1)) / (3y-1)^2.
RealFunction complete_f1_from_f0(RealFunction f0);

/// prod_{k<depth} f(A^k y) for the Farey shift A, with no endpoint absorption.
double orbit_product(const RealFunction& f, double y, unsigned depth);

/// Weights a_1, a_2, ... with a closed-form remainder sum_{n>N} a_n.
class CoefficientSequence {
 public:
  CoefficientSequence(std::string name, std::function<double(unsigned long)> term,
                      std::function<double(unsigned long)> remainder);

  /// a_n = 2^-n.
  static CoefficientSequence geometric();
  /// a_n = 6 / (pi n)^2.
  static CoefficientSequence basel();
  /// Finitely many weights a_1..a_k, zero afterwards.
  static CoefficientSequence finite(std::vector<double> weights);

  const std::string& name() const { return name_; }
  double term(unsigned long n) const { return term_(n); }
  double remainder(unsigned long n) const { return remainder_(n); }
  /// sum_{n <= cutoff} a_n + remainder(cutoff).
  double total(unsigned long cutoff = 1000) const;
  /// total() at the default cutoff, computed once on construction.
  double cached_total() const { return total_; }

 private:
  std::string name_;
  std::function<double(unsigned long)> term_;
  std::function<double(unsigned long)> remainder_;
  double total_ = 0;
};

/// prod_{k<depth} a_{n_k} / y_k^2 along the Gauss orbit y_{k+1} = 1/y_k - n_k,
/// n_k = floor(1/y_k); zero once the orbit reaches 0. Throws
/// std::invalid_argument if the weights do not sum to 1 within 1e-12 or if
/// y is outside (0,1].
double gkw_Rf_density(const CoefficientSequence& a, double y, unsigned depth);

enum class OperatorKind { TwistedBernoulli, GKW, Bernoulli };
enum class Basis { Monomial, Cells, Chebyshev };

std::string to_string(OperatorKind k);
std::string to_string(Basis b);
/// Accepts "twisted", "gkw", "bernoulli". Throws std::invalid_argument.
OperatorKind parse_operator_kind(const std::string& s);
/// Accepts "monomial", "cells", "chebyshev". Throws std::invalid_argument.
Basis parse_basis(const std::string& s);

struct TransferOp {
  OperatorKind kind = OperatorKind::Bernoulli;
  unsigned gkw_terms = 2000;

  double apply(const RealFunction& f, double y) const;
};

/// Dense discretization. Column j holds the image of basis function j:
///  - Monomial: coefficients of L y^j (exact for Bernoulli, Chebyshev
///    collocation otherwise);
///  - Cells: Ulam matrix, entry (i,j) is the mean of L chi_j over cell i;
///  - Chebyshev: entry (i,j) is (L l_j)(x_i) for the Lagrange basis l_j at
///    Chebyshev points x_i, so the matrix acts on nodal values.
struct OperatorMatrix {
  OperatorKind kind = OperatorKind::Bernoulli;
  Basis basis = Basis::Cells;
  std::size_t dim = 0;
  std::vector<double> entries;  // row-major
  std::vector<double> nodes;    // Chebyshev points (also the collocation points of a monomial matrix)
  std::vector<double> nodal;    // collocated monomial matrix only: the similar matrix on nodal values
  bool ill_conditioned = false;

  double operator()(std::size_t i, std::size_t j) const { return entries[i * dim + j]; }
  double column_sum(std::size_t j) const;
};

/// Monomial bases past this dimension are flagged ill-conditioned.
inline constexpr std::size_t kMonomialDimLimit = 24;

/// Throws std::invalid_argument if dim < 2.
OperatorMatrix discretize(const TransferOp& op, Basis basis, std::size_t dim);

/// Chebyshev points (1 - cos((2k+1) pi / 2n)) / 2, k = 0..n-1.
std::vector<double> chebyshev_nodes(std::size_t n);

struct Eigenpair {
  /// Real eigenvalue, or the modulus of a complex pair when `complex_pair`.
  double value = 0;
  bool complex_pair = false;
  /// Right eigenvector in the matrix's basis (for a complex pair, a real
  /// vector from the invariant plane).
  std::vector<double> vector;
};

struct SpectrumOptions {
  std::size_t max_iterations = 50000;
  double tolerance = 1e-13;
};

/// Leading k eigenvalues by modulus: power iteration on the matrix and its
/// transpose, then oblique deflation of each found invariant subspace.
/// Throws std::invalid_argument if k > dim and ConvergenceError if an
/// eigenvalue does not settle within the iteration cap.
std::vector<Eigenpair> spectrum(const OperatorMatrix& m, std::size_t k, const SpectrumOptions& options = {});

/// Evaluates the function whose coordinates are `coeffs` at each y.
std::vector<double> sample_eigenvector(const OperatorMatrix& m, const std::vector<double>& coeffs,
                                       const std::vector<double>& y);

/// Digamma function for positive arguments.
double digamma(double x);

}  // namespace minkowski

#include "minkowski/cli.hpp"

#include <CLI11.hpp>
#include <cmath>
#include <fstream>
#include <functional>
#include <numbers>
#include <optional>
#include <random>
#include <sstream>

#include "minkowski/continued_fraction.hpp"
#include "minkowski/csv.hpp"
#include "minkowski/errors.hpp"
#include "minkowski/measure.hpp"
#include "minkowski/operators.hpp"
#include "minkowski/product.hpp"
#include "minkowski/qmark.hpp"

namespace minkowski {

namespace {

struct RunConfig {
  std::string out_path;
  int precision = 15;

  std::string rational, surd, cf, dyadic;
  unsigned rows = 16;
  std::size_t bins = 600;
  std::size_t points = 101;
  double step = 1.0 / 4096;
  std::optional<unsigned> depth;
  std::string map = "farey";
  std::string op = "twisted";
  std::string fn = "qprime";
  std::string basis = "cells";
  std::size_t dim = 32;
  std::size_t top = 4;
  std::size_t cases = 1000;
};

/// Invalid user input detected while preparing a subcommand.
class UsageError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

template <typename F>
auto as_usage(F&& parse) -> decltype(parse()) {
  try {
    return parse();
  } catch (const std::invalid_argument& e) {
    throw UsageError(e.what());
  } catch (const std::domain_error& e) {
    throw UsageError(e.what());
  }
}

std::vector<double> midpoint_grid(std::size_t k) {
  std::vector<double> y(k);
  for (std::size_t i = 0; i < k; ++i) y[i] = (static_cast<double>(i) + 0.5) / static_cast<double>(k);
  return y;
}

ShiftMap shift_map(const std::string& name) {
  if (name == "farey") return ShiftMap::farey();
  if (name == "3adic") return ShiftMap::triadic();
  throw UsageError("unknown map '" + name + "', expected farey or 3adic");
}

void require_open_unit(const QuadraticSurd& y) {
  if (y.value().compare(Rational(0)) <= 0 || y.value().compare(Rational(1)) >= 0) {
    throw UsageError("the surd " + y.str() + " must lie in (0,1)");
  }
}

unsigned depth_for(const RunConfig& c) { return c.depth.value_or(truncation_depth(c.step)); }

void qmark_eval(const RunConfig& c, std::ostream& out) {
  const int given = !c.rational.empty() + !c.surd.empty() + !c.cf.empty();
  if (given != 1) throw UsageError("qmark eval needs exactly one of --rational, --surd, --cf");
  if (!c.rational.empty()) {
    const Rational x = as_usage([&] { return Rational::parse(c.rational); });
    if (x < Rational(0) || x > Rational(1)) throw UsageError("--rational must lie in [0,1]");
    out << question_mark(x).str() << '\n';
    return;
  }
  if (!c.surd.empty()) {
    const QuadraticSurd y = as_usage([&] { return QuadraticSurd::parse(c.surd); });
    require_open_unit(y);
    out << question_mark_surd(y).str() << '\n';
    return;
  }
  const ContinuedFraction cf = as_usage([&] { return ContinuedFraction::parse(c.cf); });
  const auto value = cf_value(cf);
  if (const auto* r = std::get_if<Rational>(&value)) {
    if (*r < Rational(0) || *r > Rational(1)) throw UsageError("--cf must lie in [0,1]");
    out << question_mark(*r).str() << '\n';
  } else {
    require_open_unit(std::get<QuadraticSurd>(value));
    out << question_mark_surd(std::get<QuadraticSurd>(value)).str() << '\n';
  }
}

void qmark_inv(const RunConfig& c, std::ostream& out) {
  if (c.dyadic.empty()) throw UsageError("qmark inv needs --dyadic");
  const Dyadic d = as_usage([&] { return Dyadic::parse(c.dyadic); });
  out << question_mark_inverse(d).str() << '\n';
}

void farey_hist(const RunConfig& c, std::ostream& out) {
  if (c.bins == 0) throw UsageError("--bins must be positive");
  const Histogram h = farey_histogram(c.rows, c.bins);
  write_histogram_csv(out, h, histogram_vs_qmark(h), c.precision);
}

void density(const RunConfig& c, std::ostream& out) {
  const ShiftMap map = shift_map(c.map);
  const unsigned depth = as_usage([&] { return depth_for(c); });
  CsvWriter csv(out, c.precision);
  csv.header({"y", "density"});
  for (double y : midpoint_grid(c.points)) csv.row(y, product_density(map, y, depth));
}

void classify(const RunConfig& c, std::ostream& out) {
  const int given = !c.surd.empty() + !c.cf.empty();
  if (given != 1) throw UsageError("classify needs exactly one of --surd, --cf");
  const ShiftMap map = shift_map(c.map);
  const QuadraticSurd y = [&] {
    if (!c.surd.empty()) return as_usage([&] { return QuadraticSurd::parse(c.surd); });
    const auto value = cf_value(as_usage([&] { return ContinuedFraction::parse(c.cf); }));
    if (!std::holds_alternative<QuadraticSurd>(value)) throw UsageError("--cf must be periodic");
    return std::get<QuadraticSurd>(value);
  }();
  require_open_unit(y);
  const SurdClass s = classify_surd(map, y);
  out << "verdict,period_product,period_product_value,preperiod_length,period_length\n";
  out << to_string(s.verdict) << ',' << s.period_product.str() << ','
      << format_number(s.period_product_value, c.precision) << ',' << s.preperiod_length << ','
      << s.period_length << '\n';
}

void potential(const RunConfig& c, std::ostream& out) {
  CsvWriter csv(out, c.precision);
  csv.header({"y", "V_exact", "V_kac"});
  for (double y : midpoint_grid(c.points)) csv.row(y, potential_V(y), kac_potential(y));
}

RealFunction test_function(const RunConfig& c) {
  const unsigned depth = c.depth.value_or(20);
  if (c.fn == "qprime") {
    return [depth, map = ShiftMap::farey()](double y) { return product_density(map, y, depth); };
  }
  if (c.fn == "q3prime") {
    return [depth, map = ShiftMap::triadic()](double y) { return product_density(map, y, depth); };
  }
  if (c.fn == "gauss") return [](double y) { return 1.0 / ((1.0 + y) * std::numbers::ln2); };
  if (c.fn == "const") return [](double) { return 1.0; };
  throw UsageError("unknown --fn '" + c.fn + "', expected qprime, q3prime, gauss or const");
}

void op_apply(const RunConfig& c, std::ostream& out) {
  const TransferOp op{as_usage([&] { return parse_operator_kind(c.op); })};
  const RealFunction f = test_function(c);
  CsvWriter csv(out, c.precision);
  csv.header({"y", "f", "Lf"});
  for (double y : midpoint_grid(c.points)) csv.row(y, f(y), op.apply(f, y));
}

void op_spectrum(const RunConfig& c, std::ostream& out) {
  const TransferOp op{as_usage([&] { return parse_operator_kind(c.op); })};
  const Basis basis = as_usage([&] { return parse_basis(c.basis); });
  if (c.dim < 2) throw UsageError("--dim must be at least 2");
  if (c.top > c.dim) throw UsageError("--top must not exceed --dim");
  const OperatorMatrix m = discretize(op, basis, c.dim);
  const std::vector<Eigenpair> pairs = spectrum(m, c.top);
  CsvWriter csv(out, c.precision);
  csv.header({"index", "eigenvalue_real", "eigenvalue_imag_flag"});
  for (std::size_t i = 0; i < pairs.size(); ++i) {
    csv.row(static_cast<std::uint64_t>(i + 1), pairs[i].value, pairs[i].complex_pair ? 1 : 0);
  }
}

void qmark3_table(const RunConfig& c, std::ostream& out) {
  if (c.points < 2) throw UsageError("--points must be at least 2");
  if (!(c.step > 0.0 && c.step < 1.0)) throw UsageError("--step must lie in (0,1)");
  const SampledFunction q = qmark3(SampledFunction::uniform_grid(c.points - 1), c.step);
  CsvWriter csv(out, c.precision);
  csv.header({"x", "qmark3"});
  for (std::size_t i = 0; i < q.grid().size(); ++i) csv.row(q.grid()[i], q.values()[i]);
}

int selfcheck_command(const RunConfig& c, std::ostream& out) {
  const SelfcheckResult r = selfcheck(c.cases, out);
  out << "selfcheck: " << r.passed << " passed, " << r.failed << " failed\n";
  return r.failed == 0 ? kExitOk : kExitComputation;
}

Rational random_rational(std::mt19937_64& rng) {
  const std::uint64_t q = rng() % 1000000 + 1;
  const std::uint64_t p = rng() % (q + 1);
  return Rational(BigInt(static_cast<unsigned long>(p)), BigInt(static_cast<unsigned long>(q)));
}

}  // namespace

SelfcheckResult selfcheck(std::size_t cases, std::ostream& log) {
  SelfcheckResult r;
  auto expect = [&](bool ok, const std::string& what) {
    if (ok) {
      ++r.passed;
    } else {
      ++r.failed;
      log << "FAIL " << what << '\n';
    }
  };
  const std::pair<const char*, const char*> rationals[] = {{"1/3", "1/4"}, {"2/5", "3/8"}, {"1/2", "1/2"}};
  for (const auto& [x, y] : rationals) {
    expect(question_mark(Rational::parse(x)).to_rational() == Rational::parse(y), std::string("?(") + x + ")");
  }
  expect(question_mark_surd(QuadraticSurd::parse("(-1+1*sqrt(5))/2")) == Rational(BigInt(2), BigInt(3)),
         "?((sqrt(5)-1)/2)");
  expect(question_mark_surd(QuadraticSurd::parse("(-1+1*sqrt(2))/1")) == Rational(BigInt(2), BigInt(5)),
         "?(sqrt(2)-1)");

  std::mt19937_64 rng(20240901);
  const Rational one(1);
  for (std::size_t i = 0; i < cases; ++i) {
    const Rational x = random_rational(rng);
    const Rational qx = question_mark(x).to_rational();
    const std::string at = " at " + x.str();
    expect(question_mark_inverse(question_mark(x)) == x, "inverse round trip" + at);
    expect(question_mark(one - x).to_rational() == one - qx, "symmetry" + at);
    expect(question_mark(x / (one + x)).to_rational() == qx / Rational(2), "self-similarity" + at);
    for (long n = 1; n <= 8; ++n) {
      const Rational lhs = question_mark(one / (Rational(n) + x)).to_rational();
      const Rational scale(BigInt(1), BigInt(1) << static_cast<mp_bitcnt_t>(n));
      expect(lhs == scale * Rational(2) - scale * qx, "shift identity n=" + std::to_string(n) + at);
    }
    expect(std::get<Rational>(cf_value(cf_expand(x))) == x, "continued fraction round trip" + at);
  }
  return r;
}

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  RunConfig c;
  CLI::App app{"Minkowski question mark function: exact values, measures and transfer operators", "minkowski"};
  app.require_subcommand(1);
  app.fallthrough();
  app.add_option("--out", c.out_path, "Write results to this file instead of standard output");
  app.add_option("--precision", c.precision, "Significant digits of decimal CSV fields")
      ->check(CLI::Range(1, 17));

  auto* qmark = app.add_subcommand("qmark", "Exact question mark values");
  qmark->require_subcommand(1);
  auto* eval = qmark->add_subcommand("eval", "?(x) for a rational, surd or continued fraction");
  eval->add_option("--rational", c.rational, "p/q in [0,1]");
  eval->add_option("--surd", c.surd, "(p+q*sqrt(D))/r in (0,1)");
  eval->add_option("--cf", c.cf, "[0;a1,...] or [0;a1,...,(p1,...)]");
  auto* inv = qmark->add_subcommand("inv", "?^-1 of a dyadic rational");
  inv->add_option("--dyadic", c.dyadic, "m/2^k or m/d in [0,1]");

  auto* hist = app.add_subcommand("farey-hist", "Stern-Brocot histogram against exact ? differences");
  hist->add_option("--rows", c.rows, "Tree rows")->check(CLI::Range(0u, 62u));
  hist->add_option("--bins", c.bins, "Number of bins")->check(CLI::PositiveNumber);

  auto* dens = app.add_subcommand("density", "Product-formula density at cell midpoints");
  dens->add_option("--map", c.map, "farey or 3adic");
  dens->add_option("--points", c.points, "Number of sample points")->check(CLI::PositiveNumber);
  dens->add_option("--step", c.step, "Resolution h; depth is floor(-log2 h)")->check(CLI::Range(0.0, 1.0));
  dens->add_option("--depth", c.depth, "Explicit product depth");

  auto* cls = app.add_subcommand("classify", "Zero or infinite derivative at a quadratic surd");
  cls->add_option("--surd", c.surd, "(p+q*sqrt(D))/r in (0,1)");
  cls->add_option("--cf", c.cf, "Periodic continued fraction in (0,1)");
  cls->add_option("--map", c.map, "farey or 3adic");

  auto* pot = app.add_subcommand("potential", "Exact and Kac potentials at cell midpoints");
  pot->add_option("--points", c.points, "Number of sample points")->check(CLI::PositiveNumber);

  auto* op = app.add_subcommand("op", "Transfer operators");
  op->require_subcommand(1);
  auto* apply = op->add_subcommand("apply", "Apply an operator to a test function");
  apply->add_option("--op", c.op, "twisted, gkw or bernoulli");
  apply->add_option("--fn", c.fn, "qprime, q3prime, gauss or const");
  apply->add_option("--points", c.points, "Number of sample points")->check(CLI::PositiveNumber);
  apply->add_option("--depth", c.depth, "Product depth for qprime and q3prime");
  auto* spectrum_cmd = op->add_subcommand("spectrum", "Leading eigenvalues of a discretized operator");
  spectrum_cmd->add_option("--op", c.op, "twisted, gkw or bernoulli");
  spectrum_cmd->add_option("--basis", c.basis, "monomial, cells or chebyshev");
  spectrum_cmd->add_option("--dim", c.dim, "Matrix dimension");
  spectrum_cmd->add_option("--top", c.top, "Number of eigenvalues")->check(CLI::PositiveNumber);

  auto* q3 = app.add_subcommand("qmark3", "3-adic question mark on a uniform grid");
  q3->add_option("--points", c.points, "Number of grid points including 0 and 1");
  q3->add_option("--step", c.step, "Integration cell width")->check(CLI::Range(0.0, 1.0));

  auto* self = app.add_subcommand("selfcheck", "Exact identity suite");
  self->add_option("--cases", c.cases, "Random rationals to test");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitUsage;
  }

  std::ostringstream buffer;
  int status = kExitOk;
  try {
    if (eval->parsed()) qmark_eval(c, buffer);
    else if (inv->parsed()) qmark_inv(c, buffer);
    else if (hist->parsed()) farey_hist(c, buffer);
    else if (dens->parsed()) density(c, buffer);
    else if (cls->parsed()) classify(c, buffer);
    else if (pot->parsed()) potential(c, buffer);
    else if (apply->parsed()) op_apply(c, buffer);
    else if (spectrum_cmd->parsed()) op_spectrum(c, buffer);
    else if (q3->parsed()) qmark3_table(c, buffer);
    else if (self->parsed()) status = selfcheck_command(c, buffer);
  } catch (const UsageError& e) {
    err << "usage error: " << e.what() << '\n';
    return kExitUsage;
  } catch (const ResourceLimitError& e) {
    err << "resource limit: " << e.what() << '\n';
    return kExitResource;
  } catch (const std::exception& e) {
    err << "error: " << e.what() << '\n';
    return kExitComputation;
  }

  if (c.out_path.empty()) {
    out << buffer.str();
  } else {
    std::ofstream file(c.out_path, std::ios::binary);
    file << buffer.str();
    if (!file) {
      err << "error: cannot write " << c.out_path << '\n';
      return kExitComputation;
    }
  }
  return status;
}

}  // namespace minkowski

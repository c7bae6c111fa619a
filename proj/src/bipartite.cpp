#include "isospin/bipartite.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <functional>
#include <limits>
#include <numeric>
#include <ostream>
#include <string>

#include "isospin/entropy.hpp"
#include "isospin/error.hpp"
#include "isospin/tolerances.hpp"

namespace isospin {

namespace {

void validate_weights(const std::vector<double>& lambdas) {
  if (lambdas.empty()) throw Error(ErrorCode::InvalidState, "empty Schmidt vector");
  for (double l : lambdas)
    if (!(l >= 0.0) || !std::isfinite(l))
      throw Error(ErrorCode::InvalidState, "Schmidt coefficients must be finite and >= 0");
  const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  if (std::abs(total - 1.0) > tol::kProbabilitySum)
    throw Error(ErrorCode::InvalidState, "Schmidt coefficients do not sum to 1");
}

void check_lambda(double lambda1) {
  if (!(lambda1 >= 0.0 && lambda1 <= 1.0))
    throw Error(ErrorCode::OutOfRange, "lambda1 must lie in [0, 1]");
}

double discriminant(double lambda1) { return 9.0 - 32.0 * lambda1 * (1.0 - lambda1); }

std::string format17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", v);
  return buf;
}

}  // namespace

SchmidtVector::SchmidtVector(std::vector<double> lambdas) : lambdas_(std::move(lambdas)) {
  validate_weights(lambdas_);
  std::sort(lambdas_.begin(), lambdas_.end(), std::greater<>());
}

SchmidtForm::SchmidtForm(std::vector<double> l, ComplexMatrix b1, ComplexMatrix b2)
    : lambdas(std::move(l)), basis1(std::move(b1)), basis2(std::move(b2)) {
  validate_weights(lambdas);
  const std::size_t d = lambdas.size();
  if (basis1.rows() != d || basis1.cols() != d || basis2.rows() != d || basis2.cols() != d)
    throw Error(ErrorCode::DimensionMismatch, "Schmidt bases must be d x d");
  if (!basis1.is_unitary(tol::kUnitary) || !basis2.is_unitary(tol::kUnitary))
    throw Error(ErrorCode::InvalidState, "Schmidt bases must be unitary");
}

SchmidtForm SchmidtForm::qubit_canonical(double lambda1) {
  check_lambda(lambda1);
  return SchmidtForm({lambda1, 1.0 - lambda1}, ComplexMatrix::identity(2),
                     ComplexMatrix::identity(2));
}

SchmidtForm schmidt_decompose(const PureState& psi) {
  const std::size_t n = psi.dim();
  const auto d = static_cast<std::size_t>(std::llround(std::sqrt(static_cast<double>(n))));
  if (d * d != n)
    throw Error(ErrorCode::NotBipartiteSquare,
                std::to_string(n) + " amplitudes do not form a d x d system");
  ComplexMatrix coeff(d, d, psi.amplitudes());
  const Svd dec = svd(coeff);
  std::vector<double> lambdas(d);
  for (std::size_t a = 0; a < d; ++a) lambdas[a] = dec.s[a] * dec.s[a];
  const double total = std::accumulate(lambdas.begin(), lambdas.end(), 0.0);
  for (auto& l : lambdas) l /= total;
  // coeff = U diag(s) V^dagger, so the second factor's vectors are conj(V) columns.
  return SchmidtForm(std::move(lambdas), dec.u, dec.v.conjugate());
}

PureState assemble_schmidt_state(const SchmidtForm& form) {
  const std::size_t d = form.dim();
  CVector amp(d * d);
  for (std::size_t a = 0; a < d; ++a) {
    const double w = std::sqrt(form.lambdas[a]);
    if (w == 0.0) continue;
    for (std::size_t i = 0; i < d; ++i)
      for (std::size_t j = 0; j < d; ++j)
        amp[i * d + j] += w * form.basis1(i, a) * form.basis2(j, a);
  }
  return PureState::normalized(std::move(amp));
}

DensityMatrix product_output(const KrausChannel& ch, const SchmidtForm& form) {
  const std::size_t d = form.dim();
  if (ch.dim() != d)
    throw Error(ErrorCode::DimensionMismatch, "channel and Schmidt form dimensions differ");
  ComplexMatrix sigma(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) {
      const double w = std::sqrt(form.lambdas[a] * form.lambdas[b]);
      if (w == 0.0) continue;
      const CVector a1 = form.basis1.column(a), b1 = form.basis1.column(b);
      const CVector a2 = form.basis2.column(a), b2 = form.basis2.column(b);
      // |a;2><b;2| in the second factor uses the unconjugated column vectors.
      sigma += kron(ch.apply_to_operator(ComplexMatrix::outer(a1, b1)),
                    ch.apply_to_operator(ComplexMatrix::outer(a2, b2))) *
               Complex(w);
    }
  for (std::size_t i = 0; i < sigma.rows(); ++i) {
    sigma(i, i) = sigma(i, i).real();
    for (std::size_t j = i + 1; j < sigma.cols(); ++j) {
      const Complex avg = 0.5 * (sigma(i, j) + std::conj(sigma(j, i)));
      sigma(i, j) = avg;
      sigma(j, i) = std::conj(avg);
    }
  }
  return DensityMatrix(std::move(sigma));
}

ComplexMatrix qubit_product_output_closed_form(double lambda1) {
  check_lambda(lambda1);
  const std::array<double, 2> l{lambda1, 1.0 - lambda1};
  ComplexMatrix m(4, 4);
  for (std::size_t a = 0; a < 2; ++a)
    for (std::size_t b = 0; b < 2; ++b) {
      m(2 * a + b, 2 * a + b) += 4.0 - 2.0 * l[a] - 2.0 * l[b];
      m(3 * a, 3 * b) += std::sqrt(l[a] * l[b]);  // |aa><bb|, |aa> has index 2a + a
    }
  return m * Complex(1.0 / 9.0);
}

std::array<double, 4> analytic_qubit_spectrum(double lambda1) {
  check_lambda(lambda1);
  return {2.0 / 9.0, 2.0 / 9.0, f1(lambda1), f2(lambda1)};
}

double f1(double lambda1) { return 5.0 / 18.0 + std::sqrt(discriminant(lambda1)) / 18.0; }
double f2(double lambda1) { return 5.0 / 18.0 - std::sqrt(discriminant(lambda1)) / 18.0; }

double f1_prime(double lambda1) {
  return (64.0 * lambda1 - 32.0) / (36.0 * std::sqrt(discriminant(lambda1)));
}

double f1_second_derivative(double lambda1) {
  return (16.0 / 9.0) * std::pow(discriminant(lambda1), -1.5);
}

double entropy_second_derivative(double lambda1) {
  const double a = f1(lambda1), b = f2(lambda1), da = f1_prime(lambda1);
  return f1_second_derivative(lambda1) * std::log(b / a) - (5.0 / 9.0) * da * da / (a * b);
}

double analytic_curve_entropy(double lambda1) {
  const auto r = analytic_qubit_spectrum(lambda1);
  return entropy_of_spectrum(r);
}

double curve_constant_term() { return -(4.0 / 9.0) * std::log(2.0 / 9.0); }

namespace {

std::vector<double> grid_values(int grid) {
  if (grid < 3) throw Error(ErrorCode::OutOfRange, "curve grid needs at least 3 points");
  std::vector<double> xs(static_cast<std::size_t>(grid));
  for (int i = 0; i < grid; ++i) xs[static_cast<std::size_t>(i)] = static_cast<double>(i) / (grid - 1);
  xs.back() = 1.0;
  return xs;
}

}  // namespace

std::vector<CurvePoint> entropy_curve(int grid) {
  std::vector<CurvePoint> pts;
  for (double l : grid_values(grid)) {
    CurvePoint p;
    p.lambda1 = l;
    p.eigenvalues = analytic_qubit_spectrum(l);
    p.entropy_nats = entropy_of_spectrum(p.eigenvalues);
    pts.push_back(p);
  }
  return pts;
}

std::vector<CurvePoint> entropy_curve(int grid, const KrausChannel& ch,
                                      const ComplexMatrix& basis1, const ComplexMatrix& basis2) {
  if (ch.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "entropy curves are for qubits");
  std::vector<CurvePoint> pts;
  for (double l : grid_values(grid)) {
    const SchmidtForm form({l, 1.0 - l}, basis1, basis2);
    const auto spec = hermitian_eigen(product_output(ch, form).matrix());
    CurvePoint p;
    p.lambda1 = l;
    std::copy_n(spec.eigenvalues.begin(), 4, p.eigenvalues.begin());
    p.entropy_nats = entropy_of_spectrum(spec.eigenvalues);
    pts.push_back(p);
  }
  return pts;
}

void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& points, bool bits) {
  os << "lambda1,r1,r2,r3,r4," << (bits ? "entropy_bits" : "entropy_nats") << '\n';
  const double scale = bits ? 1.0 / std::log(2.0) : 1.0;
  for (const auto& p : points) {
    os << format17(p.lambda1);
    for (double r : p.eigenvalues) os << ',' << format17(r);
    os << ',' << format17(p.entropy_nats * scale) << '\n';
  }
}

ConcavityReport concavity_check(int grid, double fd_step) {
  if (grid < 11) throw Error(ErrorCode::OutOfRange, "concavity check needs grid >= 11");
  if (!(fd_step > 0.0 && fd_step < 0.5)) throw Error(ErrorCode::OutOfRange, "bad fd_step");
  ConcavityReport rep;
  rep.min_second_derivative = std::numeric_limits<double>::infinity();
  rep.max_second_derivative = -std::numeric_limits<double>::infinity();
  for (double l : grid_values(grid)) {
    const double sum_res = std::abs(f1(l) + f2(l) - 10.0 / 18.0);
    const double prod_res = std::abs(f1(l) * f2(l) - (16.0 + 32.0 * l * (1.0 - l)) / 324.0);
    rep.max_sum_residual = std::max(rep.max_sum_residual, sum_res);
    rep.max_product_residual = std::max(rep.max_product_residual, prod_res);
    if (l < fd_step || l > 1.0 - fd_step) continue;
    const double h = fd_step;
    const double d2 = (analytic_curve_entropy(l + h) - 2.0 * analytic_curve_entropy(l) +
                       analytic_curve_entropy(l - h)) /
                      (h * h);
    rep.min_second_derivative = std::min(rep.min_second_derivative, d2);
    rep.max_second_derivative = std::max(rep.max_second_derivative, d2);
    rep.max_closed_form_residual =
        std::max(rep.max_closed_form_residual, std::abs(d2 - entropy_second_derivative(l)));
    ++rep.interior_points;
  }
  rep.all_negative = rep.interior_points > 0 && rep.max_second_derivative < 0.0;
  return rep;
}

VertexMinimumReport vertex_minimum_check(const KrausChannel& ch, int trials, int grid,
                                         std::uint64_t seed) {
  VertexMinimumReport rep;
  for (int t = 0; t < trials; ++t) {
    Rng rng = make_stream(seed, static_cast<std::uint64_t>(t));
    const ComplexMatrix u1 = random_unitary(2, rng);
    const ComplexMatrix u2 = random_unitary(2, rng);
    const auto curve = entropy_curve(grid, ch, u1, u2);
    double grid_min = curve.front().entropy_nats;
    for (const auto& p : curve) grid_min = std::min(grid_min, p.entropy_nats);
    const double vertex_min = std::min(curve.front().entropy_nats, curve.back().entropy_nats);
    const double gap = vertex_min - grid_min;
    rep.worst_gap = std::max(rep.worst_gap, gap);
    if (gap <= 1e-12) ++rep.vertex_minima;
    ++rep.trials;
  }
  return rep;
}

}  // namespace isospin

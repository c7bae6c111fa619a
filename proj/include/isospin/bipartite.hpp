#pragma once

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <vector>

#include "isospin/channels.hpp"

namespace isospin {

/// Probability vector on the simplex, stored in descending order.
class SchmidtVector {
 public:
  /// Sorts descending; throws InvalidState unless entries are >= 0 and sum to 1 within 1e-12.
  explicit SchmidtVector(std::vector<double> lambdas);
  const std::vector<double>& values() const noexcept { return lambdas_; }
  std::size_t size() const noexcept { return lambdas_.size(); }
  double operator[](std::size_t i) const { return lambdas_[i]; }

 private:
  std::vector<double> lambdas_;
};

/// psi = sum_a sqrt(lambda_a) |a;1>|a;2>, with |a;k> the columns of basis_k.
struct SchmidtForm {
  std::vector<double> lambdas;  // weights in column order; need not be sorted
  ComplexMatrix basis1;
  ComplexMatrix basis2;

  /// Validates the weights and that both bases are unitary within 1e-10.
  SchmidtForm(std::vector<double> lambdas, ComplexMatrix basis1, ComplexMatrix basis2);
  /// Canonical bases with weights (lambda1, 1 - lambda1).
  static SchmidtForm qubit_canonical(double lambda1);

  std::size_t dim() const noexcept { return lambdas.size(); }
  SchmidtVector schmidt_vector() const { return SchmidtVector(lambdas); }
};

/// Throws NotBipartiteSquare unless the amplitude count is a perfect square.
SchmidtForm schmidt_decompose(const PureState& psi);

PureState assemble_schmidt_state(const SchmidtForm& form);

/// sigma_12 = sum_ab sqrt(l_a l_b) Phi(|a;1><b;1|) (x) Phi(|a;2><b;2|).
DensityMatrix product_output(const KrausChannel& ch, const SchmidtForm& form);

/// Closed-form sigma_12 for the spin-half channel in canonical bases:
/// (1/9)(sum_ab (4 - 2l_a - 2l_b)|ab><ab| + sum_ab sqrt(l_a l_b)|aa><bb|).
ComplexMatrix qubit_product_output_closed_form(double lambda1);

/// {2/9, 2/9, 5/18 + sqrt(9 - 32 l(1-l))/18, 5/18 - sqrt(...)/18}. OutOfRange outside [0, 1].
std::array<double, 4> analytic_qubit_spectrum(double lambda1);

/// f1 and f2, the two lambda-dependent eigenvalues.
double f1(double lambda1);
double f2(double lambda1);
double f1_prime(double lambda1);
/// (16/9)(9 - 32 l(1-l))^(-3/2).
double f1_second_derivative(double lambda1);
/// Closed-form second derivative of the entropy curve.
double entropy_second_derivative(double lambda1);
/// Entropy of the analytic spectrum.
double analytic_curve_entropy(double lambda1);
/// -(4/9) ln(2/9), the lambda-independent part of the curve entropy.
double curve_constant_term();

struct CurvePoint {
  double lambda1 = 0.0;
  std::array<double, 4> eigenvalues{};
  double entropy_nats = 0.0;
};

/// Grid lambda1 in {0, 1/(n-1), ..., 1} using the analytic spectrum (order r1..r4).
std::vector<CurvePoint> entropy_curve(int grid);

/// Same grid, numerically diagonalising product_output(ch, .) with the given
/// qubit bases; eigenvalues reported ascending.
std::vector<CurvePoint> entropy_curve(int grid, const KrausChannel& ch,
                                      const ComplexMatrix& basis1, const ComplexMatrix& basis2);

/// CSV with header lambda1,r1,r2,r3,r4,entropy_<unit>; 17 significant digits.
void write_curve_csv(std::ostream& os, const std::vector<CurvePoint>& points, bool bits = false);

struct ConcavityReport {
  double min_second_derivative = 0.0;
  double max_second_derivative = 0.0;
  bool all_negative = false;
  int interior_points = 0;
  double max_sum_residual = 0.0;      // |f1 + f2 - 10/18|
  double max_product_residual = 0.0;  // |f1 f2 - (16 + 32 l(1-l))/324|
  double max_closed_form_residual = 0.0;  // |finite difference - closed-form second derivative|
};

/// Central finite-difference second derivative of the analytic curve on the
/// interior grid points lambda1 in [fd_step, 1 - fd_step]. Requires grid >= 11.
ConcavityReport concavity_check(int grid, double fd_step);

struct VertexMinimumReport {
  int trials = 0;
  int vertex_minima = 0;       // trials where a vertex attains the grid minimum
  double worst_gap = 0.0;      // max over trials of (vertex min - grid min), >= 0
};

/// For random qubit basis pairs, checks that the numerical entropy curve of
/// the channel's product output is minimised at lambda1 in {0, 1}.
VertexMinimumReport vertex_minimum_check(const KrausChannel& ch, int trials, int grid,
                                         std::uint64_t seed);

}  // namespace isospin

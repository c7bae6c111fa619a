#include "isospin/channels.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <numeric>
#include <string>

#include "isospin/error.hpp"
#include "isospin/tolerances.hpp"

namespace isospin {

namespace {

constexpr Complex kI{0.0, 1.0};

}  // namespace

// ---------------------------------------------------------------------------
// States

PureState::PureState(CVector amplitudes) : amp_(std::move(amplitudes)) {
  if (amp_.empty()) throw Error(ErrorCode::InvalidState, "empty state vector");
  for (const auto& z : amp_)
    if (!std::isfinite(z.real()) || !std::isfinite(z.imag()))
      throw Error(ErrorCode::NonFinite, "state amplitudes must be finite");
  const double n = norm(amp_);
  if (std::abs(n - 1.0) > tol::kPureNorm)
    throw Error(ErrorCode::InvalidState, "state norm " + std::to_string(n) + " is not 1");
}

PureState PureState::normalized(CVector amplitudes) {
  const double n = norm(amplitudes);
  if (!(n > 0.0) || !std::isfinite(n))
    throw Error(ErrorCode::InvalidState, "cannot normalise a zero or non-finite vector");
  for (auto& z : amplitudes) z /= n;
  return PureState(std::move(amplitudes), Trusted{});
}

PureState PureState::basis(std::size_t d, std::size_t i) {
  if (i >= d) throw Error(ErrorCode::OutOfRange, "basis index out of range");
  CVector v(d);
  v[i] = 1.0;
  return PureState(std::move(v), Trusted{});
}

DensityMatrix::DensityMatrix(ComplexMatrix m) : mat_(std::move(m)) {
  if (!mat_.is_square() || mat_.rows() == 0)
    throw Error(ErrorCode::InvalidState, "density matrix must be square and non-empty");
  if (!mat_.is_hermitian(tol::kHermitian))
    throw Error(ErrorCode::InvalidState, "density matrix is not Hermitian");
  const Complex tr = mat_.trace();
  if (std::abs(tr - 1.0) > tol::kTrace)
    throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
  const auto spec = hermitian_eigen(mat_);
  if (spec.eigenvalues.front() < -tol::kPsdFloor)
    throw Error(ErrorCode::InvalidState, "density matrix has a negative eigenvalue");
}

DensityMatrix::DensityMatrix(const PureState& psi) : mat_(psi.projector()) {}

DensityMatrix DensityMatrix::maximally_mixed(std::size_t d) {
  return DensityMatrix(ComplexMatrix::identity(d) * Complex(1.0 / static_cast<double>(d)),
                       Trusted{});
}

double BlochVector::norm() const { return std::sqrt(s1 * s1 + s2 * s2 + s3 * s3); }

// ---------------------------------------------------------------------------
// KrausChannel

KrausChannel KrausChannel::unchecked(std::size_t dim, std::vector<ComplexMatrix> kraus,
                                     std::string label) {
  if (dim == 0) throw Error(ErrorCode::DimensionOutOfRange, "channel dimension must be positive");
  if (dim > tol::kMaxDim) throw Error(ErrorCode::SizeCap, "channel dimension exceeds 64");
  if (kraus.empty()) throw Error(ErrorCode::DimensionMismatch, "empty Kraus set");
  for (const auto& k : kraus) {
    if (k.rows() != dim || k.cols() != dim)
      throw Error(ErrorCode::DimensionMismatch, "Kraus operator shape does not match dim");
    if (!k.all_finite()) throw Error(ErrorCode::NonFinite, "Kraus operator has non-finite entries");
  }
  KrausChannel ch;
  ch.dim_ = dim;
  ch.kraus_ = std::move(kraus);
  ch.label_ = std::move(label);
  return ch;
}

KrausChannel::KrausChannel(std::size_t dim, std::vector<ComplexMatrix> kraus, std::string label)
    : KrausChannel(unchecked(dim, std::move(kraus), std::move(label))) {
  const double r = trace_preservation_residual();
  if (r > tol::kTracePreserving)
    throw Error(ErrorCode::NotTracePreserving,
                label_ + ": |sum K^dagger K - I| = " + std::to_string(r));
}

KrausChannel KrausChannel::with_symmetry(std::vector<ComplexMatrix> generators) const {
  for (const auto& g : generators)
    if (g.rows() != dim_ || !g.is_hermitian(tol::kHermitian))
      throw Error(ErrorCode::NotHermitian, "symmetry generators must be Hermitian dim x dim");
  KrausChannel copy = *this;
  copy.symmetry_ = std::move(generators);
  return copy;
}

double KrausChannel::trace_preservation_residual() const {
  ComplexMatrix sum(dim_, dim_);
  for (const auto& k : kraus_) sum += k.adjoint() * k;
  return max_abs_diff(sum, ComplexMatrix::identity(dim_));
}

double KrausChannel::unitality_residual() const {
  ComplexMatrix sum(dim_, dim_);
  for (const auto& k : kraus_) sum += k * k.adjoint();
  return max_abs_diff(sum, ComplexMatrix::identity(dim_));
}

ComplexMatrix KrausChannel::apply_to_operator(const ComplexMatrix& m) const {
  if (m.rows() != dim_ || m.cols() != dim_)
    throw Error(ErrorCode::DimensionMismatch,
                label_ + ": operator is " + std::to_string(m.rows()) + "x" +
                    std::to_string(m.cols()) + ", channel dim " + std::to_string(dim_));
  ComplexMatrix out(dim_, dim_);
  for (const auto& k : kraus_) out += k * m * k.adjoint();
  return out;
}

DensityMatrix KrausChannel::apply(const DensityMatrix& rho) const {
  ComplexMatrix out = apply_to_operator(rho.matrix());
  // Remove rounding asymmetry so downstream Hermitian checks see an exact Hermitian matrix.
  for (std::size_t i = 0; i < dim_; ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < dim_; ++j) {
      const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return DensityMatrix(std::move(out), DensityMatrix::Trusted{});
}

DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho) { return ch.apply(rho); }

ComplexMatrix apply_to_operator(const KrausChannel& ch, const ComplexMatrix& m) {
  return ch.apply_to_operator(m);
}

// ---------------------------------------------------------------------------
// Builders

std::array<ComplexMatrix, 3> spin_generators(Spin s, SpinBasis basis) {
  if (s == Spin::Half) {
    if (basis != SpinBasis::Magnetic)
      throw Error(ErrorCode::InvalidBasis, "the Cartesian basis is only defined for spin one");
    return {ComplexMatrix{{0.0, 0.5}, {0.5, 0.0}},
            ComplexMatrix{{0.0, -0.5 * kI}, {0.5 * kI, 0.0}},
            ComplexMatrix{{0.5, 0.0}, {0.0, -0.5}}};
  }
  if (basis == SpinBasis::Magnetic) {
    const double r = 1.0 / std::numbers::sqrt2;
    return {ComplexMatrix{{0.0, r, 0.0}, {r, 0.0, r}, {0.0, r, 0.0}},
            ComplexMatrix{{0.0, -r * kI, 0.0}, {r * kI, 0.0, -r * kI}, {0.0, r * kI, 0.0}},
            ComplexMatrix{{1.0, 0.0, 0.0}, {0.0, 0.0, 0.0}, {0.0, 0.0, -1.0}}};
  }
  // Generators of rotations on vector components: (S'_k)_{ij} = -i eps_{kij}.
  return {ComplexMatrix{{0.0, 0.0, 0.0}, {0.0, 0.0, -kI}, {0.0, kI, 0.0}},
          ComplexMatrix{{0.0, 0.0, kI}, {0.0, 0.0, 0.0}, {-kI, 0.0, 0.0}},
          ComplexMatrix{{0.0, -kI, 0.0}, {kI, 0.0, 0.0}, {0.0, 0.0, 0.0}}};
}

KrausChannel build_isotropic(Spin s, SpinBasis basis) {
  // Spin one half has only the Pauli form; the basis argument is ignored there.
  if (s == Spin::Half) basis = SpinBasis::Magnetic;
  const auto gens = spin_generators(s, basis);
  const double casimir = (s == Spin::Half) ? 0.75 : 2.0;  // s(s+1)
  const double w = 1.0 / std::sqrt(casimir);
  std::vector<ComplexMatrix> kraus;
  for (const auto& g : gens) kraus.push_back(g * Complex(w));
  std::string label = (s == Spin::Half) ? "phi-half"
                      : basis == SpinBasis::Cartesian ? "phi-one"
                                                      : "phi-one-magnetic";
  const std::size_t d = (s == Spin::Half) ? 2 : 3;
  return KrausChannel(d, std::move(kraus), std::move(label))
      .with_symmetry({gens.begin(), gens.end()});
}

ComplexMatrix antisymmetric_unit(std::size_t d, std::size_t i, std::size_t j) {
  return ComplexMatrix::unit(d, j, i) - ComplexMatrix::unit(d, i, j);
}

KrausChannel build_transpose_depolarizing(std::size_t d) {
  if (d < 2 || d > 8)
    throw Error(ErrorCode::DimensionOutOfRange, "transpose-depolarizing needs 2 <= d <= 8");
  // sum_{i<j} B_(ij)^dagger B_(ij) = (d-1) I.
  const Complex w = 1.0 / std::sqrt(static_cast<double>(d - 1));
  std::vector<ComplexMatrix> kraus;
  std::vector<ComplexMatrix> generators;
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = i + 1; j < d; ++j) {
      const ComplexMatrix b = antisymmetric_unit(d, i, j);
      kraus.push_back(b * w);
      generators.push_back(b * kI);  // real rotations exp(-theta B) keep mu^T covariant
    }
  return KrausChannel(d, std::move(kraus), "transpose-depolarizing-" + std::to_string(d))
      .with_symmetry(std::move(generators));
}

KrausChannel identity_channel(std::size_t d) {
  return KrausChannel(d, {ComplexMatrix::identity(d)}, "identity-" + std::to_string(d));
}

KrausChannel tensor(const KrausChannel& a, const KrausChannel& b) {
  const std::size_t d = a.dim() * b.dim();
  if (d > tol::kMaxDim) throw Error(ErrorCode::SizeCap, "tensor channel dimension exceeds 64");
  std::vector<ComplexMatrix> kraus;
  kraus.reserve(a.kraus().size() * b.kraus().size());
  for (const auto& k : a.kraus())
    for (const auto& l : b.kraus()) kraus.push_back(kron(k, l));
  return KrausChannel::unchecked(d, std::move(kraus), a.label() + "(x)" + b.label());
}

// ---------------------------------------------------------------------------
// Complete positivity and covariance

ComplexMatrix choi_matrix(const KrausChannel& ch) {
  const std::size_t d = ch.dim();
  if (d > 8) throw Error(ErrorCode::SizeCap, "Choi matrix limited to dim <= 8");
  ComplexMatrix j(d * d, d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b)
      j += kron(ComplexMatrix::unit(d, a, b), ch.apply_to_operator(ComplexMatrix::unit(d, a, b)));
  return j;
}

double choi_min_eigenvalue(const KrausChannel& ch) {
  return hermitian_eigen(choi_matrix(ch)).eigenvalues.front();
}

double check_covariance(const KrausChannel& ch, std::span<const ComplexMatrix> generators,
                        int samples, std::uint64_t seed) {
  const std::size_t d = ch.dim();
  if (generators.empty())
    throw Error(ErrorCode::CovarianceNotVerified, "no symmetry generators supplied");
  for (const auto& g : generators)
    if (g.rows() != d || g.cols() != d)
      throw Error(ErrorCode::DimensionMismatch, "generator dimension does not match channel");

  Rng rng = make_stream(seed, 0);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 2.0 * std::numbers::pi);
  double worst = 0.0;
  for (int s = 0; s < samples; ++s) {
    // Direction uniform on the unit sphere in generator space.
    std::vector<double> n(generators.size());
    double len = 0.0;
    while (len < 1e-12) {
      for (auto& x : n) x = normal(rng);
      len = std::sqrt(std::inner_product(n.begin(), n.end(), n.begin(), 0.0));
    }
    ComplexMatrix h(d, d);
    for (std::size_t k = 0; k < generators.size(); ++k) h += generators[k] * Complex(n[k] / len);
    const ComplexMatrix u = expi_hermitian(h, angle(rng));

    const CVector psi = random_unit_vector(d, rng);
    const ComplexMatrix rho = ComplexMatrix::outer(psi, psi);
    const ComplexMatrix lhs = ch.apply_to_operator(u * rho * u.adjoint());
    const ComplexMatrix rhs = u * ch.apply_to_operator(rho) * u.adjoint();
    worst = std::max(worst, max_abs_diff(lhs, rhs));
  }
  return worst;
}

double check_covariance(const KrausChannel& ch, int samples, std::uint64_t seed) {
  if (!ch.symmetry())
    throw Error(ErrorCode::CovarianceNotVerified, ch.label() + " has no known symmetry group");
  return check_covariance(ch, *ch.symmetry(), samples, seed);
}

// ---------------------------------------------------------------------------
// Bloch representation

DensityMatrix bloch_to_state(const BlochVector& b) {
  if (b.norm() > 1.0 + tol::kBlochNorm)
    throw Error(ErrorCode::NormExceeded, "Bloch vector norm exceeds 1");
  return DensityMatrix(ComplexMatrix{{0.5 * (1.0 + b.s3), 0.5 * Complex(b.s1, -b.s2)},
                                     {0.5 * Complex(b.s1, b.s2), 0.5 * (1.0 - b.s3)}});
}

BlochVector state_to_bloch(const DensityMatrix& rho) {
  if (rho.dim() != 2) throw Error(ErrorCode::DimensionMismatch, "Bloch vectors need a qubit");
  const auto& m = rho.matrix();
  // s_k = tr(rho sigma_k)
  return {2.0 * m(1, 0).real(), 2.0 * m(1, 0).imag(), (m(0, 0) - m(1, 1)).real()};
}

}  // namespace isospin

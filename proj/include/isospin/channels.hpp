#pragma once

#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "isospin/numerics.hpp"

namespace isospin {

/// Unit-norm state vector.
class PureState {
 public:
  /// Throws InvalidState unless the norm is 1 within 1e-12.
  explicit PureState(CVector amplitudes);
  /// Rescales to unit norm; throws InvalidState for the zero vector.
  static PureState normalized(CVector amplitudes);
  static PureState basis(std::size_t d, std::size_t i);

  std::size_t dim() const noexcept { return amp_.size(); }
  const CVector& amplitudes() const noexcept { return amp_; }
  ComplexMatrix projector() const { return ComplexMatrix::outer(amp_, amp_); }

 private:
  struct Trusted {};
  PureState(CVector amplitudes, Trusted) : amp_(std::move(amplitudes)) {}
  CVector amp_;
};

/// Hermitian, positive semidefinite, unit-trace matrix.
class DensityMatrix {
 public:
  /// Validates the density-matrix invariants; throws InvalidState.
  explicit DensityMatrix(ComplexMatrix m);
  DensityMatrix(const PureState& psi);  // NOLINT: pure states are density matrices
  static DensityMatrix maximally_mixed(std::size_t d);

  std::size_t dim() const noexcept { return mat_.rows(); }
  const ComplexMatrix& matrix() const noexcept { return mat_; }

 private:
  friend class KrausChannel;
  struct Trusted {};
  DensityMatrix(ComplexMatrix m, Trusted) : mat_(std::move(m)) {}
  ComplexMatrix mat_;
};

struct BlochVector {
  double s1 = 0.0, s2 = 0.0, s3 = 0.0;
  double norm() const;
};

/// A channel in Kraus form, rho -> sum_i K_i rho K_i^dagger.
class KrausChannel {
 public:
  /// Throws DimensionMismatch for wrongly shaped operators and NotTracePreserving
  /// when sum K^dagger K differs from the identity by more than 1e-10.
  KrausChannel(std::size_t dim, std::vector<ComplexMatrix> kraus, std::string label);

  /// Skips the trace-preservation check. Only useful for diagnostics such as
  /// deliberately perturbed Kraus sets.
  static KrausChannel unchecked(std::size_t dim, std::vector<ComplexMatrix> kraus,
                                std::string label);

  std::size_t dim() const noexcept { return dim_; }
  const std::vector<ComplexMatrix>& kraus() const noexcept { return kraus_; }
  const std::string& label() const noexcept { return label_; }

  /// Hermitian generators of the group under which the channel is covariant, if known.
  const std::optional<std::vector<ComplexMatrix>>& symmetry() const noexcept { return symmetry_; }
  KrausChannel with_symmetry(std::vector<ComplexMatrix> generators) const;

  /// max |sum K^dagger K - I|.
  double trace_preservation_residual() const;
  /// max |sum K K^dagger - I|.
  double unitality_residual() const;

  DensityMatrix apply(const DensityMatrix& rho) const;
  ComplexMatrix apply_to_operator(const ComplexMatrix& m) const;

 private:
  KrausChannel() = default;
  std::size_t dim_ = 0;
  std::vector<ComplexMatrix> kraus_;
  std::string label_;
  std::optional<std::vector<ComplexMatrix>> symmetry_;
};

enum class Spin { Half, One };
enum class SpinBasis { Magnetic, Cartesian };

/// S_1, S_2, S_3. Cartesian is only defined for spin one (InvalidBasis otherwise).
/// Magnetic spin-one matrices use the ordering (m = 1, 0, -1) of rows.
std::array<ComplexMatrix, 3> spin_generators(Spin s, SpinBasis basis);

/// Phi_s(rho) = sum_k S_k rho S_k / (s(s+1)). Spin one defaults to the Cartesian basis;
/// spin one half always uses the Pauli matrices.
KrausChannel build_isotropic(Spin s, SpinBasis basis = SpinBasis::Cartesian);

/// mu -> (I tr mu - mu^T)/(d-1) for 2 <= d <= 8 (DimensionOutOfRange otherwise).
KrausChannel build_transpose_depolarizing(std::size_t d);

KrausChannel identity_channel(std::size_t d);

/// Antisymmetric unit B_(ij) = |j><i| - |i><j| (0-indexed).
ComplexMatrix antisymmetric_unit(std::size_t d, std::size_t i, std::size_t j);

/// Free function forms.
DensityMatrix apply(const KrausChannel& ch, const DensityMatrix& rho);
ComplexMatrix apply_to_operator(const KrausChannel& ch, const ComplexMatrix& m);

/// Kraus set {K_i (x) L_j} on d1*d2. Throws SizeCap when d1*d2 > 64.
KrausChannel tensor(const KrausChannel& a, const KrausChannel& b);

/// J = sum_ij |i><j| (x) Phi(|i><j|). Throws SizeCap for dim > 8.
ComplexMatrix choi_matrix(const KrausChannel& ch);

/// Smallest eigenvalue of the Choi matrix.
double choi_min_eigenvalue(const KrausChannel& ch);

/// max over samples of |Phi(U rho U^dagger) - U Phi(rho) U^dagger| for
/// U = exp(i theta n.S) with n uniform on the sphere and theta uniform on [0, 2pi).
double check_covariance(const KrausChannel& ch, std::span<const ComplexMatrix> generators,
                        int samples, std::uint64_t seed);
/// Uses ch.symmetry(); throws CovarianceNotVerified when the channel has none.
double check_covariance(const KrausChannel& ch, int samples, std::uint64_t seed);

/// (I + s.sigma)/2. Throws NormExceeded for |s| > 1.
DensityMatrix bloch_to_state(const BlochVector& b);
/// Throws DimensionMismatch unless rho is a qubit state.
BlochVector state_to_bloch(const DensityMatrix& rho);

}  // namespace isospin

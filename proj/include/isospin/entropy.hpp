#pragma once

#include <cstdint>
#include <span>
#include <vector>

#include "isospin/channels.hpp"
#include "isospin/tolerances.hpp"

namespace isospin {

/// -sum p ln p over eigenvalues, with 0 ln 0 = 0. Values in [-1e-12, 0) are
/// clipped to zero; anything more negative throws InvalidState.
double entropy_of_spectrum(std::span<const double> eigenvalues);

/// Von Neumann entropy in nats.
double von_neumann_entropy(const DensityMatrix& rho);

/// Entropy of a Hermitian unit-trace matrix without the full density-matrix validation.
double von_neumann_entropy(const ComplexMatrix& rho);

/// S(Phi(|psi><psi|)).
double output_entropy(const KrausChannel& ch, const PureState& psi);

struct EntropyReport {
  double min_entropy = 0.0;  // nats
  PureState argmin = PureState::basis(1, 0);
  int restarts = 0;
  int converged_restarts = 0;
  int best_restart_index = 0;
  long long objective_evals = 0;
  std::uint64_t seed = 0;
};

struct MinEntropyOptions {
  int restarts = tol::kDefaultRestarts;
  double tolerance = tol::kDefaultSimplexTol;
  std::uint64_t seed = 42;
  /// Starting points for the first restarts; remaining restarts start Haar-random.
  std::vector<PureState> initial_states;
  /// Worker threads; 0 picks hardware concurrency. Results do not depend on it.
  unsigned threads = 0;
};

/// Minimum output entropy over pure inputs, by multistart simplex descent on
/// the 2d real coordinates of an (unnormalised) state vector.
/// Throws OptimizerStall if no restart converges and SizeCap past dim 16.
EntropyReport min_output_entropy(const KrausChannel& ch, const MinEntropyOptions& options = {});

/// chi = ln(dim) - h for covariant channels. The caller supplies the residual
/// returned by check_covariance; CovarianceNotVerified unless it is below 1e-8.
double holevo_covariant(const KrausChannel& ch, const EntropyReport& moe,
                        double covariance_residual);

class Ensemble {
 public:
  /// Throws InvalidState for bad probabilities and DimensionMismatch for mixed sizes.
  Ensemble(std::vector<double> probs, std::vector<DensityMatrix> states);

  const std::vector<double>& probs() const noexcept { return probs_; }
  const std::vector<DensityMatrix>& states() const noexcept { return states_; }
  std::size_t dim() const { return states_.front().dim(); }

 private:
  std::vector<double> probs_;
  std::vector<DensityMatrix> states_;
};

/// S(Phi(sum p rho)) - sum p S(Phi(rho)); a lower bound on chi.
double holevo_ensemble_value(const KrausChannel& ch, const Ensemble& ens);

}  // namespace isospin

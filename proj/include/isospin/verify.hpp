#pragma once

#include <array>
#include <cstdint>
#include <string>
#include <vector>

#include "isospin/channels.hpp"

namespace isospin {

/// passed is true exactly when residual <= tolerance.
struct CheckResult {
  std::string name;
  bool passed = false;
  double residual = 0.0;
  double tolerance = 0.0;
  std::string details;

  static CheckResult make(std::string name, double residual, double tolerance,
                          std::string details = {});
};

/// sum_k sigma_k sigma_i sigma_k = -sigma_i and the four sum_k sigma_k |i><j| sigma_k identities.
std::vector<CheckResult> pauli_identities();

/// Max over the d^2 matrix units of |a(E_ij) - b(E_ij)|.
CheckResult pointwise_equivalence(const KrausChannel& a, const KrausChannel& b,
                                  double tolerance = 1e-12);

/// The unitary V relating magnetic and Cartesian spin-one generators.
ComplexMatrix spin_one_basis_change();

/// V V^dagger = I, V S_k V^dagger = S'_k, and V V^T = diag(1, -1, 1).
std::vector<CheckResult> unitary_relation_check();

/// max residual of [A_1, A_2] = i A_3 and its cyclic permutations.
CheckResult commutation_check(const std::array<ComplexMatrix, 3>& ops, std::string name,
                              double tolerance = 1e-15);

/// A_1 = B_(12), A_2 = B_(23), A_3 = i B_(31) with B_(ij) = |j><i| - |i><j| (1-indexed labels).
std::array<ComplexMatrix, 3> antisymmetric_generators_as_written();

/// (i A_1, i A_2, A_3): the Hermitian rephasing of the operators above, which
/// generates the same channel.
std::array<ComplexMatrix, 3> antisymmetric_generators_hermitian();

/// Channel (1/2) sum_i A_i rho A_i^dagger built from antisymmetric_generators_as_written().
KrausChannel antisymmetric_generator_channel();

struct AdditivityReport {
  CheckResult check;
  double h_single = 0.0;
  double h_product = 0.0;
  double entangled_sample_min = 0.0;
  int entangled_samples = 0;
};

/// Minimum output entropy of Phi over `samples` Haar-random states on the
/// product space; stream-seeded, so a larger sample count extends the same sequence.
double entangled_sample_minimum(const KrausChannel& product, int samples, std::uint64_t seed);

/// |h(Phi (x) Phi) - 2 h(Phi)| < 1e-6 and no sampled entangled input below 2h(Phi) - 1e-9.
AdditivityReport additivity_probe(const KrausChannel& ch, int samples, int restarts,
                                  std::uint64_t seed);

/// |h(Phi^(x)3) - 3 h(Phi)| < 1e-6, optimiser only.
CheckResult additivity_probe_three(const KrausChannel& ch, int restarts, std::uint64_t seed);

/// Bloch image of Phi_half is -s/3 for random Bloch vectors.
CheckResult unot_check(int samples, std::uint64_t seed);

struct RunAllOptions {
  std::uint64_t seed = 42;
  int restarts = 64;
  int entangled_samples = 10000;
  bool include_three_copies = false;
};

/// Every verifier with defaults, sorted by name.
std::vector<CheckResult> run_all(const RunAllOptions& options = {});

}  // namespace isospin

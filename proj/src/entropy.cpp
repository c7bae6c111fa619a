#include "isospin/entropy.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <numeric>
#include <string>
#include <thread>

#include "isospin/error.hpp"
#include "isospin/simplex.hpp"

namespace isospin {

double entropy_of_spectrum(std::span<const double> eigenvalues) {
  double s = 0.0;
  for (double p : eigenvalues) {
    if (p < -tol::kEntropyClip)
      throw Error(ErrorCode::InvalidState, "eigenvalue " + std::to_string(p) + " below clip floor");
    if (p > 0.0) s -= p * std::log(p);
  }
  return s;
}

double von_neumann_entropy(const ComplexMatrix& rho) {
  if (!rho.is_square()) throw Error(ErrorCode::InvalidState, "density matrix must be square");
  if (std::abs(rho.trace() - 1.0) > tol::kTrace)
    throw Error(ErrorCode::InvalidState, "density matrix trace is not 1");
  const auto spec = hermitian_eigen(rho);
  return entropy_of_spectrum(spec.eigenvalues);
}

double von_neumann_entropy(const DensityMatrix& rho) { return von_neumann_entropy(rho.matrix()); }

double output_entropy(const KrausChannel& ch, const PureState& psi) {
  return von_neumann_entropy(ch.apply(DensityMatrix(psi)));
}

namespace {

constexpr std::size_t kMaxOptimizerDim = 16;

struct RestartOutcome {
  double value = 0.0;
  std::vector<double> x;
  long long evals = 0;
  bool converged = false;
};

std::vector<double> to_coordinates(const CVector& psi) {
  const std::size_t d = psi.size();
  std::vector<double> x(2 * d);
  for (std::size_t i = 0; i < d; ++i) {
    x[i] = psi[i].real();
    x[d + i] = psi[i].imag();
  }
  return x;
}

CVector to_amplitudes(std::span<const double> x) {
  const std::size_t d = x.size() / 2;
  CVector psi(d);
  for (std::size_t i = 0; i < d; ++i) psi[i] = {x[i], x[d + i]};
  return psi;
}

// Entropy of the channel output for the normalised direction of x.
double objective(const KrausChannel& ch, std::span<const double> x) {
  CVector psi = to_amplitudes(x);
  const double n = norm(psi);
  if (!(n > 1e-150)) return std::log(static_cast<double>(ch.dim())) + 1.0;
  for (auto& z : psi) z /= n;
  ComplexMatrix out = ch.apply_to_operator(ComplexMatrix::outer(psi, psi));
  for (std::size_t i = 0; i < out.rows(); ++i) {
    out(i, i) = out(i, i).real();
    for (std::size_t j = i + 1; j < out.cols(); ++j) {
      const Complex avg = 0.5 * (out(i, j) + std::conj(out(j, i)));
      out(i, j) = avg;
      out(j, i) = std::conj(avg);
    }
  }
  return entropy_of_spectrum(hermitian_eigen(out).eigenvalues);
}

RestartOutcome run_restart(const KrausChannel& ch, const MinEntropyOptions& options, int r) {
  CVector start;
  if (static_cast<std::size_t>(r) < options.initial_states.size()) {
    start = options.initial_states[static_cast<std::size_t>(r)].amplitudes();
  } else {
    Rng rng = make_stream(options.seed, static_cast<std::uint64_t>(r));
    start = random_unit_vector(ch.dim(), rng);
  }
  auto f = [&ch](std::span<const double> x) { return objective(ch, x); };

  RestartOutcome out;
  std::vector<double> x = to_coordinates(start);
  double previous = f(x);
  out.evals = 1;
  // Successively smaller simplices polish the point found by the first descent.
  for (double step : {tol::kInitialSimplexStep, 0.05, 0.01, 0.002}) {
    SimplexOptions so;
    so.tolerance = options.tolerance;
    so.initial_step = step;
    auto res = nelder_mead(f, x, so);
    out.evals += res.evaluations;
    out.converged = res.converged;
    const bool improved = res.value < previous - options.tolerance;
    if (res.value <= previous) {
      x = std::move(res.x);
      previous = res.value;
    }
    if (!improved && step != tol::kInitialSimplexStep) break;
  }
  // Normalise so the reported state and value refer to the same unit vector.
  CVector psi = to_amplitudes(x);
  const double n = norm(psi);
  for (auto& z : psi) z /= n;
  out.x = to_coordinates(psi);
  out.value = f(out.x);
  ++out.evals;
  return out;
}

}  // namespace

EntropyReport min_output_entropy(const KrausChannel& ch, const MinEntropyOptions& options) {
  if (ch.dim() > kMaxOptimizerDim)
    throw Error(ErrorCode::SizeCap, "minimum output entropy search limited to dim <= 16");
  if (options.restarts < 1) throw Error(ErrorCode::OutOfRange, "restarts must be positive");
  for (const auto& s : options.initial_states)
    if (s.dim() != ch.dim())
      throw Error(ErrorCode::DimensionMismatch, "initial state dimension does not match channel");

  const int restarts = options.restarts;
  std::vector<RestartOutcome> outcomes(static_cast<std::size_t>(restarts));
  unsigned workers = options.threads ? options.threads : std::thread::hardware_concurrency();
  workers = std::clamp(workers, 1u, static_cast<unsigned>(restarts));

  std::atomic<int> next{0};
  auto work = [&] {
    for (int r = next++; r < restarts; r = next++)
      outcomes[static_cast<std::size_t>(r)] = run_restart(ch, options, r);
  };
  if (workers == 1) {
    work();
  } else {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < workers; ++w) pool.emplace_back(work);
  }

  EntropyReport report;
  report.restarts = restarts;
  report.seed = options.seed;
  int best = -1;
  for (int r = 0; r < restarts; ++r) {
    const auto& o = outcomes[static_cast<std::size_t>(r)];
    report.objective_evals += o.evals;
    if (!o.converged) continue;
    ++report.converged_restarts;
    if (best < 0 || o.value < outcomes[static_cast<std::size_t>(best)].value) best = r;
  }
  if (best < 0) throw Error(ErrorCode::OptimizerStall, ch.label() + ": no restart converged");

  const auto& win = outcomes[static_cast<std::size_t>(best)];
  report.min_entropy = std::max(0.0, win.value);
  report.best_restart_index = best;
  report.argmin = PureState::normalized(to_amplitudes(win.x));
  return report;
}

double holevo_covariant(const KrausChannel& ch, const EntropyReport& moe,
                        double covariance_residual) {
  if (!(covariance_residual < tol::kCovarianceGate))
    throw Error(ErrorCode::CovarianceNotVerified,
                ch.label() + ": covariance residual " + std::to_string(covariance_residual));
  return std::log(static_cast<double>(ch.dim())) - moe.min_entropy;
}

Ensemble::Ensemble(std::vector<double> probs, std::vector<DensityMatrix> states)
    : probs_(std::move(probs)), states_(std::move(states)) {
  if (probs_.empty() || probs_.size() != states_.size())
    throw Error(ErrorCode::DimensionMismatch, "ensemble needs matching non-empty lists");
  for (double p : probs_)
    if (!(p >= 0.0)) throw Error(ErrorCode::InvalidState, "negative ensemble probability");
  const double total = std::accumulate(probs_.begin(), probs_.end(), 0.0);
  if (std::abs(total - 1.0) > tol::kProbabilitySum)
    throw Error(ErrorCode::InvalidState, "ensemble probabilities do not sum to 1");
  for (const auto& s : states_)
    if (s.dim() != states_.front().dim())
      throw Error(ErrorCode::DimensionMismatch, "ensemble states differ in dimension");
}

double holevo_ensemble_value(const KrausChannel& ch, const Ensemble& ens) {
  if (ens.dim() != ch.dim())
    throw Error(ErrorCode::DimensionMismatch, "ensemble dimension does not match channel");
  ComplexMatrix average(ch.dim(), ch.dim());
  double mean_entropy = 0.0;
  for (std::size_t j = 0; j < ens.probs().size(); ++j) {
    const DensityMatrix out = ch.apply(ens.states()[j]);
    average += out.matrix() * Complex(ens.probs()[j]);
    mean_entropy += ens.probs()[j] * von_neumann_entropy(out.matrix());
  }
  return von_neumann_entropy(average) - mean_entropy;
}

}  // namespace isospin

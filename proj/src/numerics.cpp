#include "isospin/numerics.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "isospin/error.hpp"
#include "isospin/tolerances.hpp"

namespace isospin {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NotHermitian: return "NotHermitian";
    case ErrorCode::NoConvergence: return "NoConvergence";
    case ErrorCode::SizeCap: return "SizeCap";
    case ErrorCode::NonFinite: return "NonFinite";
    case ErrorCode::InvalidBasis: return "InvalidBasis";
    case ErrorCode::DimensionOutOfRange: return "DimensionOutOfRange";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::NotTracePreserving: return "NotTracePreserving";
    case ErrorCode::NormExceeded: return "NormExceeded";
    case ErrorCode::InvalidState: return "InvalidState";
    case ErrorCode::OptimizerStall: return "OptimizerStall";
    case ErrorCode::CovarianceNotVerified: return "CovarianceNotVerified";
    case ErrorCode::OutOfRange: return "OutOfRange";
    case ErrorCode::NotBipartiteSquare: return "NotBipartiteSquare";
    case ErrorCode::InvalidFormat: return "InvalidFormat";
  }
  return "Unknown";
}

namespace {

bool finite(Complex z) { return std::isfinite(z.real()) && std::isfinite(z.imag()); }

void require_same_shape(const ComplexMatrix& a, const ComplexMatrix& b, const char* what) {
  if (a.rows() != b.rows() || a.cols() != b.cols()) {
    throw Error(ErrorCode::DimensionMismatch,
                std::string(what) + ": " + std::to_string(a.rows()) + "x" +
                    std::to_string(a.cols()) + " vs " + std::to_string(b.rows()) + "x" +
                    std::to_string(b.cols()));
  }
}

double hermitian_residual(const ComplexMatrix& a) {
  double worst = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = i; j < a.cols(); ++j)
      worst = std::max(worst, std::abs(a(i, j) - std::conj(a(j, i))));
  return worst;
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols)
    : rows_(rows), cols_(cols), data_(rows * cols, Complex{0.0, 0.0}) {}

ComplexMatrix::ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries)
    : rows_(rows), cols_(cols), data_(std::move(entries)) {
  if (data_.size() != rows_ * cols_)
    throw Error(ErrorCode::DimensionMismatch, "entry count does not match rows*cols");
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
}

ComplexMatrix::ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows)
    : rows_(rows.size()), cols_(rows.size() == 0 ? 0 : rows.begin()->size()) {
  data_.reserve(rows_ * cols_);
  for (const auto& r : rows) {
    if (r.size() != cols_) throw Error(ErrorCode::DimensionMismatch, "ragged matrix literal");
    data_.insert(data_.end(), r.begin(), r.end());
  }
  if (!all_finite()) throw Error(ErrorCode::NonFinite, "matrix entries must be finite");
}

ComplexMatrix ComplexMatrix::identity(std::size_t n) {
  ComplexMatrix m(n, n);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::span<const double> values) {
  ComplexMatrix m(values.size(), values.size());
  for (std::size_t i = 0; i < values.size(); ++i) m(i, i) = values[i];
  return m;
}

ComplexMatrix ComplexMatrix::unit(std::size_t n, std::size_t i, std::size_t j) {
  ComplexMatrix m(n, n);
  m(i, j) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::outer(std::span<const Complex> a, std::span<const Complex> b) {
  ComplexMatrix m(a.size(), b.size());
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) m(i, j) = a[i] * std::conj(b[j]);
  return m;
}

CVector ComplexMatrix::column(std::size_t c) const {
  CVector v(rows_);
  for (std::size_t r = 0; r < rows_; ++r) v[r] = (*this)(r, c);
  return v;
}

void ComplexMatrix::set_column(std::size_t c, std::span<const Complex> v) {
  for (std::size_t r = 0; r < rows_; ++r) (*this)(r, c) = v[r];
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = std::conj((*this)(r, c));
  return m;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix m(cols_, rows_);
  for (std::size_t r = 0; r < rows_; ++r)
    for (std::size_t c = 0; c < cols_; ++c) m(c, r) = (*this)(r, c);
  return m;
}

ComplexMatrix ComplexMatrix::conjugate() const {
  ComplexMatrix m = *this;
  for (auto& z : m.data_) z = std::conj(z);
  return m;
}

Complex ComplexMatrix::trace() const {
  Complex t = 0.0;
  for (std::size_t i = 0; i < std::min(rows_, cols_); ++i) t += (*this)(i, i);
  return t;
}

double ComplexMatrix::max_abs() const {
  double m = 0.0;
  for (const auto& z : data_) m = std::max(m, std::abs(z));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double s = 0.0;
  for (const auto& z : data_) s += std::norm(z);
  return std::sqrt(s);
}

bool ComplexMatrix::all_finite() const { return std::all_of(data_.begin(), data_.end(), finite); }

bool ComplexMatrix::is_hermitian(double tolerance) const {
  return is_square() && hermitian_residual(*this) <= tolerance;
}

bool ComplexMatrix::is_unitary(double tolerance) const {
  if (!is_square()) return false;
  return max_abs_diff(adjoint() * (*this), identity(rows_)) <= tolerance;
}

bool ComplexMatrix::is_psd(double tolerance) const {
  if (!is_hermitian(tol::kHermitian)) return false;
  const auto spec = hermitian_eigen(*this);
  return spec.eigenvalues.empty() || spec.eigenvalues.front() >= -tolerance;
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator+");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] += o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& o) {
  require_same_shape(*this, o, "operator-");
  for (std::size_t i = 0; i < data_.size(); ++i) data_[i] -= o.data_[i];
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (auto& z : data_) z *= s;
  return *this;
}

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.cols() != b.rows())
    throw Error(ErrorCode::DimensionMismatch, "matrix product inner dimensions differ");
  ComplexMatrix m(a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t k = 0; k < a.cols(); ++k) {
      const Complex aik = a(i, k);
      if (aik == Complex{}) continue;
      for (std::size_t j = 0; j < b.cols(); ++j) m(i, j) += aik * b(k, j);
    }
  return m;
}

CVector operator*(const ComplexMatrix& a, std::span<const Complex> v) {
  if (a.cols() != v.size())
    throw Error(ErrorCode::DimensionMismatch, "matrix-vector product size mismatch");
  CVector out(a.rows());
  for (std::size_t i = 0; i < a.rows(); ++i) {
    Complex s = 0.0;
    for (std::size_t k = 0; k < a.cols(); ++k) s += a(i, k) * v[k];
    out[i] = s;
  }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_shape(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b) { return a * b - b * a; }

Spectrum hermitian_eigen(const ComplexMatrix& input, bool want_vectors) {
  if (!input.is_square()) throw Error(ErrorCode::NotHermitian, "matrix is not square");
  const std::size_t n = input.rows();
  if (n > tol::kMaxDim) throw Error(ErrorCode::SizeCap, "dimension exceeds 64");
  const double asym = hermitian_residual(input);
  if (asym > tol::kHermitian)
    throw Error(ErrorCode::NotHermitian, "symmetry residual " + std::to_string(asym));

  // Work on the exactly Hermitian part.
  ComplexMatrix a(n, n);
  for (std::size_t i = 0; i < n; ++i) {
    a(i, i) = input(i, i).real();
    for (std::size_t j = i + 1; j < n; ++j) {
      a(i, j) = 0.5 * (input(i, j) + std::conj(input(j, i)));
      a(j, i) = std::conj(a(i, j));
    }
  }
  ComplexMatrix q = ComplexMatrix::identity(n);

  const double scale = std::max(1.0, a.frobenius_norm());
  auto off_norm = [&] {
    double s = 0.0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        if (i != j) s += std::norm(a(i, j));
    return std::sqrt(s);
  };

  bool converged = off_norm() <= tol::kJacobiOffDiagonal * scale;
  for (int sweep = 0; sweep < tol::kJacobiMaxSweeps && !converged; ++sweep) {
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t r = p + 1; r < n; ++r) {
        const double mag = std::abs(a(p, r));
        if (mag == 0.0) continue;
        const Complex phase = a(p, r) / mag;
        const double app = a(p, p).real();
        const double arr = a(r, r).real();
        const double tau = (arr - app) / (2.0 * mag);
        const double t = (tau >= 0.0 ? 1.0 : -1.0) / (std::abs(tau) + std::sqrt(1.0 + tau * tau));
        const double c = 1.0 / std::sqrt(1.0 + t * t);
        const double s = t * c;
        // J = [[c, s*phase], [-s*conj(phase), c]] on (p, r); A <- J^dagger A J.
        const Complex jpr = s * phase;
        const Complex jrp = -s * std::conj(phase);
        for (std::size_t k = 0; k < n; ++k) {
          const Complex akp = a(k, p);
          const Complex akr = a(k, r);
          a(k, p) = akp * c + akr * jrp;
          a(k, r) = akp * jpr + akr * c;
        }
        for (std::size_t k = 0; k < n; ++k) {
          const Complex apk = a(p, k);
          const Complex ark = a(r, k);
          a(p, k) = c * apk + std::conj(jrp) * ark;
          a(r, k) = std::conj(jpr) * apk + c * ark;
        }
        a(p, r) = 0.0;
        a(r, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(r, r) = a(r, r).real();
        if (want_vectors) {
          for (std::size_t k = 0; k < n; ++k) {
            const Complex qkp = q(k, p);
            const Complex qkr = q(k, r);
            q(k, p) = qkp * c + qkr * jrp;
            q(k, r) = qkp * jpr + qkr * c;
          }
        }
      }
    }
    converged = off_norm() <= tol::kJacobiOffDiagonal * scale;
  }
  if (!converged) throw Error(ErrorCode::NoConvergence, "Jacobi sweep cap reached");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  Spectrum out;
  out.eigenvalues.reserve(n);
  for (auto i : order) out.eigenvalues.push_back(a(i, i).real());
  if (want_vectors) {
    ComplexMatrix sorted(n, n);
    for (std::size_t c = 0; c < n; ++c) sorted.set_column(c, q.column(order[c]));
    out.eigenvectors = std::move(sorted);
  }
  return out;
}

namespace {

// Orthonormalises the columns of m in place (modified Gram-Schmidt). Columns
// that collapse are replaced by canonical vectors orthogonal to the rest.
void orthonormalize_columns(ComplexMatrix& m, std::size_t keep) {
  const std::size_t n = m.rows();
  std::size_t next_canonical = 0;
  for (std::size_t c = 0; c < m.cols(); ++c) {
    CVector v = m.column(c);
    bool ok = c < keep;
    for (int attempt = 0; attempt < 2 + static_cast<int>(n); ++attempt) {
      if (!ok) {
        std::fill(v.begin(), v.end(), Complex{});
        v[next_canonical++ % n] = 1.0;
      }
      for (int pass = 0; pass < 2; ++pass)
        for (std::size_t p = 0; p < c; ++p) {
          const CVector prev = m.column(p);
          const Complex proj = inner(prev, v);
          for (std::size_t k = 0; k < n; ++k) v[k] -= proj * prev[k];
        }
      const double len = norm(v);
      if (len > 1e-8) {
        for (auto& z : v) z /= len;
        break;
      }
      ok = false;
    }
    m.set_column(c, v);
  }
}

}  // namespace

Svd svd(const ComplexMatrix& a) {
  const std::size_t m = a.rows();
  const std::size_t n = a.cols();
  if (m > tol::kMaxDim || n > tol::kMaxDim) throw Error(ErrorCode::SizeCap, "svd dimension exceeds 64");
  const std::size_t k = std::min(m, n);

  const auto eig = hermitian_eigen(a.adjoint() * a, true);
  const ComplexMatrix& w = *eig.eigenvectors;

  // Singular values as |A v|, which stays accurate for tiny values.
  std::vector<std::pair<double, CVector>> cols;
  cols.reserve(n);
  for (std::size_t c = 0; c < n; ++c) {
    CVector v = w.column(c);
    const CVector av = a * std::span<const Complex>(v);
    cols.emplace_back(norm(av), std::move(v));
  }
  std::stable_sort(cols.begin(), cols.end(),
                   [](const auto& x, const auto& y) { return x.first > y.first; });

  Svd out{ComplexMatrix(m, m), std::vector<double>(k, 0.0), ComplexMatrix(n, n)};
  for (std::size_t c = 0; c < n; ++c) out.v.set_column(c, cols[c].second);

  const double smax = cols.empty() ? 0.0 : cols.front().first;
  std::size_t rank = 0;
  for (std::size_t c = 0; c < k; ++c) {
    const double s = cols[c].first;
    if (s > tol::kSvdRankCutoff * smax && s > 0.0) {
      out.s[c] = s;
      CVector u = a * std::span<const Complex>(cols[c].second);
      for (auto& z : u) z /= s;
      out.u.set_column(c, u);
      rank = c + 1;
    }
  }
  orthonormalize_columns(out.u, rank);
  return out;
}

ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b) {
  const std::size_t rows = a.rows() * b.rows();
  const std::size_t cols = a.cols() * b.cols();
  if (rows > tol::kMaxDim || cols > tol::kMaxDim)
    throw Error(ErrorCode::SizeCap, "Kronecker product exceeds 64x64");
  ComplexMatrix m(rows, cols);
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) {
      const Complex aij = a(i, j);
      if (aij == Complex{}) continue;
      for (std::size_t k = 0; k < b.rows(); ++k)
        for (std::size_t l = 0; l < b.cols(); ++l)
          m(i * b.rows() + k, j * b.cols() + l) = aij * b(k, l);
    }
  return m;
}

CVector kron(std::span<const Complex> a, std::span<const Complex> b) {
  CVector v;
  v.reserve(a.size() * b.size());
  for (const auto& x : a)
    for (const auto& y : b) v.push_back(x * y);
  return v;
}

ComplexMatrix expi_hermitian(const ComplexMatrix& h, double theta) {
  const auto eig = hermitian_eigen(h, true);
  const ComplexMatrix& q = *eig.eigenvectors;
  const std::size_t n = h.rows();
  ComplexMatrix scaled = q;
  for (std::size_t c = 0; c < n; ++c) {
    const Complex phase = std::polar(1.0, theta * eig.eigenvalues[c]);
    for (std::size_t r = 0; r < n; ++r) scaled(r, c) *= phase;
  }
  return scaled * q.adjoint();
}

double norm(std::span<const Complex> v) {
  double s = 0.0;
  for (const auto& z : v) s += std::norm(z);
  return std::sqrt(s);
}

Complex inner(std::span<const Complex> a, std::span<const Complex> b) {
  if (a.size() != b.size()) throw Error(ErrorCode::DimensionMismatch, "inner product size mismatch");
  Complex s = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) s += std::conj(a[i]) * b[i];
  return s;
}

Rng make_stream(std::uint64_t seed, std::uint64_t index) {
  std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                    static_cast<std::uint32_t>(index), static_cast<std::uint32_t>(index >> 32)};
  return Rng(seq);
}

namespace {

Complex gaussian(Rng& rng) {
  std::normal_distribution<double> normal(0.0, 1.0);
  const double re = normal(rng);
  const double im = normal(rng);
  return {re, im};
}

}  // namespace

CVector random_unit_vector(std::size_t d, Rng& rng) {
  CVector v(d);
  double len = 0.0;
  while (len < 1e-12) {
    for (auto& z : v) z = gaussian(rng);
    len = norm(v);
  }
  for (auto& z : v) z /= len;
  return v;
}

ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng) {
  ComplexMatrix m(rows, cols);
  for (std::size_t r = 0; r < rows; ++r)
    for (std::size_t c = 0; c < cols; ++c) m(r, c) = gaussian(rng);
  return m;
}

ComplexMatrix random_unitary(std::size_t d, Rng& rng) {
  ComplexMatrix m = random_matrix(d, d, rng);
  orthonormalize_columns(m, d);
  return m;
}

ComplexMatrix random_hermitian(std::size_t d, Rng& rng) {
  const ComplexMatrix g = random_matrix(d, d, rng);
  return 0.5 * (g + g.adjoint());
}

}  // namespace isospin

#pragma once

#include <complex>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <span>
#include <vector>

namespace isospin {

using Complex = std::complex<double>;
using CVector = std::vector<Complex>;

/// Dense row-major complex matrix. Entries are always finite.
class ComplexMatrix {
 public:
  ComplexMatrix() = default;
  ComplexMatrix(std::size_t rows, std::size_t cols);
  /// Throws NonFinite if any entry is NaN/Inf and DimensionMismatch on a size mismatch.
  ComplexMatrix(std::size_t rows, std::size_t cols, std::vector<Complex> entries);
  /// Row-wise literal, e.g. {{0, 1}, {1, 0}}.
  ComplexMatrix(std::initializer_list<std::initializer_list<Complex>> rows);

  static ComplexMatrix identity(std::size_t n);
  static ComplexMatrix zeros(std::size_t rows, std::size_t cols) { return ComplexMatrix(rows, cols); }
  static ComplexMatrix diagonal(std::span<const double> values);
  /// |i><j| in dimension n.
  static ComplexMatrix unit(std::size_t n, std::size_t i, std::size_t j);
  /// |a><b|.
  static ComplexMatrix outer(std::span<const Complex> a, std::span<const Complex> b);

  std::size_t rows() const noexcept { return rows_; }
  std::size_t cols() const noexcept { return cols_; }
  bool is_square() const noexcept { return rows_ == cols_; }

  Complex& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const Complex& operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  std::span<const Complex> entries() const noexcept { return data_; }

  CVector column(std::size_t c) const;
  void set_column(std::size_t c, std::span<const Complex> v);

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  ComplexMatrix conjugate() const;
  Complex trace() const;
  /// Largest absolute entry.
  double max_abs() const;
  double frobenius_norm() const;
  bool all_finite() const;

  bool is_hermitian(double tolerance) const;
  bool is_unitary(double tolerance) const;
  /// Hermitian and smallest eigenvalue >= -tolerance.
  bool is_psd(double tolerance) const;

  ComplexMatrix& operator+=(const ComplexMatrix& o);
  ComplexMatrix& operator-=(const ComplexMatrix& o);
  ComplexMatrix& operator*=(Complex s);

  friend ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
  friend ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
  friend ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }
  friend ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
  friend ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
  friend CVector operator*(const ComplexMatrix& a, std::span<const Complex> v);
  friend bool operator==(const ComplexMatrix&, const ComplexMatrix&) = default;

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  std::vector<Complex> data_;
};

/// max |a - b| entrywise; DimensionMismatch on shape mismatch.
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);

/// Commutator ab - ba.
ComplexMatrix commutator(const ComplexMatrix& a, const ComplexMatrix& b);

struct Spectrum {
  std::vector<double> eigenvalues;            // ascending
  std::optional<ComplexMatrix> eigenvectors;  // columns, same order
};

/// Cyclic Jacobi diagonalisation of a Hermitian matrix (dim <= 64).
/// Throws NotHermitian, SizeCap or NoConvergence.
Spectrum hermitian_eigen(const ComplexMatrix& a, bool want_vectors = false);

struct Svd {
  ComplexMatrix u;             // rows x rows, unitary
  std::vector<double> s;       // min(rows, cols), descending
  ComplexMatrix v;             // cols x cols, unitary
};

/// a = u[:, :k] diag(s) v[:, :k]^dagger with k = min(rows, cols).
Svd svd(const ComplexMatrix& a);

/// Kronecker product; the left factor owns the slow index. Throws SizeCap past 64x64.
ComplexMatrix kron(const ComplexMatrix& a, const ComplexMatrix& b);
CVector kron(std::span<const Complex> a, std::span<const Complex> b);

/// exp(i theta h) for Hermitian h.
ComplexMatrix expi_hermitian(const ComplexMatrix& h, double theta);

double norm(std::span<const Complex> v);
Complex inner(std::span<const Complex> a, std::span<const Complex> b);  // <a|b>

// Seeded random objects. Deterministic for a given engine state.
using Rng = std::mt19937_64;

/// Engine for stream `index` of `seed`; streams are independent of each other.
Rng make_stream(std::uint64_t seed, std::uint64_t index);

/// Unit vector with i.i.d. complex Gaussian components (Haar on the sphere).
CVector random_unit_vector(std::size_t d, Rng& rng);

/// Haar-random unitary via Gram-Schmidt on a complex Gaussian matrix.
ComplexMatrix random_unitary(std::size_t d, Rng& rng);

/// Random Hermitian matrix with Gaussian entries.
ComplexMatrix random_hermitian(std::size_t d, Rng& rng);

/// Random matrix with Gaussian entries.
ComplexMatrix random_matrix(std::size_t rows, std::size_t cols, Rng& rng);

}  // namespace isospin

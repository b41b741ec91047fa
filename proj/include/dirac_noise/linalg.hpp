#pragma once

#include <array>
#include <complex>
#include <cstddef>
#include <initializer_list>
#include <vector>

namespace dirac_noise {

using Complex = std::complex<double>;

// Dense square complex matrix of dimension 2, 3 or 4, stored by value.
class ComplexMatrix {
 public:
  static constexpr std::size_t kMaxDim = 4;

  explicit ComplexMatrix(std::size_t dim);
  // Row-major entries; the list length must be dim*dim.
  ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries);

  static ComplexMatrix identity(std::size_t dim);
  static ComplexMatrix diagonal(std::initializer_list<Complex> diag);

  std::size_t dim() const noexcept { return dim_; }

  Complex& operator()(std::size_t i, std::size_t j) { return data_[i * kMaxDim + j]; }
  const Complex& operator()(std::size_t i, std::size_t j) const {
    return data_[i * kMaxDim + j];
  }

  ComplexMatrix adjoint() const;
  ComplexMatrix transpose() const;
  Complex trace() const;
  // max_{ij} |a_ij|
  double max_norm() const;
  double frobenius_norm() const;

  ComplexMatrix& operator+=(const ComplexMatrix& rhs);
  ComplexMatrix& operator-=(const ComplexMatrix& rhs);
  ComplexMatrix& operator*=(Complex s);

  friend bool operator==(const ComplexMatrix& a, const ComplexMatrix& b);

 private:
  std::size_t dim_;
  std::array<Complex, kMaxDim * kMaxDim> data_{};
};

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b);
ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b);
ComplexMatrix operator*(Complex s, ComplexMatrix a);
ComplexMatrix operator*(ComplexMatrix a, Complex s);

// max_{ij} |a_ij - b_ij|
double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b);
// max_{ij} |a_ij - conj(a_ji)|
double hermiticity_defect(const ComplexMatrix& a);
// Elementwise (Hadamard) product.
ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b);

namespace pauli {
ComplexMatrix I();
ComplexMatrix X();
ComplexMatrix Y();
ComplexMatrix Z();
}  // namespace pauli

// Kronecker product of two 2x2 matrices, basis order |00>,|01>,|10>,|11>.
ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b);

// Ascending eigenvalues with orthonormal eigenvectors; vectors[k] pairs with values[k].
struct EigenSystem {
  std::vector<double> values;
  std::vector<std::vector<Complex>> vectors;
};

inline constexpr double kDefaultEigenTolerance = 1e-12;
inline constexpr int kJacobiSweepBudget = 50;

// Cyclic complex Jacobi. Each eigenvector's largest-magnitude component is made
// real and positive (lowest index wins ties).
EigenSystem hermitian_eigensystem(const ComplexMatrix& h,
                                  double tol = kDefaultEigenTolerance);

// Eigenvalues only, ascending.
std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h,
                                          double tol = kDefaultEigenTolerance);

// Transposes the indices of one qubit (1 or 2) of a 4x4 two-qubit operator.
ComplexMatrix partial_transpose(const ComplexMatrix& rho, int subsystem);

// Sum of absolute eigenvalues of a Hermitian matrix.
double trace_norm_hermitian(const ComplexMatrix& m);

// U(t) = exp(-i H t), assembled from the spectral decomposition of H.
ComplexMatrix evolution_operator(const ComplexMatrix& h, double t);
// Same, from a precomputed eigensystem.
ComplexMatrix evolution_operator(const EigenSystem& es, double t);

}  // namespace dirac_noise

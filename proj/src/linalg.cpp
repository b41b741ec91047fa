#include "dirac_noise/linalg.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <string>

#include "dirac_noise/errors.hpp"

namespace dirac_noise {

namespace {

void check_dim(std::size_t dim) {
  if (dim < 2 || dim > ComplexMatrix::kMaxDim) {
    throw InvalidInput("matrix dimension must be 2, 3 or 4, got " + std::to_string(dim));
  }
}

void require_same_dim(const ComplexMatrix& a, const ComplexMatrix& b, const char* op) {
  if (a.dim() != b.dim()) {
    throw InvalidInput(std::string(op) + ": dimension mismatch (" + std::to_string(a.dim()) +
                       " vs " + std::to_string(b.dim()) + ")");
  }
}

void require_hermitian(const ComplexMatrix& h, const char* op) {
  const double scale = std::max(1.0, h.max_norm());
  const double defect = hermiticity_defect(h);
  if (!(defect <= 1e-12 * scale)) {
    throw InvalidInput(std::string(op) + ": matrix is not Hermitian (defect " +
                       std::to_string(defect) + ")");
  }
}

double off_diagonal_norm(const ComplexMatrix& a) {
  double sum = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (i != j) sum += std::norm(a(i, j));
  return std::sqrt(sum);
}

struct Rotation {
  Complex g00, g01, g10, g11;
};

// 2x2 unitary G that diagonalizes the (p,q) block: G = diag(1, e^{-i phi}) * R(c, s).
Rotation jacobi_rotation(double app, double aqq, Complex apq) {
  const double r = std::abs(apq);
  const Complex phase_conj = std::conj(apq) / r;
  const double theta = (aqq - app) / (2.0 * r);
  const double t = (theta >= 0.0 ? 1.0 : -1.0) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
  const double c = 1.0 / std::sqrt(1.0 + t * t);
  const double s = t * c;
  return {c, s, -s * phase_conj, c * phase_conj};
}

void rotate_columns(ComplexMatrix& a, std::size_t p, std::size_t q, const Rotation& g) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const Complex akp = a(k, p);
    const Complex akq = a(k, q);
    a(k, p) = akp * g.g00 + akq * g.g10;
    a(k, q) = akp * g.g01 + akq * g.g11;
  }
}

void rotate_rows(ComplexMatrix& a, std::size_t p, std::size_t q, const Rotation& g) {
  for (std::size_t k = 0; k < a.dim(); ++k) {
    const Complex apk = a(p, k);
    const Complex aqk = a(q, k);
    a(p, k) = std::conj(g.g00) * apk + std::conj(g.g10) * aqk;
    a(q, k) = std::conj(g.g01) * apk + std::conj(g.g11) * aqk;
  }
}

// Diagonalizes in place; returns the accumulated unitary when requested.
void jacobi_diagonalize(ComplexMatrix& a, ComplexMatrix* v, double tol) {
  const std::size_t n = a.dim();
  const double threshold = tol * std::max(1.0, a.max_norm());
  for (int sweep = 0; sweep <= kJacobiSweepBudget; ++sweep) {
    if (off_diagonal_norm(a) <= threshold) {
      for (std::size_t i = 0; i < n; ++i) a(i, i) = a(i, i).real();
      return;
    }
    if (sweep == kJacobiSweepBudget) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const Complex apq = a(p, q);
        if (std::abs(apq) == 0.0) continue;
        const Rotation g = jacobi_rotation(a(p, p).real(), a(q, q).real(), apq);
        rotate_columns(a, p, q, g);
        rotate_rows(a, p, q, g);
        if (v != nullptr) rotate_columns(*v, p, q, g);
        a(p, q) = 0.0;
        a(q, p) = 0.0;
        a(p, p) = a(p, p).real();
        a(q, q) = a(q, q).real();
      }
    }
  }
  throw ConvergenceFailure("Jacobi eigensolver did not converge within " +
                           std::to_string(kJacobiSweepBudget) + " sweeps");
}

void fix_phase(std::vector<Complex>& vec) {
  double largest = 0.0;
  for (const Complex& z : vec) largest = std::max(largest, std::abs(z));
  std::size_t pivot = 0;
  for (std::size_t i = 0; i < vec.size(); ++i) {
    if (std::abs(vec[i]) >= largest * (1.0 - 1e-12)) {
      pivot = i;
      break;
    }
  }
  const Complex rot = std::conj(vec[pivot]) / std::abs(vec[pivot]);
  for (Complex& z : vec) z *= rot;
  vec[pivot] = std::abs(vec[pivot]);
}

}  // namespace

ComplexMatrix::ComplexMatrix(std::size_t dim) : dim_(dim) { check_dim(dim); }

ComplexMatrix::ComplexMatrix(std::size_t dim, std::initializer_list<Complex> entries)
    : dim_(dim) {
  check_dim(dim);
  if (entries.size() != dim * dim) {
    throw InvalidInput("expected " + std::to_string(dim * dim) + " entries, got " +
                       std::to_string(entries.size()));
  }
  auto it = entries.begin();
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) (*this)(i, j) = *it++;
}

ComplexMatrix ComplexMatrix::identity(std::size_t dim) {
  ComplexMatrix m(dim);
  for (std::size_t i = 0; i < dim; ++i) m(i, i) = 1.0;
  return m;
}

ComplexMatrix ComplexMatrix::diagonal(std::initializer_list<Complex> diag) {
  ComplexMatrix m(diag.size());
  std::size_t i = 0;
  for (const Complex& z : diag) {
    m(i, i) = z;
    ++i;
  }
  return m;
}

ComplexMatrix ComplexMatrix::adjoint() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = std::conj((*this)(j, i));
  return out;
}

ComplexMatrix ComplexMatrix::transpose() const {
  ComplexMatrix out(dim_);
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) out(i, j) = (*this)(j, i);
  return out;
}

Complex ComplexMatrix::trace() const {
  Complex sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i) sum += (*this)(i, i);
  return sum;
}

double ComplexMatrix::max_norm() const {
  double m = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) m = std::max(m, std::abs((*this)(i, j)));
  return m;
}

double ComplexMatrix::frobenius_norm() const {
  double sum = 0.0;
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) sum += std::norm((*this)(i, j));
  return std::sqrt(sum);
}

ComplexMatrix& ComplexMatrix::operator+=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator+");
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) += rhs(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator-=(const ComplexMatrix& rhs) {
  require_same_dim(*this, rhs, "operator-");
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) -= rhs(i, j);
  return *this;
}

ComplexMatrix& ComplexMatrix::operator*=(Complex s) {
  for (std::size_t i = 0; i < dim_; ++i)
    for (std::size_t j = 0; j < dim_; ++j) (*this)(i, j) *= s;
  return *this;
}

bool operator==(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != b.dim()) return false;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j)
      if (a(i, j) != b(i, j)) return false;
  return true;
}

ComplexMatrix operator+(ComplexMatrix a, const ComplexMatrix& b) { return a += b; }
ComplexMatrix operator-(ComplexMatrix a, const ComplexMatrix& b) { return a -= b; }
ComplexMatrix operator*(Complex s, ComplexMatrix a) { return a *= s; }
ComplexMatrix operator*(ComplexMatrix a, Complex s) { return a *= s; }

ComplexMatrix operator*(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "operator*");
  const std::size_t n = a.dim();
  ComplexMatrix out(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t k = 0; k < n; ++k) {
      const Complex aik = a(i, k);
      for (std::size_t j = 0; j < n; ++j) out(i, j) += aik * b(k, j);
    }
  return out;
}

double max_abs_diff(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "max_abs_diff");
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) m = std::max(m, std::abs(a(i, j) - b(i, j)));
  return m;
}

double hermiticity_defect(const ComplexMatrix& a) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = i; j < a.dim(); ++j)
      m = std::max(m, std::abs(a(i, j) - std::conj(a(j, i))));
  return m;
}

ComplexMatrix hadamard(const ComplexMatrix& a, const ComplexMatrix& b) {
  require_same_dim(a, b, "hadamard");
  ComplexMatrix out(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i)
    for (std::size_t j = 0; j < a.dim(); ++j) out(i, j) = a(i, j) * b(i, j);
  return out;
}

namespace pauli {
ComplexMatrix I() { return ComplexMatrix::identity(2); }
ComplexMatrix X() { return ComplexMatrix(2, {0.0, 1.0, 1.0, 0.0}); }
ComplexMatrix Y() { return ComplexMatrix(2, {0.0, Complex(0, -1), Complex(0, 1), 0.0}); }
ComplexMatrix Z() { return ComplexMatrix(2, {1.0, 0.0, 0.0, -1.0}); }
}  // namespace pauli

ComplexMatrix tensor_product(const ComplexMatrix& a, const ComplexMatrix& b) {
  if (a.dim() != 2 || b.dim() != 2) {
    throw InvalidInput("tensor_product expects two 2x2 matrices");
  }
  ComplexMatrix out(4);
  for (std::size_t i = 0; i < 2; ++i)
    for (std::size_t j = 0; j < 2; ++j)
      for (std::size_t k = 0; k < 2; ++k)
        for (std::size_t l = 0; l < 2; ++l) out(2 * i + k, 2 * j + l) = a(i, j) * b(k, l);
  return out;
}

EigenSystem hermitian_eigensystem(const ComplexMatrix& h, double tol) {
  require_hermitian(h, "hermitian_eigensystem");
  const std::size_t n = h.dim();
  ComplexMatrix a = h;
  ComplexMatrix v = ComplexMatrix::identity(n);
  jacobi_diagonalize(a, &v, tol);

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t x, std::size_t y) {
    return a(x, x).real() < a(y, y).real();
  });

  EigenSystem es;
  es.values.reserve(n);
  es.vectors.reserve(n);
  for (std::size_t k : order) {
    es.values.push_back(a(k, k).real());
    std::vector<Complex> col(n);
    for (std::size_t i = 0; i < n; ++i) col[i] = v(i, k);
    fix_phase(col);
    es.vectors.push_back(std::move(col));
  }
  return es;
}

std::vector<double> hermitian_eigenvalues(const ComplexMatrix& h, double tol) {
  require_hermitian(h, "hermitian_eigenvalues");
  ComplexMatrix a = h;
  jacobi_diagonalize(a, nullptr, tol);
  std::vector<double> values(a.dim());
  for (std::size_t i = 0; i < a.dim(); ++i) values[i] = a(i, i).real();
  std::sort(values.begin(), values.end());
  return values;
}

ComplexMatrix partial_transpose(const ComplexMatrix& rho, int subsystem) {
  if (rho.dim() != 4) throw InvalidInput("partial_transpose expects a 4x4 matrix");
  if (subsystem != 1 && subsystem != 2) {
    throw InvalidInput("partial_transpose subsystem must be 1 or 2");
  }
  ComplexMatrix out(4);
  for (std::size_t i1 = 0; i1 < 2; ++i1)
    for (std::size_t i2 = 0; i2 < 2; ++i2)
      for (std::size_t j1 = 0; j1 < 2; ++j1)
        for (std::size_t j2 = 0; j2 < 2; ++j2) {
          const std::size_t row = 2 * i1 + i2;
          const std::size_t col = 2 * j1 + j2;
          if (subsystem == 1) {
            out(row, col) = rho(2 * j1 + i2, 2 * i1 + j2);
          } else {
            out(row, col) = rho(2 * i1 + j2, 2 * j1 + i2);
          }
        }
  return out;
}

double trace_norm_hermitian(const ComplexMatrix& m) {
  double sum = 0.0;
  for (double mu : hermitian_eigenvalues(m)) sum += std::abs(mu);
  return sum;
}

ComplexMatrix evolution_operator(const EigenSystem& es, double t) {
  if (!std::isfinite(t)) throw InvalidInput("evolution_operator: time must be finite");
  const std::size_t n = es.values.size();
  ComplexMatrix u(n);
  for (std::size_t k = 0; k < n; ++k) {
    const Complex phase = std::polar(1.0, -es.values[k] * t);
    const auto& vec = es.vectors[k];
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) u(i, j) += phase * vec[i] * std::conj(vec[j]);
  }
  return u;
}

ComplexMatrix evolution_operator(const ComplexMatrix& h, double t) {
  if (!std::isfinite(t)) throw InvalidInput("evolution_operator: time must be finite");
  return evolution_operator(hermitian_eigensystem(h), t);
}

}  // namespace dirac_noise

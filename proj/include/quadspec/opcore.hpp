#pragma once

#include <Eigen/Dense>
#include <complex>
#include <stdexcept>

namespace quadspec {

using Complex = std::complex<double>;
using Matrix = Eigen::MatrixXcd;
using Vector = Eigen::VectorXcd;
using RealVector = Eigen::VectorXd;

// Raised when a computation produces non-finite values (CLI exit code 3).
class NumericalError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Dense linear operator on the finite-dimensional state space.
// Entries are validated to be finite on construction.
class ComplexOperator {
 public:
  explicit ComplexOperator(Matrix m);

  static ComplexOperator identity(Eigen::Index dim);
  static ComplexOperator zero(Eigen::Index dim);

  Eigen::Index dim() const { return mat_.rows(); }
  const Matrix& matrix() const { return mat_; }

  ComplexOperator adjoint() const { return ComplexOperator(mat_.adjoint()); }

  friend ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b);
  friend ComplexOperator operator*(Complex s, const ComplexOperator& a);

 private:
  Matrix mat_;
};

// Antilinear operator v -> matrix_part * conj(v). The conjugation is kept
// explicit in the type; these are never collapsed to plain matrices.
struct AntilinearOperator {
  ComplexOperator matrix_part;

  explicit AntilinearOperator(ComplexOperator m) : matrix_part(std::move(m)) {}

  static AntilinearOperator conjugation(Eigen::Index dim) {
    return AntilinearOperator(ComplexOperator::identity(dim));
  }

  Eigen::Index dim() const { return matrix_part.dim(); }

  Vector apply(const Vector& v) const;

  // (M1 . K)(M2 . K) = (M1 conj(M2)), a linear operator.
  ComplexOperator compose(const AntilinearOperator& other) const;
  ComplexOperator squared() const { return compose(*this); }

  // ||M conj(U) - U M||: zero iff the antilinear operator commutes with U.
  double commutation_defect(const ComplexOperator& u) const;

  // U (M . K) U^dag for unitary U has matrix part U M U^T.
  AntilinearOperator conjugated_by(const ComplexOperator& u) const;
};

struct ToleranceConfig {
  double abs_tol = 1e-10;
  double rel_tol = 1e-10;
  // Expected residual scaling power in the grid spacing h.
  double refinement_exponent = 1.0;

  void validate() const {
    if (abs_tol < 0.0 || rel_tol < 0.0) throw std::invalid_argument("tolerances must be nonnegative");
  }
};

// AB - BA.
ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b);
// AB + BA.
ComplexOperator anticommutator(const ComplexOperator& a, const ComplexOperator& b);

// Largest singular value.
double operator_norm(const ComplexOperator& a);
double operator_norm(const Matrix& a);

// exp(scale * A), scaling-and-squaring with a fast path for diagonal input.
ComplexOperator matrix_exponential(const ComplexOperator& a, Complex scale);

}  // namespace quadspec

#include "quadspec/opcore.hpp"

#include <Eigen/SVD>
#include <unsupported/Eigen/MatrixFunctions>

namespace quadspec {

namespace {

void require_square_finite(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("operator matrix must be square");
  if (m.rows() == 0) throw std::invalid_argument("operator dimension must be positive");
  if (!m.allFinite()) throw NumericalError("operator has non-finite entries");
}

void require_same_dim(const ComplexOperator& a, const ComplexOperator& b) {
  if (a.dim() != b.dim()) throw std::invalid_argument("operator dimension mismatch");
}

}  // namespace

ComplexOperator::ComplexOperator(Matrix m) : mat_(std::move(m)) { require_square_finite(mat_); }

ComplexOperator ComplexOperator::identity(Eigen::Index dim) {
  return ComplexOperator(Matrix::Identity(dim, dim));
}

ComplexOperator ComplexOperator::zero(Eigen::Index dim) {
  return ComplexOperator(Matrix::Zero(dim, dim));
}

ComplexOperator operator+(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b);
  return ComplexOperator(a.mat_ + b.mat_);
}

ComplexOperator operator-(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b);
  return ComplexOperator(a.mat_ - b.mat_);
}

ComplexOperator operator*(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b);
  return ComplexOperator(a.mat_ * b.mat_);
}

ComplexOperator operator*(Complex s, const ComplexOperator& a) {
  return ComplexOperator(s * a.mat_);
}

Vector AntilinearOperator::apply(const Vector& v) const {
  if (v.size() != dim()) throw std::invalid_argument("vector dimension mismatch");
  return matrix_part.matrix() * v.conjugate();
}

ComplexOperator AntilinearOperator::compose(const AntilinearOperator& other) const {
  if (dim() != other.dim()) throw std::invalid_argument("operator dimension mismatch");
  return ComplexOperator(matrix_part.matrix() * other.matrix_part.matrix().conjugate());
}

double AntilinearOperator::commutation_defect(const ComplexOperator& u) const {
  if (dim() != u.dim()) throw std::invalid_argument("operator dimension mismatch");
  return operator_norm(Matrix(matrix_part.matrix() * u.matrix().conjugate() -
                              u.matrix() * matrix_part.matrix()));
}

AntilinearOperator AntilinearOperator::conjugated_by(const ComplexOperator& u) const {
  if (dim() != u.dim()) throw std::invalid_argument("operator dimension mismatch");
  return AntilinearOperator(
      ComplexOperator(u.matrix() * matrix_part.matrix() * u.matrix().transpose()));
}

ComplexOperator commutator(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b);
  return ComplexOperator(a.matrix() * b.matrix() - b.matrix() * a.matrix());
}

ComplexOperator anticommutator(const ComplexOperator& a, const ComplexOperator& b) {
  require_same_dim(a, b);
  return ComplexOperator(a.matrix() * b.matrix() + b.matrix() * a.matrix());
}

double operator_norm(const Matrix& a) {
  if (a.size() == 0) return 0.0;
  if (a.rows() <= 16 && a.cols() <= 16) {
    Eigen::JacobiSVD<Matrix> svd(a);
    return svd.singularValues()(0);
  }
  Eigen::BDCSVD<Matrix> svd(a);
  return svd.singularValues()(0);
}

double operator_norm(const ComplexOperator& a) { return operator_norm(a.matrix()); }

ComplexOperator matrix_exponential(const ComplexOperator& a, Complex scale) {
  const Matrix& m = a.matrix();
  if (m.isDiagonal(0.0)) {
    Matrix r = Matrix::Zero(m.rows(), m.cols());
    for (Eigen::Index i = 0; i < m.rows(); ++i) r(i, i) = std::exp(scale * m(i, i));
    if (!r.allFinite()) throw NumericalError("matrix exponential overflow");
    return ComplexOperator(std::move(r));
  }
  Matrix scaled = scale * m;
  Matrix r = scaled.exp();
  if (!r.allFinite()) throw NumericalError("matrix exponential overflow");
  return ComplexOperator(std::move(r));
}

}  // namespace quadspec

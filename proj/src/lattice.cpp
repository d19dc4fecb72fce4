#include "quadspec/lattice.hpp"

#include <cmath>
#include <numbers>

namespace quadspec {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

Scheme scheme_from_string(const std::string& s) {
  if (s == "spectral") return Scheme::spectral;
  if (s == "central" || s == "central-difference") return Scheme::central;
  throw std::invalid_argument("unknown derivative scheme: " + s);
}

std::string to_string(Scheme s) {
  return s == Scheme::spectral ? "spectral" : "central";
}

Grid Grid::periodic(int size) {
  if (size < 4) throw std::invalid_argument("grid size must be at least 4");
  Grid g;
  g.size = size;
  g.h = kTwoPi / size;
  g.thetas = RealVector::LinSpaced(size, 0.0, kTwoPi * (size - 1) / size);
  return g;
}

Eigen::MatrixXd derivative_matrix(const Grid& g, Scheme scheme) {
  const int m = g.size;
  Eigen::MatrixXd d = Eigen::MatrixXd::Zero(m, m);
  if (scheme == Scheme::central) {
    for (int j = 0; j < m; ++j) {
      d(j, (j + 1) % m) = 1.0 / (2.0 * g.h);
      d(j, (j - 1 + m) % m) = -1.0 / (2.0 * g.h);
    }
    return d;
  }
  // Trigonometric differentiation matrix; antisymmetric circulant.
  for (int j = 0; j < m; ++j) {
    for (int l = 0; l < m; ++l) {
      if (j == l) continue;
      const int k = j - l;
      const double sign = (k % 2 == 0) ? 1.0 : -1.0;
      if (m % 2 == 0) {
        d(j, l) = 0.5 * sign / std::tan(0.5 * k * g.h);
      } else {
        d(j, l) = 0.5 * sign / std::sin(0.5 * k * g.h);
      }
    }
  }
  return d;
}

Eigen::MatrixXd band_projector(const Grid& g, int kmax) {
  const int m = g.size;
  if (kmax < 0 || 2 * kmax + 1 > m) throw std::invalid_argument("band cutoff out of range");
  Eigen::MatrixXd p(m, m);
  for (int a = 0; a < m; ++a) {
    for (int b = 0; b < m; ++b) {
      const double x = g.thetas[a] - g.thetas[b];
      // Dirichlet kernel sum_{|k|<=kmax} e^{ikx} / m
      double v = 1.0;
      for (int k = 1; k <= kmax; ++k) v += 2.0 * std::cos(k * x);
      p(a, b) = v / m;
    }
  }
  return p;
}

Matrix lift_site(const Matrix& site_op) {
  const Eigen::Index m = site_op.rows();
  Matrix r = Matrix::Zero(2 * m, 2 * m);
  for (Eigen::Index a = 0; a < m; ++a)
    for (Eigen::Index b = 0; b < m; ++b) {
      r(2 * a, 2 * b) = site_op(a, b);
      r(2 * a + 1, 2 * b + 1) = site_op(a, b);
    }
  return r;
}

Matrix lift_spin(int grid_size, const Eigen::Matrix2cd& spin_op) {
  Matrix r = Matrix::Zero(2 * grid_size, 2 * grid_size);
  for (int j = 0; j < grid_size; ++j) r.block<2, 2>(2 * j, 2 * j) = spin_op;
  return r;
}

Matrix field_operator(const RealVector& field) {
  const Eigen::Index m = field.size();
  Matrix r = Matrix::Zero(2 * m, 2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    r(2 * j, 2 * j) = field[j];
    r(2 * j + 1, 2 * j + 1) = field[j];
  }
  return r;
}

RealVector fejer_state(const Grid& g, int center, int order) {
  if (order < 1 || 2 * order + 1 > g.size)
    throw std::invalid_argument("Fejer order out of range for grid");
  RealVector w(g.size);
  const double c = g.thetas[((center % g.size) + g.size) % g.size];
  for (int j = 0; j < g.size; ++j) {
    const double x = g.thetas[j] - c;
    double v = 1.0;
    for (int k = 1; k <= order; ++k) v += 2.0 * (1.0 - double(k) / (order + 1)) * std::cos(k * x);
    w[j] = v;
  }
  w /= w.norm();
  return w;
}

Eigen::Matrix2cd probe_block(const Matrix& op, const RealVector& site_state) {
  const Eigen::Index m = site_state.size();
  if (op.rows() != 2 * m) throw std::invalid_argument("probe state does not match operator");
  Vector w0 = Vector::Zero(2 * m);
  Vector w1 = Vector::Zero(2 * m);
  for (Eigen::Index j = 0; j < m; ++j) {
    w0[2 * j] = site_state[j];
    w1[2 * j + 1] = site_state[j];
  }
  Vector a0 = op * w0;
  Vector a1 = op * w1;
  Eigen::Matrix2cd b;
  b(0, 0) = w0.dot(a0);
  b(0, 1) = w0.dot(a1);
  b(1, 0) = w1.dot(a0);
  b(1, 1) = w1.dot(a1);
  return b;
}

double probe_witness(const Matrix& op, const Grid& g, int order) {
  double best = 0.0;
  for (int c = 0; c < g.size; ++c) {
    const Eigen::Matrix2cd b = probe_block(op, fejer_state(g, c, order));
    best = std::max(best, b.jacobiSvd().singularValues()(0));
  }
  return best;
}

Matrix band_compress(const Matrix& op, const Grid& g, int kmax) {
  Matrix p = lift_site(band_projector(g, kmax).cast<Complex>());
  return p * op * p;
}

ProbeField make_probe(const Grid& g, const std::string& name) {
  ProbeField p;
  p.name = name;
  p.values.resize(g.size);
  p.derivative.resize(g.size);
  int k = 0;
  bool is_cos = false;
  if (name == "const") {
    p.values.setOnes();
    p.derivative.setZero();
    return p;
  } else if (name == "cos") {
    k = 1; is_cos = true;
  } else if (name == "sin") {
    k = 1;
  } else if (name == "cos2") {
    k = 2; is_cos = true;
  } else if (name == "sin2") {
    k = 2;
  } else if (name == "cos3") {
    k = 3; is_cos = true;
  } else if (name == "sin3") {
    k = 3;
  } else {
    throw std::invalid_argument("unknown probe function: " + name);
  }
  for (int j = 0; j < g.size; ++j) {
    const double x = k * g.thetas[j];
    if (is_cos) {
      p.values[j] = std::cos(x);
      p.derivative[j] = -k * std::sin(x);
    } else {
      p.values[j] = std::sin(x);
      p.derivative[j] = k * std::cos(x);
    }
  }
  return p;
}

}  // namespace quadspec

// Scratch: measure the Taylor coefficient of [f, g_t] at third order and the
// rim-artifact structure. Not part of the test suite.
#include <cstdio>

#include "quadspec/foliation.hpp"

using namespace quadspec;

int main() {
  const int m = 64;
  const double mass = 1.0;
  FoliationData fol;
  fol.grid_size = m;
  fol.mass = mass;
  fol.scheme = Scheme::spectral;
  fol.g_thth = FieldSpec::constant(1.0);

  const Grid g = fol.grid();
  const CliffordRep rep = clifford_1plus1();
  const ProbeField fp = make_probe(g, "sin");
  const ProbeField gp = make_probe(g, "sin");
  const Matrix f_op = field_operator(fp.values);
  const Matrix g_op = field_operator(gp.values);

  // Expected c3 = (4/3!) m N^3 g^{tt} f' g' E with E = i sigma2.
  Eigen::Matrix2cd E2;
  E2 << 0, 1, -1, 0;  // i*sigma2

  // finite-difference third derivative of the commutator in t (5-point, h=dt)
  const double dt = 0.02;
  auto comm_at = [&](double t) -> Matrix {
    int steps = std::max(16, int(std::ceil(std::abs(t) * 4000)));
    Matrix u = evolve(fol, 0.0, t, steps).matrix();
    Matrix gt = u * g_op * u.adjoint();
    return f_op * gt - gt * f_op;
  };
  Matrix cm2 = comm_at(-2 * dt), cm1 = comm_at(-dt), cp1 = comm_at(dt), cp2 = comm_at(2 * dt);
  // f'''(0) ~ (-f(-2h) + 2f(-h) - 2f(h) + f(2h)) / (2h^3), Taylor c3 = f'''/6
  Matrix third = (-cm2 + 2.0 * cm1 - 2.0 * cp1 + cp2) / (2.0 * dt * dt * dt);
  Matrix c3 = third / 6.0;

  // Predicted (2/3) m f' g' E as a multiplication-type operator
  RealVector fg = fp.derivative.cwiseProduct(gp.derivative);
  Matrix pred = Matrix::Zero(2 * m, 2 * m);
  for (int j = 0; j < m; ++j) pred.block<2, 2>(2 * j, 2 * j) = (2.0 / 3.0) * mass * fg[j] * E2;

  printf("||c3_fd|| (full)    = %.6e\n", operator_norm(c3));
  printf("||pred|| (full)     = %.6e\n", operator_norm(pred));
  printf("||diff|| (full)     = %.6e\n", operator_norm(Matrix(c3 - pred)));
  const int K = m / 4;
  printf("||diff|| (banded)   = %.6e\n", operator_norm(band_compress(Matrix(c3 - pred), g, K)));
  printf("||c3||  (banded)    = %.6e\n", operator_norm(band_compress(c3, g, K)));

  // sandwich extraction at theta=0 with Fejer order 3
  const RealVector w = fejer_state(g, 0, 3);
  Eigen::Matrix2cd b = probe_block(c3, w);
  const double strip = 0.5 * (E2.adjoint() * b).trace().real();
  double fg_sm = w.cwiseProduct(fg.cwiseProduct(w)).sum();
  printf("strip_E(c3)(0)      = %.6e\n", strip);
  printf("(2/3) m <f'g'>      = %.6e\n", (2.0 / 3.0) * mass * fg_sm);
  printf("ratio               = %.6f\n", strip / ((2.0 / 3.0) * mass * fg_sm));

  // raw commutator magnitudes: full vs banded vs witness
  Matrix c = comm_at(0.08);
  printf("t=0.08: ||[f,gt]|| full = %.4e banded = %.4e witness = %.4e\n", operator_norm(c),
         operator_norm(band_compress(c, g, K)), probe_witness(c, g, 3));
  return 0;
}

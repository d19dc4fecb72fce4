#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "quadspec/lattice.hpp"

using namespace quadspec;

TEST_CASE("spectral derivative is exact on resolved modes") {
  const Grid g = Grid::periodic(16);
  const Eigen::MatrixXd d = derivative_matrix(g, Scheme::spectral);
  CHECK((d + d.transpose()).norm() < 1e-12);

  for (int k = 0; k <= g.size / 2 - 1; ++k) {
    RealVector ck(g.size), msk(g.size);
    for (int j = 0; j < g.size; ++j) {
      ck[j] = std::cos(k * g.thetas[j]);
      msk[j] = -k * std::sin(k * g.thetas[j]);
    }
    CHECK((RealVector(d * ck) - msk).norm() < 1e-10);
  }
}

TEST_CASE("central derivative is second order") {
  auto err = [](int m) {
    const Grid g = Grid::periodic(m);
    const Eigen::MatrixXd d = derivative_matrix(g, Scheme::central);
    RealVector f(g.size), fp(g.size);
    for (int j = 0; j < g.size; ++j) {
      f[j] = std::sin(2 * g.thetas[j]);
      fp[j] = 2 * std::cos(2 * g.thetas[j]);
    }
    return (RealVector(d * f) - fp).lpNorm<Eigen::Infinity>();
  };
  const double r = err(32) / err(64);
  CHECK(r > 3.5);
  CHECK(r < 4.5);
}

TEST_CASE("band projector") {
  const Grid g = Grid::periodic(16);
  const Eigen::MatrixXd p = band_projector(g, 4);
  CHECK((p * p - p).norm() < 1e-12);
  CHECK((p - p.transpose()).norm() < 1e-13);

  RealVector low(g.size), high(g.size);
  for (int j = 0; j < g.size; ++j) {
    low[j] = std::cos(3 * g.thetas[j]);
    high[j] = std::cos(6 * g.thetas[j]);
  }
  CHECK((RealVector(p * low) - low).norm() < 1e-12);
  CHECK(RealVector(p * high).norm() < 1e-12);
}

TEST_CASE("fejer states are normalized and band limited") {
  const Grid g = Grid::periodic(32);
  const RealVector w = fejer_state(g, 5, 3);
  CHECK(w.norm() == doctest::Approx(1.0).epsilon(1e-13));
  // No component above the order.
  for (int k = 4; k <= g.size / 2 - 1; ++k) {
    Complex acc(0, 0);
    for (int j = 0; j < g.size; ++j) acc += w[j] * std::polar(1.0, -k * g.thetas[j]);
    CHECK(std::abs(acc) < 1e-12);
  }
  // Peaked at its center.
  int argmax = 0;
  w.cwiseAbs().maxCoeff(&argmax);
  CHECK(argmax == 5);
}

TEST_CASE("probe blocks extract spin structure of smooth fields") {
  const Grid g = Grid::periodic(32);
  RealVector field(g.size);
  for (int j = 0; j < g.size; ++j) field[j] = 2.0 + std::cos(g.thetas[j]);

  Eigen::Matrix2cd s3;
  s3 << 1, 0, 0, -1;
  const Matrix op = field_operator(field) * lift_spin(g.size, s3);

  const RealVector w = fejer_state(g, 0, 4);
  const Eigen::Matrix2cd b = probe_block(op, w);
  const double smeared = w.cwiseProduct(field.cwiseProduct(w)).sum();
  CHECK(std::abs(b(0, 0) - smeared) < 1e-12);
  CHECK(std::abs(b(1, 1) + smeared) < 1e-12);
  CHECK(std::abs(b(0, 1)) < 1e-14);

  CHECK(probe_witness(Matrix::Zero(2 * g.size, 2 * g.size), g, 4) == 0.0);
  CHECK(probe_witness(op, g, 4) <= field.maxCoeff() + 1e-12);
  CHECK(probe_witness(op, g, 4) > 1.0);
}

TEST_CASE("band compression kills band-edge content") {
  const Grid g = Grid::periodic(16);
  RealVector high(g.size);
  for (int j = 0; j < g.size; ++j) high[j] = std::cos(7 * g.thetas[j]);
  const Matrix op = field_operator(high);
  CHECK(operator_norm(band_compress(op, g, 2)) < 1e-12);
}

TEST_CASE("probe fields carry exact derivatives") {
  const Grid g = Grid::periodic(64);
  const Eigen::MatrixXd d = derivative_matrix(g, Scheme::spectral);
  for (const char* name : {"cos", "sin", "cos2", "sin2", "cos3", "sin3"}) {
    const ProbeField p = make_probe(g, name);
    CHECK((RealVector(d * p.values) - p.derivative).lpNorm<Eigen::Infinity>() < 1e-10);
  }
  const ProbeField c = make_probe(g, "const");
  CHECK(c.derivative.norm() == 0.0);
  CHECK_THROWS_AS(make_probe(g, "tan"), std::invalid_argument);
}

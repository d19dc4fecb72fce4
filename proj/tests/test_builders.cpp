#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "quadspec/builders.hpp"

using namespace quadspec;

namespace {

ExampleSpec small(const std::string& name, int grid) {
  ExampleSpec s;
  s.name = name;
  s.grid_size = grid;
  s.mass = 1.0;
  s.slice_times = {-0.2, 0.0, 0.2};
  s.steps_per_half_unit = 80;
  s.generator_modes = 2;
  return s;
}

}  // namespace

TEST_CASE("de sitter metric values") {
  auto spec = small("desitter", 16);
  auto built = build_desitter(spec);
  CHECK(built.foliation.metric_at(0.0)[0] == doctest::Approx(1.0).epsilon(1e-15));
  const double c1 = std::cosh(1.0);
  CHECK(built.foliation.metric_at(1.0)[0] == doctest::Approx(c1 * c1).epsilon(1e-14));
  CHECK(built.quadruple.slices.size() == 3);
  CHECK(built.quadruple.hilbert_dim == 32);
}

TEST_CASE("flat cylinder group property and radius scaling") {
  auto spec = small("flat_cylinder", 16);
  spec.radius = 1.0;
  auto built = build_flat_cylinder(spec);

  // U(0,t) U(t,0) = I: slice unitaries are exact exponentials of one H.
  const auto& gr = built.quadruple.groupoid;
  for (size_t i = 0; i < gr.times.size(); ++i) {
    const Matrix& u = gr.slice_unitaries[i].matrix();
    CHECK(operator_norm(Matrix(u * u.adjoint() - Matrix::Identity(32, 32))) < 1e-10);
  }

  // R = 2 halves each derivative-branch eigenvalue.
  auto spec2 = small("flat_cylinder", 16);
  spec2.mass = 0.0;
  auto b1 = build_flat_cylinder(spec2);
  spec2.radius = 2.0;
  auto b2 = build_flat_cylinder(spec2);
  const CliffordRep rep = clifford_1plus1();
  Eigen::SelfAdjointEigenSolver<Matrix> e1(build_hamiltonian(b1.foliation, 0.0, rep).matrix());
  Eigen::SelfAdjointEigenSolver<Matrix> e2(build_hamiltonian(b2.foliation, 0.0, rep).matrix());
  CHECK((e1.eigenvalues() - 2.0 * e2.eigenvalues()).lpNorm<Eigen::Infinity>() < 1e-9);
}

TEST_CASE("de sitter with time range {0} equals flat cylinder R=1 entrywise") {
  ExampleSpec sd = small("desitter", 16);
  sd.slice_times = {0.0};
  ExampleSpec sf = small("flat_cylinder", 16);
  sf.slice_times = {0.0};
  sf.radius = 1.0;

  auto ds = build_desitter(sd);
  auto fc = build_flat_cylinder(sf);
  const TimeSlice& a = ds.quadruple.slices.at(0.0);
  const TimeSlice& b = fc.quadruple.slices.at(0.0);
  CHECK(operator_norm(a.E - b.E) == 0.0);
  CHECK(operator_norm(a.gamma - b.gamma) == 0.0);
  REQUIRE(a.algebra_generators.size() == b.algebra_generators.size());
  for (size_t i = 0; i < a.algebra_generators.size(); ++i)
    CHECK(operator_norm(a.algebra_generators[i] - b.algebra_generators[i]) == 0.0);
  CHECK(operator_norm(ds.quadruple.groupoid.generators[0] - fc.quadruple.groupoid.generators[0]) <
        1e-14);
}

TEST_CASE("validate_all passes on both builtins at small grid") {
  for (const char* name : {"desitter", "flat_cylinder"}) {
    auto built = build_example(small(name, 32));
    ValidateConfig cfg;
    cfg.cycle = default_volume_cycle(built.foliation.grid());
    auto reports = validate_all(built.quadruple, cfg);
    for (const auto& r : reports) {
      INFO(name, " ", r.name, " residual=", r.residual, " tol=", r.tol);
      CHECK((r.pass || r.advisory));
    }
  }
}

TEST_CASE("finite quadruple search") {
  FiniteSearchConfig cfg;
  cfg.hilbert_dim = 2;
  cfg.spacetime_dim = 2;
  cfg.attempts = 16;
  cfg.seed = 7;
  cfg.tolerance = 1e-10;

  auto found = finite_quadruple_search(cfg);
  // Trivial-algebra attempts pass the algebraic axioms identically.
  CHECK(found.size() >= 1);

  // Determinism: same seed, same results.
  auto again = finite_quadruple_search(cfg);
  REQUIRE(found.size() == again.size());
  for (size_t i = 0; i < found.size(); ++i) {
    CHECK(operator_norm(found[i].groupoid.generators[0] - again[i].groupoid.generators[0]) == 0.0);
  }

  // Every returned quadruple re-passes validate_all when re-checked.
  for (const auto& q : found) {
    ValidateConfig vcfg;
    for (const char* check : {"charge_conjugation", "time_vector", "volume_element", "first_order",
                              "geometry_of_space", "evolution"})
      vcfg.tol_overrides[check] = cfg.tolerance;
    CHECK(all_passed(validate_all(q, vcfg)));
  }

  // tolerance = 0: only exact algebraic solutions.
  FiniteSearchConfig exact = cfg;
  exact.tolerance = 0.0;
  for (const auto& q : finite_quadruple_search(exact)) {
    ValidateConfig vcfg;
    for (const char* check : {"charge_conjugation", "time_vector", "volume_element", "first_order",
                              "geometry_of_space", "evolution"})
      vcfg.tol_overrides[check] = 0.0;
    CHECK(all_passed(validate_all(q, vcfg)));
  }

  FiniteSearchConfig bad = cfg;
  bad.hilbert_dim = 3;
  CHECK_THROWS_AS(finite_quadruple_search(bad), std::invalid_argument);
  bad = cfg;
  bad.attempts = 0;
  CHECK_THROWS_AS(finite_quadruple_search(bad), std::invalid_argument);
}

TEST_CASE("example spec validation") {
  ExampleSpec s = small("desitter", 16);
  s.grid_size = 4;
  CHECK_THROWS_AS(s.validate(), std::invalid_argument);
  s = small("nope", 16);
  CHECK_THROWS_AS(build_example(s), std::invalid_argument);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "quadspec/builders.hpp"
#include "quadspec/quadruple.hpp"

using namespace quadspec;

namespace {

ExampleSpec small_spec(const std::string& name, int grid, double mass, Scheme scheme) {
  ExampleSpec s;
  s.name = name;
  s.grid_size = grid;
  s.mass = mass;
  s.scheme = scheme;
  s.slice_times = {0.0, 0.2};
  s.steps_per_half_unit = 100;
  return s;
}

Eigen::Matrix2cd pauli(int i) {
  Eigen::Matrix2cd s;
  const Complex I(0, 1);
  switch (i) {
    case 1: s << 0, 1, 1, 0; break;
    case 2: s << 0, -I, I, 0; break;
    case 3: s << 1, 0, 0, -1; break;
    default: s.setIdentity(); break;
  }
  return s;
}

// Plain single-slice quadruple on a small lattice with anchor operators.
SpectralQuadruple anchor_quadruple(const FoliationData& fol, int modes = 2) {
  const Grid grid = fol.grid();
  const CliffordRep rep = clifford_1plus1();
  SpectralQuadruple q{.hilbert_dim = 2 * grid.size,
                      .spacetime_dim = 2,
                      .slices = {},
                      .C = AntilinearOperator::conjugation(2 * grid.size),
                      .groupoid = {},
                      .grid = grid,
                      .scheme = fol.scheme,
                      .mass = fol.mass};
  std::vector<ComplexOperator> gens;
  std::vector<std::string> names;
  for (const char* n : {"cos", "sin", "cos2", "sin2"}) {
    if (int(gens.size()) >= 2 * modes) break;
    gens.push_back(ComplexOperator(field_operator(make_probe(grid, n).values)));
    names.push_back(n);
  }
  const ComplexOperator h = build_hamiltonian(fol, 0.0, rep);
  q.groupoid.kind = GroupoidKind::one_parameter;
  q.groupoid.times = {0.0};
  q.groupoid.generators.push_back(ComplexOperator(Matrix(Complex(0, 1) * h.matrix())));
  q.groupoid.slice_unitaries.push_back(ComplexOperator::identity(2 * grid.size));
  q.slices.emplace(0.0, TimeSlice{0.0, gens, names,
                                  ComplexOperator(lift_spin(grid.size, rep.time_vector())),
                                  ComplexOperator(lift_spin(grid.size, rep.volume_element()))});
  return q;
}

FoliationData flat_fol(int grid, double radius, double mass, Scheme scheme) {
  FoliationData f;
  f.grid_size = grid;
  f.mass = mass;
  f.scheme = scheme;
  f.g_thth = FieldSpec::constant(radius * radius);
  return f;
}

}  // namespace

TEST_CASE("s_exponent matches the product formula") {
  CHECK(s_exponent(2) == 0);  // C^2 = +1
  CHECK(s_exponent(5) == 3);  // C^2 = -1
  CHECK(s_exponent(1) == 0);
  CHECK(s_exponent(3) == 0);
  CHECK(s_exponent(4) == 0);
  for (int n = 1; n <= 12; ++n) {
    long long brute = 1;
    for (int k = 1; k <= 4; ++k) brute *= (n - k);
    CHECK(s_exponent(n) == brute / 8);
  }
  CHECK_THROWS_AS(s_exponent(0), std::invalid_argument);
}

TEST_CASE("charge conjugation check") {
  auto fol = flat_fol(16, 1.0, 1.0, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  ValidateConfig cfg;

  auto rep = check_charge_conjugation(q, cfg);
  CHECK(rep.pass);
  CHECK(rep.residual < 1e-12);

  // C scaled by 2: residual 3 on the square check.
  auto broken = q;
  broken.C = AntilinearOperator(Complex(2, 0) * ComplexOperator::identity(q.hilbert_dim));
  auto bad = check_charge_conjugation(broken, cfg);
  CHECK_FALSE(bad.pass);
  CHECK(bad.residual == doctest::Approx(3.0).epsilon(1e-12));
}

TEST_CASE("time vector check") {
  auto fol = flat_fol(12, 1.0, 0.5, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  ValidateConfig cfg;

  auto good = check_time_vector(q.slices.at(0.0), cfg);
  CHECK(good.pass);
  CHECK(good.residual == 0.0);

  TimeSlice bad = q.slices.at(0.0);
  bad.E = ComplexOperator(lift_spin(12, pauli(1)));  // sigma1: squares to +1
  auto r = check_time_vector(bad, cfg);
  CHECK_FALSE(r.pass);
  CHECK(r.residual == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("volume element check") {
  auto fol = flat_fol(12, 1.0, 0.5, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  ValidateConfig cfg;

  auto good = check_volume_element(q.slices.at(0.0), 2, cfg);
  CHECK(good.pass);
  CHECK(good.residual == 0.0);

  // sigma3 also anticommutes with E = i sigma2 and squares to 1.
  TimeSlice s3 = q.slices.at(0.0);
  s3.gamma = ComplexOperator(lift_spin(12, pauli(3)));
  CHECK(check_volume_element(s3, 2, cfg).pass);

  // gamma = I fails anticommutation with residual 2||E||.
  TimeSlice bad = q.slices.at(0.0);
  bad.gamma = ComplexOperator::identity(q.hilbert_dim);
  auto r = check_volume_element(bad, 2, cfg);
  CHECK_FALSE(r.pass);
  CHECK(r.residual == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("first order condition") {
  ValidateConfig cfg;

  // f = g = I commutes with everything.
  auto fol = flat_fol(16, 1.0, 1.0, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  const auto& iH = q.groupoid.generators.front();
  auto id = ComplexOperator::identity(q.hilbert_dim);
  auto trivial = check_first_order(q, id, id, iH, cfg);
  CHECK(trivial.residual == 0.0);

  // Spectral scheme: banded residual is tiny and does not grow on refinement.
  auto residual_at = [&](int grid, Scheme scheme) {
    auto f = flat_fol(grid, 1.0, 1.0, scheme);
    auto qq = anchor_quadruple(f);
    const auto& slice = qq.slices.at(0.0);
    return check_first_order(qq, slice.algebra_generators[0], slice.algebra_generators[1],
                             qq.groupoid.generators.front(), cfg)
        .residual;
  };
  const double r32 = residual_at(32, Scheme::spectral);
  const double r64 = residual_at(64, Scheme::spectral);
  CHECK(r32 < 1e-10);
  CHECK(r64 <= std::max(r32, 1e-11));

  // Central differences: genuine O(h), halves under grid doubling.
  const double c64 = residual_at(64, Scheme::central);
  const double c128 = residual_at(128, Scheme::central);
  const double ratio = c64 / c128;
  CHECK(c64 > 1e-6);
  CHECK(ratio > 1.7);
  CHECK(ratio < 2.3);
}

TEST_CASE("hochschild volume element") {
  ValidateConfig cfg;
  auto fol = flat_fol(32, 1.0, 1.0, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  const auto& slice = q.slices.at(0.0);
  const auto& iH = q.groupoid.generators.front();
  const Grid grid = fol.grid();

  auto cycle = default_volume_cycle(grid);
  auto [cand, rep] = hochschild_volume(q, slice, cycle, iH, cfg);
  CHECK(rep.pass);
  CHECK(rep.residual < 1e-10);
  // Candidate is 2/R * gamma on the resolved band; positive multiple.
  double scale = 0.0;
  for (const auto& [k, v] : rep.meta)
    if (k == "scale_vs_gamma") scale = std::stod(v);
  CHECK(scale == doctest::Approx(2.0).epsilon(1e-6));

  // Degenerate cycle: constant entries commute with everything.
  HochschildCycle degenerate;
  degenerate.terms.push_back(
      {{ComplexOperator::identity(q.hilbert_dim), ComplexOperator::identity(q.hilbert_dim)}, 1.0});
  CHECK_THROWS_AS(hochschild_volume(q, slice, degenerate, iH, cfg), std::invalid_argument);

  // Scaled cycle: sqrt(a/2) on both entries rescales the candidate to gamma
  // itself; the normalized residual is unchanged.
  HochschildCycle scaled = cycle;
  const double sc = std::sqrt(0.5);
  for (auto& term : scaled.terms)
    for (auto& e : term.entries) e = Complex(sc, 0) * e;
  auto [cand2, rep2] = hochschild_volume(q, slice, scaled, iH, cfg);
  CHECK(rep2.pass);
  CHECK(rep2.residual < 1e-10);
}

TEST_CASE("spatial dirac operator") {
  ValidateConfig cfg;
  const int m = 32;

  // Pure mass Hamiltonian commutes with E: D = 0.
  auto fol_mass = flat_fol(m, 1.0, 1.3, Scheme::spectral);
  auto q = anchor_quadruple(fol_mass);
  const auto& slice = q.slices.at(0.0);
  const Matrix pure_mass = Complex(0, 1) * (-1.3) * lift_spin(m, pauli(2));
  auto d0 = spatial_dirac(slice, ComplexOperator(pure_mass));
  CHECK(operator_norm(d0) < 1e-12);

  // Flat cylinder m=0: D = 2 sigma3 (-i d/dth), spectrum {+-2k}.
  auto fol = flat_fol(m, 1.0, 0.0, Scheme::spectral);
  auto q0 = anchor_quadruple(fol);
  auto d = spatial_dirac(q0.slices.at(0.0), q0.groupoid.generators.front());
  Eigen::SelfAdjointEigenSolver<Matrix> es(d.matrix());
  std::vector<double> eigs(es.eigenvalues().data(), es.eigenvalues().data() + 2 * m);
  std::sort(eigs.begin(), eigs.end());
  std::vector<double> want;
  for (int j = 0; j < m; ++j) {
    int keff = j <= m / 2 ? j : j - m;
    if (j == m / 2) keff = 0;
    want.push_back(2.0 * keff);
    want.push_back(-2.0 * keff);
  }
  std::sort(want.begin(), want.end());
  for (size_t i = 0; i < want.size(); ++i) CHECK(std::abs(eigs[i] - want[i]) < 1e-9);

  // Anticommutation with gamma (Remark: D gamma = (-1)^n gamma D for n = 1).
  const Matrix& gm = q0.slices.at(0.0).gamma.matrix();
  CHECK(operator_norm(Matrix(d.matrix() * gm + gm * d.matrix())) < 1e-10);

  // Guarded precondition.
  TimeSlice bad = q0.slices.at(0.0);
  bad.E = ComplexOperator::identity(2 * m);
  CHECK_THROWS_AS(spatial_dirac(bad, q0.groupoid.generators.front()), std::invalid_argument);
}

TEST_CASE("geometry of space check") {
  ValidateConfig cfg;
  auto fol = flat_fol(32, 1.0, 1.0, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  auto d = spatial_dirac(q.slices.at(0.0), q.groupoid.generators.front());
  auto rep = check_geometry_of_space(q, q.slices.at(0.0), d, cfg);
  CHECK(rep.pass);
  CHECK(rep.residual < 1e-9);

  bool has_df = false, has_proj = false;
  for (const auto& [k, v] : rep.meta) {
    if (k.rfind("norm_[D,", 0) == 0) has_df = true;
    if (k == "norm_P-DP+") has_proj = true;
  }
  CHECK(has_df);
  CHECK(has_proj);
}

TEST_CASE("validate_all passes on a clean anchor quadruple and orders deterministically") {
  auto fol = flat_fol(16, 1.0, 1.0, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  ValidateConfig cfg;
  cfg.cycle = default_volume_cycle(fol.grid());

  auto reports = validate_all(q, cfg);
  CHECK(all_passed(reports));
  auto reports2 = validate_all(q, cfg);
  REQUIRE(reports.size() == reports2.size());
  for (size_t i = 0; i < reports.size(); ++i) {
    CHECK(reports[i].name == reports2[i].name);
    CHECK(reports[i].residual == reports2[i].residual);
  }
  CHECK(reports.front().name == "charge_conjugation");
}

TEST_CASE("symmetric quadruple checks") {
  ValidateConfig cfg;

  // Abelian one-generator group with k = 0: all residuals vanish.
  auto fol = flat_fol(16, 1.0, 0.5, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  q.groupoid.kind = GroupoidKind::lie_symmetric;
  q.groupoid.lie_generators.push_back(ComplexOperator::zero(q.hilbert_dim));
  q.groupoid.lie_generators.push_back(q.groupoid.generators.front());
  q.groupoid.structure_constants.assign(2, Eigen::MatrixXd::Zero(2, 2));
  q.groupoid.compact_indices = {0};
  q.groupoid.evolution_index = 1;
  auto reports = check_symmetric(q, cfg);
  for (const auto& r : reports) {
    INFO(r.name);
    CHECK(r.pass);
    CHECK(r.residual < 1e-10);
  }

  // Rotation generator on the flat cylinder.
  auto q2 = anchor_quadruple(fol);
  q2.groupoid = rotation_symmetric_groupoid(fol);
  auto reports2 = check_symmetric(q2, cfg);
  for (const auto& r : reports2) {
    INFO(r.name, " residual=", r.residual);
    CHECK(r.residual < 1e-10);
  }

  // Designating the compact rotation itself as the evolution raises the flag.
  auto q3 = anchor_quadruple(fol);
  q3.groupoid = rotation_symmetric_groupoid(fol);
  q3.groupoid.lie_generators[1] = q3.groupoid.lie_generators[0];
  auto reports3 = check_symmetric(q3, cfg);
  bool flagged = false;
  for (const auto& r : reports3)
    if (r.name == "symmetric_evolution_noncompact") {
      CHECK(r.advisory);
      flagged = !r.pass;
    }
  CHECK(flagged);

  // Wrong structure constants are rejected.
  auto q4 = anchor_quadruple(fol);
  q4.groupoid = rotation_symmetric_groupoid(fol);
  q4.groupoid.structure_constants.assign(1, Eigen::MatrixXd::Zero(2, 2));
  CHECK_THROWS_AS(check_symmetric(q4, cfg), std::invalid_argument);

  CHECK_THROWS_AS(check_symmetric(anchor_quadruple(fol), cfg), std::invalid_argument);
}

TEST_CASE("transport invariance of residuals") {
  // Validating then transporting equals transporting then validating,
  // within 10x tolerance.
  auto fol = flat_fol(16, 1.0, 1.0, Scheme::spectral);
  auto q = anchor_quadruple(fol);
  ValidateConfig cfg;
  auto before = validate_all(q, cfg);

  // Transport the slice data and register the unitary; the slice generator is
  // frame data of the slice itself and stays put.
  auto u = evolve(fol, 0.0, 0.3, 60);
  SpectralQuadruple moved = q;
  TimeSlice& s = moved.slices.at(0.0);
  s.E = transport(s.E, u);
  s.gamma = transport(s.gamma, u);
  for (auto& g : s.algebra_generators) g = transport(g, u);
  moved.groupoid.slice_unitaries[0] = u;

  auto after = validate_all(moved, cfg);
  REQUIRE(before.size() == after.size());
  for (size_t i = 0; i < before.size(); ++i) {
    INFO(before[i].name);
    CHECK(after[i].residual <= 10.0 * std::max(before[i].residual, before[i].tol));
  }
  CHECK(all_passed(after));
}

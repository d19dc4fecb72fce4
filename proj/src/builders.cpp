#include "quadspec/builders.hpp"

#include <cmath>
#include <random>

namespace quadspec {

namespace {

std::vector<std::string> generator_names(int modes) {
  std::vector<std::string> names;
  for (int k = 1; k <= modes; ++k) {
    names.push_back(k == 1 ? "cos" : "cos" + std::to_string(k));
    names.push_back(k == 1 ? "sin" : "sin" + std::to_string(k));
  }
  return names;
}

}  // namespace

SpectralQuadruple assemble_quadruple(const FoliationData& fol,
                                     const std::vector<double>& slice_times,
                                     int steps_per_half_unit, int generator_modes,
                                     bool exact_exponential_slices) {
  if (slice_times.empty()) throw std::invalid_argument("at least one slice time is required");
  if (steps_per_half_unit < 1) throw std::invalid_argument("steps_per_half_unit must be positive");
  const Grid grid = fol.grid();
  const CliffordRep rep = clifford_1plus1();
  const Eigen::Index dim = 2 * grid.size;

  std::vector<ComplexOperator> anchor_gens;
  std::vector<std::string> names = generator_names(generator_modes);
  for (const auto& n : names)
    anchor_gens.push_back(ComplexOperator(field_operator(make_probe(grid, n).values)));
  const ComplexOperator e0(lift_spin(grid.size, rep.time_vector()));
  const ComplexOperator gamma0(lift_spin(grid.size, rep.volume_element()));

  SpectralQuadruple q{.hilbert_dim = dim,
                      .spacetime_dim = 2,
                      .slices = {},
                      .C = AntilinearOperator::conjugation(dim),
                      .groupoid = {},
                      .grid = grid,
                      .scheme = fol.scheme,
                      .mass = fol.mass};
  q.groupoid.kind = GroupoidKind::one_parameter;

  const ComplexOperator h0 = build_hamiltonian(fol, 0.0, rep);
  for (double t : slice_times) {
    ComplexOperator u = ComplexOperator::identity(dim);
    if (t != 0.0) {
      if (exact_exponential_slices) {
        u = matrix_exponential(h0, Complex(0.0, -t));
      } else {
        const int steps = std::max(1, int(std::lround(std::abs(t) * 2 * steps_per_half_unit)));
        u = evolve(fol, 0.0, t, steps);
      }
    }
    TimeSlice slice{t, {}, names, transport(e0, u), transport(gamma0, u)};
    slice.algebra_generators.reserve(anchor_gens.size());
    for (const auto& a : anchor_gens) slice.algebra_generators.push_back(transport(a, u));

    const ComplexOperator ht = build_hamiltonian(fol, t, rep);
    q.groupoid.times.push_back(t);
    q.groupoid.generators.push_back(ComplexOperator(Matrix(Complex(0, 1) * ht.matrix())));
    q.groupoid.slice_unitaries.push_back(u);
    q.slices.emplace(t, std::move(slice));
  }
  return q;
}

void ExampleSpec::validate() const {
  if (grid_size < 8) throw std::invalid_argument("example grid_size must be at least 8");
  if (mass < 0.0) throw std::invalid_argument("mass must be nonnegative");
  if (radius <= 0.0) throw std::invalid_argument("radius must be positive");
  if (slice_times.empty()) throw std::invalid_argument("at least one slice time is required");
  if (steps_per_half_unit < 1) throw std::invalid_argument("steps_per_half_unit must be positive");
  if (generator_modes < 1 || 2 * generator_modes >= grid_size / 2)
    throw std::invalid_argument("generator_modes out of range for grid");
}

BuiltExample build_desitter(const ExampleSpec& spec) {
  spec.validate();
  FoliationData fol;
  fol.grid_size = spec.grid_size;
  fol.mass = spec.mass;
  fol.scheme = spec.scheme;
  fol.lapse = FieldSpec::constant(1.0);
  fol.shift = FieldSpec::constant(0.0);
  fol.g_thth = FieldSpec::named("desitter");
  return {fol, assemble_quadruple(fol, spec.slice_times, spec.steps_per_half_unit, spec.generator_modes, false)};
}

BuiltExample build_flat_cylinder(const ExampleSpec& spec) {
  spec.validate();
  FoliationData fol;
  fol.grid_size = spec.grid_size;
  fol.mass = spec.mass;
  fol.scheme = spec.scheme;
  fol.lapse = FieldSpec::constant(1.0);
  fol.shift = FieldSpec::constant(0.0);
  fol.g_thth = FieldSpec::constant(spec.radius * spec.radius);
  return {fol, assemble_quadruple(fol, spec.slice_times, spec.steps_per_half_unit, spec.generator_modes, true)};
}

BuiltExample build_example(const ExampleSpec& spec) {
  if (spec.name == "desitter") return build_desitter(spec);
  if (spec.name == "flat_cylinder" || spec.name == "flat") return build_flat_cylinder(spec);
  throw std::invalid_argument("unknown example: " + spec.name);
}

HochschildCycle default_volume_cycle(const Grid& grid) {
  const ProbeField c = make_probe(grid, "cos");
  const ProbeField s = make_probe(grid, "sin");
  HochschildCycle cycle;
  cycle.terms.push_back({{ComplexOperator(field_operator(c.values)),
                          ComplexOperator(field_operator(s.values))},
                         1.0});
  cycle.terms.push_back({{ComplexOperator(field_operator(s.values)),
                          ComplexOperator(field_operator(c.values))},
                         -1.0});
  return cycle;
}

GroupoidSpec rotation_symmetric_groupoid(const FoliationData& fol) {
  const Grid grid = fol.grid();
  const CliffordRep rep = clifford_1plus1();
  GroupoidSpec g;
  g.kind = GroupoidKind::lie_symmetric;
  g.times = {0.0};
  const ComplexOperator h = build_hamiltonian(fol, 0.0, rep);
  g.generators.push_back(ComplexOperator(Matrix(Complex(0, 1) * h.matrix())));
  g.slice_unitaries.push_back(ComplexOperator::identity(2 * grid.size));

  // Abelian pair: lattice rotation d/dth and the Dirac generator.
  const Matrix rot = lift_site(derivative_matrix(grid, fol.scheme).cast<Complex>());
  g.lie_generators.push_back(ComplexOperator(rot));
  g.lie_generators.push_back(g.generators.front());
  g.structure_constants.assign(2, Eigen::MatrixXd::Zero(2, 2));
  g.compact_indices = {0};
  g.evolution_index = 1;
  // Rotations commute with the static cylinder Hamiltonian; closure is exact
  // only when both fields are rotation invariant.
  g.exact_closure = true;
  return g;
}

void FiniteSearchConfig::validate() const {
  if (attempts < 1) throw std::invalid_argument("attempts must be at least 1");
  if (hilbert_dim < 2 || hilbert_dim > 8 || hilbert_dim % 2 != 0)
    throw std::invalid_argument("hilbert_dim must be even and between 2 and 8");
  if (spacetime_dim < 1) throw std::invalid_argument("spacetime_dim must be positive");
  if (tolerance < 0.0) throw std::invalid_argument("tolerance must be nonnegative");
}

std::vector<SpectralQuadruple> finite_quadruple_search(const FiniteSearchConfig& cfg) {
  cfg.validate();
  std::mt19937_64 rng(cfg.seed);
  std::uniform_real_distribution<double> unif(-1.0, 1.0);

  const int sites = cfg.hilbert_dim / 2;
  const CliffordRep rep = clifford_1plus1();
  const ComplexOperator e0(lift_spin(sites, rep.time_vector()));
  const ComplexOperator gamma0(lift_spin(sites, rep.volume_element()));

  std::vector<SpectralQuadruple> found;
  for (int attempt = 0; attempt < cfg.attempts; ++attempt) {
    // Random real antisymmetric generator: commutes with plain conjugation.
    Eigen::MatrixXd r(cfg.hilbert_dim, cfg.hilbert_dim);
    for (int i = 0; i < cfg.hilbert_dim; ++i)
      for (int j = 0; j < cfg.hilbert_dim; ++j) r(i, j) = unif(rng);
    const Matrix a = (0.5 * (r - r.transpose())).cast<Complex>();

    std::vector<ComplexOperator> gens;
    std::vector<std::string> names;
    if (attempt % 2 == 0) {
      gens.push_back(ComplexOperator::identity(cfg.hilbert_dim));
      names.push_back("unit");
    } else {
      RealVector u(sites);
      for (int j = 0; j < sites; ++j) u[j] = unif(rng);
      gens.push_back(ComplexOperator(field_operator(u)));
      names.push_back("diag");
    }

    SpectralQuadruple q{.hilbert_dim = cfg.hilbert_dim,
                        .spacetime_dim = cfg.spacetime_dim,
                        .slices = {},
                        .C = AntilinearOperator::conjugation(cfg.hilbert_dim),
                        .groupoid = {},
                        .grid = std::nullopt,
                        .scheme = Scheme::spectral,
                        .mass = 0.0};
    q.groupoid.kind = GroupoidKind::one_parameter;
    q.groupoid.times = {0.0};
    q.groupoid.generators.push_back(ComplexOperator(a));
    q.groupoid.slice_unitaries.push_back(ComplexOperator::identity(cfg.hilbert_dim));
    q.slices.emplace(0.0, TimeSlice{0.0, gens, names, e0, gamma0});

    ValidateConfig vcfg;
    for (const char* check : {"charge_conjugation", "time_vector", "volume_element", "first_order",
                              "geometry_of_space", "evolution"})
      vcfg.tol_overrides[check] = cfg.tolerance;
    try {
      if (all_passed(validate_all(q, vcfg))) found.push_back(std::move(q));
    } catch (const std::invalid_argument&) {
      // malformed candidate: skip
    }
  }
  return found;
}

}  // namespace quadspec

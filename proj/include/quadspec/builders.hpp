#pragma once

#include <string>
#include <utility>
#include <vector>

#include "quadspec/foliation.hpp"
#include "quadspec/quadruple.hpp"

namespace quadspec {

struct ExampleSpec {
  std::string name = "desitter";  // desitter | flat_cylinder
  int grid_size = 128;
  double mass = 1.0;
  Scheme scheme = Scheme::spectral;
  double radius = 1.0;  // flat cylinder only
  std::vector<double> slice_times = {-0.5, 0.0, 0.5};
  int steps_per_half_unit = 200;
  int generator_modes = 3;  // slice algebra: cos k th, sin k th for k <= this

  void validate() const;
};

struct BuiltExample {
  FoliationData foliation;
  SpectralQuadruple quadruple;
};

// N = 1, N^th = 0, g_thth = cosh^2 t; slices built by transport from t = 0.
BuiltExample build_desitter(const ExampleSpec& spec);

// Static cylinder of radius R: g_thth = R^2, time-independent Hamiltonian,
// slice unitaries are exact exponentials U(0, t) = exp(-i H t).
BuiltExample build_flat_cylinder(const ExampleSpec& spec);

BuiltExample build_example(const ExampleSpec& spec);

// Assemble a quadruple over an arbitrary foliation: anchor operators at t = 0
// transported to each slice time along the foliation's own evolution.
SpectralQuadruple assemble_quadruple(const FoliationData& fol,
                                     const std::vector<double>& slice_times,
                                     int steps_per_half_unit, int generator_modes,
                                     bool exact_exponential_slices = false);

// The two-term cycle {(cos, sin, +1), (sin, cos, -1)} as multiplication operators.
HochschildCycle default_volume_cycle(const Grid& grid);

// Abelian rotation groupoid for static cylinders: lattice translations as the
// compact direction, the Dirac generator designated as the evolution.
GroupoidSpec rotation_symmetric_groupoid(const FoliationData& fol);

struct FiniteSearchConfig {
  int hilbert_dim = 4;  // <= 8, even
  int spacetime_dim = 2;
  int attempts = 32;
  unsigned long long seed = 0;
  double tolerance = 1e-10;

  void validate() const;
};

// Random search over the canonical Clifford-block ansatz: E, gamma, C fixed
// by blocks, commuting diagonal algebras, random anti-Hermitian generators.
// Returns the candidates that pass validate_all at the configured tolerance.
std::vector<SpectralQuadruple> finite_quadruple_search(const FiniteSearchConfig& cfg);

}  // namespace quadspec

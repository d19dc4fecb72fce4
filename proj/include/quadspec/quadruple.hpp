#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "quadspec/foliation.hpp"
#include "quadspec/lattice.hpp"
#include "quadspec/opcore.hpp"

namespace quadspec {

// One spatial slice: a finite generating family for the (commutative) slice
// algebra plus the time vector E and volume element gamma, all represented on
// the common Hilbert space.
struct TimeSlice {
  double t = 0.0;
  std::vector<ComplexOperator> algebra_generators;
  std::vector<std::string> generator_names;
  ComplexOperator E;
  ComplexOperator gamma;
};

enum class GroupoidKind { one_parameter, lie_symmetric };

struct GroupoidSpec {
  GroupoidKind kind = GroupoidKind::one_parameter;

  // one_parameter: per slice time, the anti-Hermitian generator iH(t) and the
  // evolution U(anchor, t) used to build the slice.
  std::vector<double> times;
  std::vector<ComplexOperator> generators;
  std::vector<ComplexOperator> slice_unitaries;

  // lie_symmetric: Lie algebra generators with structure constants
  // [L_i, L_j] = sum_k f^k_{ij} L_k, a designated compact set, and the
  // designated evolution generator.
  std::vector<ComplexOperator> lie_generators;
  std::vector<Eigen::MatrixXd> structure_constants;  // element k: matrix (i,j) -> f^k_{ij}
  std::vector<int> compact_indices;
  int evolution_index = -1;
  // When truncation breaks exact closure, closure residuals are reported as
  // advisory instead of asserted.
  bool exact_closure = true;

  int index_of_time(double t) const;
};

// Hochschild chain: weighted (n+1)-tuples of operators from a slice algebra.
struct HochschildCycle {
  struct Term {
    std::vector<ComplexOperator> entries;
    double weight = 1.0;
  };
  std::vector<Term> terms;
};

struct CheckReport {
  std::string name;
  double residual = 0.0;
  double tol = 0.0;
  bool pass = false;
  bool advisory = false;
  std::vector<std::pair<std::string, std::string>> meta;

  static CheckReport make(std::string name, double residual, double tol);
  void set_meta(const std::string& key, const std::string& value);
  void set_meta(const std::string& key, double value);
};

struct SpectralQuadruple {
  Eigen::Index hilbert_dim = 0;
  int spacetime_dim = 2;  // n + 1
  std::map<double, TimeSlice> slices;
  AntilinearOperator C;
  GroupoidSpec groupoid;

  // Lattice metadata; absent for abstract finite quadruples.
  std::optional<Grid> grid;
  Scheme scheme = Scheme::spectral;
  double mass = 0.0;

  void validate_shape() const;
};

struct ValidateConfig {
  ToleranceConfig base;
  std::map<std::string, double> tol_overrides;  // keyed by check name prefix
  int band_cutoff = -1;                         // default grid/4 for spectral lattices
  int witness_kernel_order = 3;
  int max_probe_pairs = 3;
  double noncomm_floor_scale = 1e-4;   // floor = scale * ||f|| ||g|| (m dt)^3
  double massless_ceiling = 1e-6;      // witness bound for m = 0
  std::optional<HochschildCycle> cycle;
  double unitary_sample_parameter = 0.37;  // extra groupoid sample exp(s * iH)

  double tolerance_for(const std::string& check, Scheme scheme, double h) const;
};

// (1/8)(n-1)(n-2)(n-3)(n-4) for spacetime dimension n.
int s_exponent(int n);

CheckReport check_charge_conjugation(const SpectralQuadruple& q, const ValidateConfig& cfg);

CheckReport check_first_order(const SpectralQuadruple& q, const ComplexOperator& f,
                              const ComplexOperator& g, const ComplexOperator& iH,
                              const ValidateConfig& cfg);

CheckReport check_time_vector(const TimeSlice& slice, const ValidateConfig& cfg);

CheckReport check_volume_element(const TimeSlice& slice, int spacetime_dim,
                                 const ValidateConfig& cfg);

// Candidate volume element from the cycle, compared to slice.gamma up to a
// positive scalar. D~ = gamma [iH, gamma] for even spacetime dimension, iH for odd.
std::pair<ComplexOperator, CheckReport> hochschild_volume(const SpectralQuadruple& q,
                                                          const TimeSlice& slice,
                                                          const HochschildCycle& cycle,
                                                          const ComplexOperator& iH,
                                                          const ValidateConfig& cfg);

// D = E [H, E], computed from the anti-Hermitian generator iH as -i E [iH, E].
ComplexOperator spatial_dirac(const TimeSlice& slice, const ComplexOperator& iH);

CheckReport check_geometry_of_space(const SpectralQuadruple& q, const TimeSlice& slice,
                                    const ComplexOperator& dirac, const ValidateConfig& cfg);

CheckReport check_evolution(const SpectralQuadruple& q, double t0, double t1,
                            const ValidateConfig& cfg);

std::vector<CheckReport> check_symmetric(const SpectralQuadruple& q, const ValidateConfig& cfg);

std::vector<CheckReport> validate_all(const SpectralQuadruple& q, const ValidateConfig& cfg);

bool all_passed(const std::vector<CheckReport>& reports);

}  // namespace quadspec

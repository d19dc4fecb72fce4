#pragma once

#include <optional>
#include <string>
#include <vector>

#include "quadspec/lattice.hpp"
#include "quadspec/opcore.hpp"

namespace quadspec {

// Fixed 1+1 Clifford representation: gamma0 = [[0,1],[-1,0]], gamma1 = [[0,1],[1,0]].
// {gamma_a, gamma_b} = 2 eta_ab with eta = diag(-1, +1), exactly.
struct CliffordRep {
  Eigen::Matrix2cd gamma0;
  Eigen::Matrix2cd gamma1;
  Eigen::Matrix2d eta;

  // Rotation/boost generator Omega_ab = (1/4)[gamma_a, gamma_b].
  Eigen::Matrix2cd omega(int a, int b) const;
  // Time vector spin part E = gamma_a e_0^a = gamma0 in the adapted frame.
  Eigen::Matrix2cd time_vector() const { return gamma0; }
  // Slice volume element: gamma1 anticommutes with E and squares to +1.
  Eigen::Matrix2cd volume_element() const { return gamma1; }
};

CliffordRep clifford_1plus1();

// One ADM field on the foliation: a constant, per-site samples (time
// independent), or a named builtin with analytic time dependence.
struct FieldSpec {
  enum class Kind { constant, samples, builtin };
  enum class Role { lapse, shift, metric };

  Kind kind = Kind::constant;
  double value = 1.0;
  RealVector samples;
  std::string builtin;  // "desitter" | "flat"

  static FieldSpec constant(double v);
  static FieldSpec sampled(RealVector v);
  static FieldSpec named(std::string b);

  RealVector at(Role role, double t, const Grid& g) const;
  RealVector time_derivative(Role role, double t, const Grid& g) const;

  std::string to_json_fragment() const;
};

// ADM data on a periodic 1D spatial lattice.
struct FoliationData {
  int grid_size = 128;
  double mass = 0.0;
  Scheme scheme = Scheme::spectral;
  FieldSpec lapse = FieldSpec::constant(1.0);
  FieldSpec shift = FieldSpec::constant(0.0);
  FieldSpec g_thth = FieldSpec::constant(1.0);

  Grid grid() const { return Grid::periodic(grid_size); }

  RealVector lapse_at(double t) const;
  RealVector shift_at(double t) const;
  RealVector metric_at(double t) const;                  // g_thth > 0
  RealVector metric_time_derivative_at(double t) const;  // d/dt g_thth
  RealVector zweibein_at(double t) const;                // e_th^1 = sqrt(g_thth)

  // N > 0, g_thth > 0, finite, grid size acceptable.
  void validate_at(double t) const;

  std::string to_json() const;
  static FoliationData from_json_text(const std::string& text);
};

// Torsion-free metric-compatible connection for the zweibein adapted to the
// slicing. w01_theta = (d_t sqrt(g) - d_th(sqrt(g) N^th)) / N is the spatial
// component; w01_time = d_th N / (N sqrt(g)) is the frame-time component
// omega^{01}(e_0).
struct SpinConnectionData {
  RealVector w01_theta;
  RealVector w01_time;
  bool degraded_accuracy = false;

  // Operator-valued fields omega_mu^s = (w01/2) gamma0 gamma1 on the full lattice space.
  Matrix theta_component(const CliffordRep& rep) const;
  Matrix time_component(const CliffordRep& rep) const;
};

SpinConnectionData spin_connection(const FoliationData& fol, double t);

// Lattice Dirac Hamiltonian at time t in the half-density weighted picture:
//   H = -(i/2){N/sqrt(g), D} gamma0 gamma1 - (i/2){N^th, D} + i m N gamma0
// acting on grid_size x 2 complex amplitudes; Hermitian by construction for
// an antisymmetric derivative matrix D.
ComplexOperator build_hamiltonian(const FoliationData& fol, double t, const CliffordRep& rep);

// U_H(t0, t1) as an ordered product of Cayley steps
// (I + i H dt/2)^-1 (I - i H dt/2) with H frozen at each step midpoint.
ComplexOperator evolve(const FoliationData& fol, double t0, double t1, int steps);

// U O U^dag. Errors if U fails the unitarity tolerance.
ComplexOperator transport(const ComplexOperator& o, const ComplexOperator& u,
                          double unitarity_tol = 1e-8);

}  // namespace quadspec

#pragma once

#include <string>
#include <vector>

#include "quadspec/opcore.hpp"

namespace quadspec {

enum class Scheme { spectral, central };

Scheme scheme_from_string(const std::string& s);
std::string to_string(Scheme s);

// Periodic grid on theta in [0, 2pi).
struct Grid {
  int size = 0;
  double h = 0.0;
  RealVector thetas;

  static Grid periodic(int size);
};

// M x M real antisymmetric derivative matrix on the periodic grid.
// Spectral: exact on modes |k| <= M/2 - 1 (even M). Central: (psi_{j+1} - psi_{j-1}) / 2h.
Eigen::MatrixXd derivative_matrix(const Grid& g, Scheme scheme);

// Sharp Fourier projector onto |k| <= kmax (site space, M x M, real symmetric).
Eigen::MatrixXd band_projector(const Grid& g, int kmax);

// Operators on the grid_size x 2 state space use site-major layout: index = 2*site + spin.
Matrix lift_site(const Matrix& site_op);
Matrix lift_spin(int grid_size, const Eigen::Matrix2cd& spin_op);
Matrix field_operator(const RealVector& field);  // diag(field) (x) I_2

// Normalized Fejer kernel state centered at grid point `center`, band-limited to |k| <= order.
RealVector fejer_state(const Grid& g, int center, int order);

// 2x2 spin block <w (x) e_i | Op | w (x) e_j> for a site-space probe state w.
Eigen::Matrix2cd probe_block(const Matrix& op, const RealVector& site_state);

// max over kernel centers of the probe-block operator norm. A band-limited
// witness for how far `op` is from zero on the resolved smooth sector.
double probe_witness(const Matrix& op, const Grid& g, int order);

// P Op P with P = band_projector (x) I_2.
Matrix band_compress(const Matrix& op, const Grid& g, int kmax);

// Smooth probe function with analytically known derivative.
struct ProbeField {
  std::string name;
  RealVector values;
  RealVector derivative;
};

// Supported names: "const", "cos", "sin", "cos2", "sin2", "cos3", "sin3".
ProbeField make_probe(const Grid& g, const std::string& name);

}  // namespace quadspec

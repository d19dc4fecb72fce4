#pragma once

#include <vector>

#include "quadspec/foliation.hpp"
#include "quadspec/lattice.hpp"
#include "quadspec/opcore.hpp"

namespace quadspec {

struct SeriesConfig {
  // Symmetric signs decorrelate even/odd fit coefficients.
  std::vector<double> dts = {-0.10, -0.08, -0.06, -0.04, -0.02, 0.02, 0.04, 0.06, 0.08, 0.10};
  int steps_per_unit = 4000;
  int band_cutoff = -1;  // default grid/4
  int kernel_order = 3;  // Fejer order for field extraction
  double residual_fraction = 0.5;
  double deriv_floor_fraction = 0.1;
};

// Entrywise polynomial fit of the transported commutator [f_0, g_{t0+dt}]
// over the sampled dts. The fit model is sum_{p=2..5} c_p dt^p: c0 = c1 = 0
// are enforced by the model, c4 and c5 are nuisance orders absorbing the
// O(dt^4) tail. Operators are band-compressed before fitting.
struct CommutatorSeries {
  ProbeField f, g;
  double t0 = 0.0;
  std::vector<double> dts;
  ComplexOperator c2, c3, c4, c5;
  double fit_residual = 0.0;
  double c2_witness = 0.0;  // smooth-state norms of the fitted coefficients
  double c3_witness = 0.0;
  bool conformal_only = false;
};

CommutatorSeries commutator_series(const FoliationData& fol, const ProbeField& f,
                                   const ProbeField& g, double t0,
                                   const std::vector<double>& dts, const SeriesConfig& cfg);

struct LapseShiftFields {
  RealVector c_field;      // N sqrt(g^thth)
  RealVector shift_field;  // N^th
  std::vector<bool> mask;  // true where |f'| is above the derivative floor
};

// Decomposes i[f, H] = -f'(N sqrt(g^thth) E gamma1 + N^th), read off on
// band-limited kernel states and divided by the smeared f'.
LapseShiftFields lapse_shift_from_H(const ComplexOperator& iH, const ProbeField& f,
                                    const Grid& grid, const SeriesConfig& cfg);

struct ReconstructionResult {
  RealVector theta;
  RealVector lapse;       // N-hat
  RealVector inv_metric;  // g^thth-hat
  RealVector shift;       // N^th-hat
  std::vector<bool> valid;

  bool has_reference = false;
  RealVector lapse_ref, inv_metric_ref, shift_ref;
  RealVector lapse_rel_err, inv_metric_rel_err, shift_abs_err;
  double max_lapse_rel_err = 0.0;
  double max_inv_metric_rel_err = 0.0;
  double max_shift_abs_err = 0.0;

  bool conformal_only = false;
  double fit_residual = 0.0;
  int n_valid = 0;
};

// Recovers (N, g^thth, N^th) at time t0 from the third-order commutator
// coefficient and the first-order decomposition of i[f, H]; the foliation
// supplies the ground truth for error reporting. Requires mass > 0.
ReconstructionResult reconstruct_metric(const FoliationData& fol, double t0, const ProbeField& f,
                                        const ProbeField& g, const std::vector<double>& dts,
                                        const SeriesConfig& cfg);

}  // namespace quadspec

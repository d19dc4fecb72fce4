#include "quadspec/reconstruct.hpp"

#include <Eigen/QR>
#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <set>

namespace quadspec {

namespace {

constexpr int kFitExponents[] = {2, 3, 4, 5};
constexpr int kFitOrders = 4;

// Taylor-coefficient bridge for the third-order mass term: the expansion
// coefficient of the transported commutator at dt^3 is (4/3!) m N^3 g^thth f'g' E.
constexpr double kThirdOrderFactor = 4.0 / 6.0;

void validate_dts(const std::vector<double>& dts) {
  std::set<double> distinct;
  for (double d : dts) {
    if (d == 0.0) throw std::invalid_argument("dt samples must be nonzero");
    if (!std::isfinite(d)) throw std::invalid_argument("dt samples must be finite");
    distinct.insert(d);
  }
  if (distinct.size() < 4)
    throw std::invalid_argument("need at least 4 distinct nonzero dt samples");
}

Eigen::MatrixXd design_matrix(const std::vector<double>& dts) {
  Eigen::MatrixXd v(dts.size(), kFitOrders);
  for (size_t i = 0; i < dts.size(); ++i)
    for (int p = 0; p < kFitOrders; ++p) v(i, p) = std::pow(dts[i], kFitExponents[p]);
  // Column-scaled conditioning guard against clustered samples.
  Eigen::MatrixXd scaled = v;
  for (int p = 0; p < kFitOrders; ++p) {
    const double s = scaled.col(p).cwiseAbs().maxCoeff();
    if (s > 0) scaled.col(p) /= s;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(scaled);
  const double smin = svd.singularValues().minCoeff();
  if (smin < 1e-6)
    throw std::invalid_argument("ill-conditioned commutator fit: dt samples too clustered");
  return v;
}

int effective_cutoff(const Grid& g, const SeriesConfig& cfg) {
  return cfg.band_cutoff > 0 ? cfg.band_cutoff : std::max(2, g.size / 4);
}

double smeared(const RealVector& field, const RealVector& w) {
  return w.cwiseProduct(field.cwiseProduct(w)).sum();
}

}  // namespace

CommutatorSeries commutator_series(const FoliationData& fol, const ProbeField& f,
                                   const ProbeField& g, double t0,
                                   const std::vector<double>& dts, const SeriesConfig& cfg) {
  validate_dts(dts);
  const Grid grid = fol.grid();
  const int cutoff = effective_cutoff(grid, cfg);
  const Eigen::Index d = 2 * grid.size;

  const Matrix f_op = field_operator(f.values);
  const Matrix g_op = field_operator(g.values);

  const Eigen::MatrixXd v = design_matrix(dts);
  Matrix data(Eigen::Index(dts.size()), d * d);
  for (size_t i = 0; i < dts.size(); ++i) {
    const double dt = dts[i];
    const int steps = std::max(16, int(std::ceil(std::abs(dt) * cfg.steps_per_unit)));
    const Matrix u = evolve(fol, t0, t0 + dt, steps).matrix();
    const Matrix gt = u * g_op * u.adjoint();
    const Matrix comm = band_compress(Matrix(f_op * gt - gt * f_op), grid, cutoff);
    data.row(Eigen::Index(i)) = Eigen::Map<const Vector>(comm.data(), d * d).transpose();
  }

  const Matrix vc = v.cast<Complex>();
  const Matrix coef = vc.colPivHouseholderQr().solve(data);
  auto unpack = [&](int p) {
    Matrix m(d, d);
    Eigen::Map<Vector>(m.data(), d * d) = coef.row(p).transpose();
    return ComplexOperator(std::move(m));
  };

  CommutatorSeries out{f, g, t0, dts, unpack(0), unpack(1), unpack(2), unpack(3)};

  const Matrix misfit = vc * coef - data;
  double fit_residual = 0.0;
  for (size_t i = 0; i < dts.size(); ++i) {
    Matrix r(d, d);
    Eigen::Map<Vector>(r.data(), d * d) = misfit.row(Eigen::Index(i)).transpose();
    fit_residual = std::max(fit_residual, operator_norm(r));
  }
  out.fit_residual = fit_residual;
  out.c2_witness = probe_witness(out.c2.matrix(), grid, cfg.kernel_order);
  out.c3_witness = probe_witness(out.c3.matrix(), grid, cfg.kernel_order);

  const double scale =
      f.derivative.cwiseAbs().maxCoeff() * g.derivative.cwiseAbs().maxCoeff() * fol.mass;
  const double floor = 1e-6 * std::max(scale, 1.0);
  out.conformal_only = out.c3_witness <= floor && out.c2_witness > floor;
  return out;
}

LapseShiftFields lapse_shift_from_H(const ComplexOperator& iH, const ProbeField& f,
                                    const Grid& grid, const SeriesConfig& cfg) {
  if (f.derivative.cwiseAbs().maxCoeff() == 0.0)
    throw std::invalid_argument("probe derivative vanishes everywhere");
  if (iH.dim() != 2 * grid.size) throw std::invalid_argument("generator does not match grid");

  const Matrix f_op = field_operator(f.values);
  // i[f, H] = [f, iH]
  const Matrix x = f_op * iH.matrix() - iH.matrix() * f_op;

  Eigen::Matrix2cd e_gamma1;  // E gamma1 = gamma0 gamma1 = sigma3
  e_gamma1 << 1, 0, 0, -1;

  const int m = grid.size;
  LapseShiftFields out{RealVector::Zero(m), RealVector::Zero(m), std::vector<bool>(m, false)};

  RealVector fprime_sm(m);
  std::vector<Eigen::Matrix2cd> blocks(m);
  for (int j = 0; j < m; ++j) {
    const RealVector w = fejer_state(grid, j, cfg.kernel_order);
    fprime_sm[j] = smeared(f.derivative, w);
    blocks[j] = probe_block(x, w);
  }
  const double floor = cfg.deriv_floor_fraction * fprime_sm.cwiseAbs().maxCoeff();
  for (int j = 0; j < m; ++j) {
    if (std::abs(fprime_sm[j]) <= floor) continue;
    const double spin_part = 0.5 * (e_gamma1.adjoint() * blocks[j]).trace().real();
    const double identity_part = 0.5 * blocks[j].trace().real();
    out.c_field[j] = spin_part / (-fprime_sm[j]);
    out.shift_field[j] = identity_part / (-fprime_sm[j]);
    out.mask[j] = true;
  }
  return out;
}

ReconstructionResult reconstruct_metric(const FoliationData& fol, double t0, const ProbeField& f,
                                        const ProbeField& g, const std::vector<double>& dts,
                                        const SeriesConfig& cfg) {
  if (fol.mass <= 0.0)
    throw std::invalid_argument(
        "metric reconstruction needs mass > 0: the third-order commutator coefficient is "
        "mass-proportional and only conformal data survives at m = 0");
  const Grid grid = fol.grid();
  const int m = grid.size;

  const CommutatorSeries series = commutator_series(fol, f, g, t0, dts, cfg);
  const ComplexOperator h = build_hamiltonian(fol, t0, clifford_1plus1());
  const ComplexOperator iH(Matrix(Complex(0, 1) * h.matrix()));
  const LapseShiftFields ls = lapse_shift_from_H(iH, f, grid, cfg);

  Eigen::Matrix2cd e2;  // E = i sigma2
  e2 << 0, 1, -1, 0;

  ReconstructionResult out;
  out.theta = grid.thetas;
  out.lapse = RealVector::Zero(m);
  out.inv_metric = RealVector::Zero(m);
  out.shift = RealVector::Zero(m);
  out.valid.assign(m, false);
  out.conformal_only = series.conformal_only;
  out.fit_residual = series.fit_residual;

  const RealVector fpgp = f.derivative.cwiseProduct(g.derivative);
  RealVector fpgp_sm(m), strip(m);
  for (int j = 0; j < m; ++j) {
    const RealVector w = fejer_state(grid, j, cfg.kernel_order);
    fpgp_sm[j] = smeared(fpgp, w);
    const Eigen::Matrix2cd b = probe_block(series.c3.matrix(), w);
    strip[j] = 0.5 * (e2.adjoint() * b).trace().real();
  }
  const double floor = cfg.deriv_floor_fraction * fpgp_sm.cwiseAbs().maxCoeff();

  for (int j = 0; j < m; ++j) {
    if (!ls.mask[j] || std::abs(fpgp_sm[j]) <= floor) continue;
    const double d_val = strip[j] / (kThirdOrderFactor * fol.mass * fpgp_sm[j]);
    const double c_val = ls.c_field[j];
    if (d_val <= 0.0 || c_val <= 0.0) continue;  // reported as excluded
    out.lapse[j] = d_val / (c_val * c_val);
    out.inv_metric[j] = std::pow(c_val, 6) / (d_val * d_val);
    out.shift[j] = ls.shift_field[j];
    out.valid[j] = true;
  }

  out.has_reference = true;
  out.lapse_ref = fol.lapse_at(t0);
  out.inv_metric_ref = fol.metric_at(t0).cwiseInverse();
  out.shift_ref = fol.shift_at(t0);
  out.lapse_rel_err = RealVector::Zero(m);
  out.inv_metric_rel_err = RealVector::Zero(m);
  out.shift_abs_err = RealVector::Zero(m);
  for (int j = 0; j < m; ++j) {
    if (!out.valid[j]) continue;
    ++out.n_valid;
    out.lapse_rel_err[j] = std::abs(out.lapse[j] - out.lapse_ref[j]) / std::abs(out.lapse_ref[j]);
    out.inv_metric_rel_err[j] =
        std::abs(out.inv_metric[j] - out.inv_metric_ref[j]) / std::abs(out.inv_metric_ref[j]);
    out.shift_abs_err[j] = std::abs(out.shift[j] - out.shift_ref[j]);
    out.max_lapse_rel_err = std::max(out.max_lapse_rel_err, out.lapse_rel_err[j]);
    out.max_inv_metric_rel_err = std::max(out.max_inv_metric_rel_err, out.inv_metric_rel_err[j]);
    out.max_shift_abs_err = std::max(out.max_shift_abs_err, out.shift_abs_err[j]);
  }
  if (out.n_valid == 0)
    throw std::invalid_argument("reconstruction window is empty: d or c nonpositive everywhere");
  return out;
}

}  // namespace quadspec

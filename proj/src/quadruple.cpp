#include "quadspec/quadruple.hpp"

#include <Eigen/QR>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <sstream>

namespace quadspec {

namespace {

std::string fmt_time(double t) {
  char buf[32];
  std::snprintf(buf, sizeof(buf), "%g", t);
  return buf;
}

std::string fmt_value(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

int GroupoidSpec::index_of_time(double t) const {
  for (size_t i = 0; i < times.size(); ++i)
    if (times[i] == t) return int(i);
  return -1;
}

CheckReport CheckReport::make(std::string name, double residual, double tol) {
  CheckReport r;
  r.name = std::move(name);
  if (!std::isfinite(residual)) throw NumericalError("check residual is not finite: " + r.name);
  r.residual = residual;
  r.tol = tol;
  r.pass = residual <= tol;
  return r;
}

void CheckReport::set_meta(const std::string& key, const std::string& value) {
  meta.emplace_back(key, value);
}

void CheckReport::set_meta(const std::string& key, double value) {
  meta.emplace_back(key, fmt_value(value));
}

void SpectralQuadruple::validate_shape() const {
  if (slices.empty()) throw std::invalid_argument("quadruple needs at least one slice");
  if (spacetime_dim < 1) throw std::invalid_argument("spacetime dimension must be positive");
  for (const auto& [t, s] : slices) {
    if (s.E.dim() != hilbert_dim || s.gamma.dim() != hilbert_dim)
      throw std::invalid_argument("slice operator dimension mismatch");
    for (const auto& a : s.algebra_generators)
      if (a.dim() != hilbert_dim) throw std::invalid_argument("slice generator dimension mismatch");
  }
  if (C.dim() != hilbert_dim) throw std::invalid_argument("conjugation dimension mismatch");
  for (const auto& a : groupoid.generators) {
    if (a.dim() != hilbert_dim) throw std::invalid_argument("generator dimension mismatch");
    const double anti = operator_norm(Matrix(a.matrix() + a.matrix().adjoint()));
    if (anti > 1e-8 * std::max(1.0, operator_norm(a)))
      throw std::invalid_argument("groupoid generator is not anti-Hermitian");
  }
  for (const auto& a : groupoid.lie_generators) {
    const double anti = operator_norm(Matrix(a.matrix() + a.matrix().adjoint()));
    if (anti > 1e-8 * std::max(1.0, operator_norm(a)))
      throw std::invalid_argument("Lie generator is not anti-Hermitian");
  }
}

double ValidateConfig::tolerance_for(const std::string& check, Scheme scheme, double h) const {
  auto it = tol_overrides.find(check);
  if (it != tol_overrides.end()) return it->second;
  if (check == "charge_conjugation") return 1e-8;
  if (check == "time_vector") return 1e-12;
  if (check == "volume_element") return 1e-12;
  if (check == "first_order") return scheme == Scheme::spectral ? 1e-8 : 5.0 * h;
  if (check == "hochschild") return 0.05;
  if (check == "geometry_of_space") return 1e-9;
  if (check == "evolution") return 1e-8;
  if (check == "symmetric") return scheme == Scheme::spectral ? 1e-10 : 0.05;
  return base.abs_tol;
}

int s_exponent(int n) {
  if (n < 1) throw std::invalid_argument("spacetime dimension must be at least 1");
  const long long p = (long long)(n - 1) * (n - 2) * (n - 3) * (n - 4);
  return int(p / 8);
}

namespace {

struct AnchorFrame {
  std::vector<ComplexOperator> generators;
  ComplexOperator E;
  ComplexOperator gamma;
  bool valid = true;
  double unitarity_defect = 0.0;
};

// Slice operators rotated back to the anchor frame, where the measurement
// band and probe kernels live. If the stored groupoid unitary fails
// unitarity, the rotation is skipped and the frame is flagged invalid.
AnchorFrame anchor_frame(const SpectralQuadruple& q, const TimeSlice& slice) {
  const int idx = q.groupoid.index_of_time(slice.t);
  if (idx < 0 || size_t(idx) >= q.groupoid.slice_unitaries.size() || !q.grid.has_value())
    return AnchorFrame{slice.algebra_generators, slice.E, slice.gamma};
  const Matrix& v = q.groupoid.slice_unitaries[idx].matrix();
  const double defect =
      operator_norm(Matrix(v.adjoint() * v - Matrix::Identity(v.rows(), v.cols())));
  if (defect > 1e-6) {
    AnchorFrame a{slice.algebra_generators, slice.E, slice.gamma};
    a.valid = false;
    a.unitarity_defect = defect;
    return a;
  }
  auto back = [&](const ComplexOperator& x) {
    return ComplexOperator(Matrix(v.adjoint() * x.matrix() * v));
  };
  AnchorFrame a{{}, back(slice.E), back(slice.gamma)};
  a.generators.reserve(slice.algebra_generators.size());
  for (const auto& g : slice.algebra_generators) a.generators.push_back(back(g));
  return a;
}

int effective_cutoff(const SpectralQuadruple& q, const ValidateConfig& cfg) {
  if (!q.grid.has_value()) return -1;
  if (cfg.band_cutoff > 0) return cfg.band_cutoff;
  return std::max(2, q.grid->size / 4);
}

// Residual norm for lattice measurements: band-limited for the spectral
// scheme (the band-edge wrap of the periodic spectral derivative is a lattice
// artifact), full operator norm otherwise.
double measured_norm(const SpectralQuadruple& q, const ValidateConfig& cfg, const Matrix& m,
                     bool band_spectral = true) {
  if (q.grid.has_value() && q.scheme == Scheme::spectral && band_spectral)
    return operator_norm(band_compress(m, *q.grid, effective_cutoff(q, cfg)));
  return operator_norm(m);
}

double witness_norm(const SpectralQuadruple& q, const ValidateConfig& cfg, const Matrix& m) {
  if (q.grid.has_value()) return probe_witness(m, *q.grid, cfg.witness_kernel_order);
  return operator_norm(m);
}

Matrix opposite_rep(const SpectralQuadruple& q, const ComplexOperator& g) {
  const Matrix& mc = q.C.matrix_part.matrix();
  // C g* C acting linearly: M conj(g*) conj(M) with g* the adjoint.
  return mc * g.matrix().transpose() * mc.conjugate();
}

std::vector<ComplexOperator> groupoid_unitary_samples(const SpectralQuadruple& q,
                                                      const ValidateConfig& cfg) {
  std::vector<ComplexOperator> us = q.groupoid.slice_unitaries;
  const double s = cfg.unitary_sample_parameter;
  if (!q.groupoid.generators.empty())
    us.push_back(matrix_exponential(q.groupoid.generators.front(), Complex(s, 0.0)));
  for (const auto& l : q.groupoid.lie_generators)
    us.push_back(matrix_exponential(l, Complex(s, 0.0)));
  return us;
}

// Least-squares distance of x from span{basis...}, divided by ||x||.
double span_distance(const std::vector<const Matrix*>& basis, const Matrix& x) {
  const Eigen::Index n2 = x.size();
  Matrix a(n2, Eigen::Index(basis.size()));
  for (size_t c = 0; c < basis.size(); ++c)
    a.col(Eigen::Index(c)) = Eigen::Map<const Vector>(basis[c]->data(), n2);
  const Vector b = Eigen::Map<const Vector>(x.data(), n2);
  const Vector coef = a.colPivHouseholderQr().solve(b);
  const double num = (a * coef - b).norm();
  const double den = std::max(b.norm(), 1e-300);
  return num / den;
}

}  // namespace

CheckReport check_charge_conjugation(const SpectralQuadruple& q, const ValidateConfig& cfg) {
  const int sign = s_exponent(q.spacetime_dim) % 2 == 0 ? 1 : -1;
  const Matrix sq = q.C.squared().matrix();
  const double r_square =
      operator_norm(Matrix(sq - double(sign) * Matrix::Identity(q.hilbert_dim, q.hilbert_dim)));

  double r_commute = 0.0;
  for (const auto& u : groupoid_unitary_samples(q, cfg))
    r_commute = std::max(r_commute, q.C.commutation_defect(u));

  const double h = q.grid ? q.grid->h : 0.0;
  auto rep = CheckReport::make("charge_conjugation", std::max(r_square, r_commute),
                               cfg.tolerance_for("charge_conjugation", q.scheme, h));
  rep.set_meta("square_residual", r_square);
  rep.set_meta("groupoid_commutation_residual", r_commute);
  rep.set_meta("expected_square_sign", sign > 0 ? "+1" : "-1");
  return rep;
}

CheckReport check_first_order(const SpectralQuadruple& q, const ComplexOperator& f,
                              const ComplexOperator& g, const ComplexOperator& iH,
                              const ValidateConfig& cfg) {
  const Matrix gop = opposite_rep(q, g);
  const Matrix inner = f.matrix() * iH.matrix() - iH.matrix() * f.matrix();
  const Matrix outer = inner * gop - gop * inner;

  const double h = q.grid ? q.grid->h : 0.0;
  const double residual = measured_norm(q, cfg, outer);
  auto rep = CheckReport::make("first_order", residual,
                               cfg.tolerance_for("first_order", q.scheme, h));
  if (q.grid) {
    rep.set_meta("scheme", to_string(q.scheme));
    rep.set_meta("grid", double(q.grid->size));
    if (q.scheme == Scheme::central) rep.set_meta("expected_scaling", "O(h)");
    rep.set_meta("norm", q.scheme == Scheme::spectral ? "banded" : "full");
  }
  return rep;
}

CheckReport check_time_vector(const TimeSlice& slice, const ValidateConfig& cfg) {
  const Eigen::Index d = slice.E.dim();
  const Matrix& e = slice.E.matrix();
  const double r_sq = operator_norm(Matrix(e * e + Matrix::Identity(d, d)));
  const double r_adj = operator_norm(Matrix(e.adjoint() + e));
  auto rep = CheckReport::make("time_vector", std::max(r_sq, r_adj),
                               cfg.tolerance_for("time_vector", Scheme::spectral, 0.0));
  rep.set_meta("square_residual", r_sq);
  rep.set_meta("antihermitian_residual", r_adj);
  return rep;
}

CheckReport check_volume_element(const TimeSlice& slice, int spacetime_dim,
                                 const ValidateConfig& cfg) {
  const Eigen::Index d = slice.gamma.dim();
  const Matrix& g = slice.gamma.matrix();
  const Matrix& e = slice.E.matrix();
  const Matrix id = Matrix::Identity(d, d);
  const double r_plus = operator_norm(Matrix(g * g - id));
  const double r_minus = operator_norm(Matrix(g * g + id));
  const double r_sq = std::min(r_plus, r_minus);

  const bool even = spacetime_dim % 2 == 0;
  const double r_par =
      even ? operator_norm(Matrix(e * g + g * e)) : operator_norm(Matrix(e * g - g * e));

  auto rep = CheckReport::make("volume_element", std::max(r_sq, r_par),
                               cfg.tolerance_for("volume_element", Scheme::spectral, 0.0));
  rep.set_meta("square_sign", r_plus <= r_minus ? "+1" : "-1");
  rep.set_meta("square_residual", r_sq);
  rep.set_meta(even ? "anticommutation_residual" : "commutation_residual", r_par);
  return rep;
}

std::pair<ComplexOperator, CheckReport> hochschild_volume(const SpectralQuadruple& q,
                                                          const TimeSlice& slice,
                                                          const HochschildCycle& cycle,
                                                          const ComplexOperator& iH,
                                                          const ValidateConfig& cfg) {
  const AnchorFrame frame = anchor_frame(q, slice);
  const Eigen::Index d = q.hilbert_dim;
  const bool even = q.spacetime_dim % 2 == 0;
  const int slots = q.spacetime_dim - 1;

  Matrix dtilde;
  if (even) {
    const Matrix& g = frame.gamma.matrix();
    dtilde = g * (iH.matrix() * g - g * iH.matrix());
  } else {
    dtilde = iH.matrix();
  }

  double entry_commutation = 0.0;
  Matrix sum = Matrix::Zero(d, d);
  for (const auto& term : cycle.terms) {
    if (int(term.entries.size()) != slots + 1)
      throw std::invalid_argument("Hochschild cycle term has wrong arity for spacetime dimension");
    Matrix acc = term.entries.front().matrix();
    for (int j = 1; j <= slots; ++j) {
      const Matrix& fj = term.entries[j].matrix();
      acc = acc * (dtilde * fj - fj * dtilde);
    }
    sum += term.weight * acc;
    for (const auto& entry : term.entries)
      for (const auto& gen : frame.generators)
        entry_commutation = std::max(
            entry_commutation, operator_norm(Matrix(entry.matrix() * gen.matrix() -
                                                    gen.matrix() * entry.matrix())));
  }
  Matrix candidate = even ? Matrix(frame.E.matrix() * sum) : sum;

  const double cand_norm = q.grid && q.scheme == Scheme::spectral
                               ? measured_norm(q, cfg, candidate)
                               : operator_norm(candidate);
  if (cand_norm < 1e-12) throw std::invalid_argument("degenerate Hochschild cycle: zero candidate");

  // Compare up to a positive scalar on the resolved band.
  double residual;
  double gamma_norm;
  int cutoff = -1;
  if (q.grid) {
    cutoff = q.scheme == Scheme::spectral ? effective_cutoff(q, cfg)
                                          : std::max(2, std::min(q.grid->size / 8, 8));
    const Matrix bc = band_compress(candidate, *q.grid, cutoff);
    const Matrix bg = band_compress(frame.gamma.matrix(), *q.grid, cutoff);
    const double nc = std::max(operator_norm(bc), 1e-300);
    gamma_norm = std::max(operator_norm(bg), 1e-300);
    residual = operator_norm(Matrix(bc / nc - bg / gamma_norm));
  } else {
    const double nc = std::max(operator_norm(candidate), 1e-300);
    gamma_norm = std::max(operator_norm(frame.gamma.matrix()), 1e-300);
    residual = operator_norm(Matrix(candidate / nc - frame.gamma.matrix() / gamma_norm));
  }

  double tol = cfg.tolerance_for("hochschild", q.scheme, q.grid ? q.grid->h : 0.0);
  if (q.grid && q.scheme == Scheme::central && cfg.tol_overrides.find("hochschild") == cfg.tol_overrides.end()) {
    // Locality-limited scheme: the candidate carries the averaging symbol of
    // the stencil, an O((K h)^2) deformation on the compared band.
    tol = std::max(tol, 1.0 * (cutoff * q.grid->h) * (cutoff * q.grid->h));
  }

  auto rep = CheckReport::make("hochschild", residual, tol);
  rep.set_meta("candidate_norm", cand_norm);
  rep.set_meta("scale_vs_gamma", cand_norm / std::max(gamma_norm, 1e-300));
  rep.set_meta("entry_commutation_defect", entry_commutation);
  if (cutoff > 0) rep.set_meta("band_cutoff", double(cutoff));
  return {ComplexOperator(std::move(candidate)), std::move(rep)};
}

ComplexOperator spatial_dirac(const TimeSlice& slice, const ComplexOperator& iH) {
  const Eigen::Index d = slice.E.dim();
  const Matrix& e = slice.E.matrix();
  const double tv = std::max(operator_norm(Matrix(e * e + Matrix::Identity(d, d))),
                             operator_norm(Matrix(e.adjoint() + e)));
  if (tv > 1e-6)
    throw std::invalid_argument("spatial_dirac requires a valid time vector (E^2 = -1, E* = -E)");
  // D = E [H, E] = -i E [iH, E]
  const Matrix comm = iH.matrix() * e - e * iH.matrix();
  return ComplexOperator(Matrix(Complex(0, -1) * (e * (Complex(-1, 0) * comm))));
}

CheckReport check_geometry_of_space(const SpectralQuadruple& q, const TimeSlice& slice,
                                    const ComplexOperator& dirac, const ValidateConfig& cfg) {
  const AnchorFrame frame = anchor_frame(q, slice);
  const Eigen::Index d = q.hilbert_dim;
  const Matrix& dm = dirac.matrix();
  const Matrix& g = frame.gamma.matrix();
  const Matrix& e = frame.E.matrix();
  const Matrix id = Matrix::Identity(d, d);
  const int n_spatial = q.spacetime_dim - 1;
  const double parity = n_spatial % 2 == 0 ? 1.0 : -1.0;

  const double r_selfadj = operator_norm(Matrix(dm - dm.adjoint()));
  const double r_grading = operator_norm(Matrix(dm * g - parity * g * dm));
  double r_commute = 0.0;
  std::vector<double> df_norms;
  for (const auto& f : frame.generators) {
    r_commute = std::max(r_commute,
                         operator_norm(Matrix(g * f.matrix() - f.matrix() * g)));
    df_norms.push_back(measured_norm(q, cfg, Matrix(dm * f.matrix() - f.matrix() * dm)));
  }

  double r_proj = 0.0;
  double pdp_same = 0.0, pdp_cross = 0.0;
  if (q.spacetime_dim % 2 == 0) {
    const Complex i(0, 1);
    const Matrix pp = 0.5 * (id - i * e);
    const Matrix pm = 0.5 * (id + i * e);
    r_proj = std::max({operator_norm(Matrix(pp * pp - pp)), operator_norm(Matrix(pm * pm - pm)),
                       operator_norm(Matrix(pp + pm - id))});
    pdp_same = operator_norm(Matrix(pp * dm * pp));
    pdp_cross = operator_norm(Matrix(pm * dm * pp));
  }

  const double residual = std::max({r_selfadj, r_grading, r_commute, r_proj});
  auto rep = CheckReport::make("geometry_of_space", residual,
                               cfg.tolerance_for("geometry_of_space", q.scheme, q.grid ? q.grid->h : 0.0));
  rep.set_meta("selfadjoint_residual", r_selfadj);
  rep.set_meta("grading_residual", r_grading);
  rep.set_meta("algebra_commutation_residual", r_commute);
  for (size_t i = 0; i < df_norms.size(); ++i) {
    const std::string name =
        i < frame.generators.size() && i < slice.generator_names.size() ? slice.generator_names[i]
                                                                        : std::to_string(i);
    rep.set_meta("norm_[D," + name + "]", df_norms[i]);
  }
  if (q.spacetime_dim % 2 == 0) {
    rep.set_meta("projector_residual", r_proj);
    rep.set_meta("norm_P+DP+", pdp_same);
    rep.set_meta("norm_P-DP+", pdp_cross);
  }
  return rep;
}

CheckReport check_evolution(const SpectralQuadruple& q, double t0, double t1,
                            const ValidateConfig& cfg) {
  const int i0 = q.groupoid.index_of_time(t0);
  const int i1 = q.groupoid.index_of_time(t1);
  if (i0 < 0 || i1 < 0) throw std::invalid_argument("evolution check: unknown slice time");
  const TimeSlice& s0 = q.slices.at(t0);
  const TimeSlice& s1 = q.slices.at(t1);
  const Matrix& v0 = q.groupoid.slice_unitaries[i0].matrix();
  const Matrix& v1 = q.groupoid.slice_unitaries[i1].matrix();
  const Eigen::Index d = q.hilbert_dim;

  const Matrix w = v1 * v0.adjoint();
  const double r_unitary = operator_norm(Matrix(w.adjoint() * w - Matrix::Identity(d, d)));

  double r_equiv = 0.0;
  const size_t ngen = std::min(s0.algebra_generators.size(), s1.algebra_generators.size());
  for (size_t k = 0; k < ngen; ++k) {
    const Matrix moved = w * s0.algebra_generators[k].matrix() * w.adjoint();
    r_equiv = std::max(r_equiv, operator_norm(Matrix(moved - s1.algebra_generators[k].matrix())));
  }

  // Noncommutativity witness between the two slice algebras, measured in the
  // anchor frame on smooth probe states.
  const AnchorFrame f0 = anchor_frame(q, s0);
  const AnchorFrame f1 = anchor_frame(q, s1);
  const Matrix tmove = v0.adjoint() * v1;
  double witness = 0.0;
  double norm_prod = 1.0;
  for (size_t a = 0; a < ngen; ++a) {
    for (size_t b = 0; b < ngen; ++b) {
      const Matrix& fa = f0.generators[a].matrix();
      const Matrix gb_anchor = tmove * f1.generators[b].matrix() * tmove.adjoint();
      witness = std::max(witness, witness_norm(q, cfg, Matrix(fa * gb_anchor - gb_anchor * fa)));
      norm_prod = std::max(norm_prod,
                           operator_norm(f0.generators[a]) * operator_norm(f1.generators[b]));
    }
  }

  const double dt = std::abs(t1 - t0);
  double shortfall = 0.0;
  std::string witness_rule = "none";
  if (q.mass > 0.0 && dt > 0.0) {
    const double floor = cfg.noncomm_floor_scale * norm_prod * std::pow(q.mass * dt, 3);
    shortfall = std::max(0.0, floor - witness);
    witness_rule = "require witness > " + fmt_value(floor);
  } else if (dt > 0.0) {
    const double ceiling = cfg.massless_ceiling * norm_prod;
    shortfall = std::max(0.0, witness - ceiling);
    witness_rule = "massless: require witness <= " + fmt_value(ceiling);
  }

  const double h = q.grid ? q.grid->h : 0.0;
  const double residual = std::max({r_unitary, r_equiv, shortfall});
  auto rep = CheckReport::make("evolution", residual, cfg.tolerance_for("evolution", q.scheme, h));
  rep.set_meta("unitarity_residual", r_unitary);
  rep.set_meta("equivalence_residual", r_equiv);
  rep.set_meta("noncommutativity_witness", witness);
  rep.set_meta("witness_rule", witness_rule);
  return rep;
}

std::vector<CheckReport> check_symmetric(const SpectralQuadruple& q, const ValidateConfig& cfg) {
  if (q.groupoid.kind != GroupoidKind::lie_symmetric)
    throw std::invalid_argument("check_symmetric requires a lie_symmetric groupoid");
  const auto& gr = q.groupoid;
  const size_t n = gr.lie_generators.size();
  if (!gr.structure_constants.empty() && gr.structure_constants.size() != n)
    throw std::invalid_argument("malformed structure constants");
  for (const auto& f : gr.structure_constants)
    if (f.rows() != Eigen::Index(n) || f.cols() != Eigen::Index(n))
      throw std::invalid_argument("malformed structure constants");

  const double h = q.grid ? q.grid->h : 0.0;
  const double tol = cfg.tolerance_for("symmetric", q.scheme, h);
  std::vector<CheckReport> out;

  // (a) structure-constant closure
  double r_closure = 0.0;
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = i + 1; j < n; ++j) {
      Matrix expect = Matrix::Zero(q.hilbert_dim, q.hilbert_dim);
      for (size_t k = 0; k < gr.structure_constants.size(); ++k)
        expect += gr.structure_constants[k](i, j) * gr.lie_generators[k].matrix();
      const Matrix comm = gr.lie_generators[i].matrix() * gr.lie_generators[j].matrix() -
                          gr.lie_generators[j].matrix() * gr.lie_generators[i].matrix();
      r_closure = std::max(r_closure, operator_norm(Matrix(comm - expect)));
    }
  }
  auto closure = CheckReport::make("symmetric_closure", r_closure, tol);
  if (!gr.exact_closure) {
    closure.advisory = true;
    closure.set_meta("note", "truncated representation: closure residual reported, not asserted");
  }
  out.push_back(std::move(closure));

  // (b) compact generators commute with E and gamma
  const TimeSlice& anchor = q.slices.begin()->second;
  const AnchorFrame frame = anchor_frame(q, anchor);
  double r_compact = 0.0;
  for (int idx : gr.compact_indices) {
    const Matrix& k = gr.lie_generators.at(idx).matrix();
    r_compact = std::max(r_compact, operator_norm(Matrix(k * frame.E.matrix() - frame.E.matrix() * k)));
    r_compact = std::max(r_compact,
                         operator_norm(Matrix(k * frame.gamma.matrix() - frame.gamma.matrix() * k)));
  }
  out.push_back(CheckReport::make("symmetric_compact_commutation", r_compact, tol));

  // (c) compact flows preserve the slice algebra span. Span distances are
  // measured on the resolved band for spectral lattices.
  auto banded = [&](const Matrix& m) -> Matrix {
    if (q.grid.has_value() && q.scheme == Scheme::spectral)
      return band_compress(m, *q.grid, effective_cutoff(q, cfg));
    return m;
  };
  std::vector<Matrix> basis_store;
  basis_store.reserve(frame.generators.size() + 1);
  basis_store.push_back(banded(Matrix::Identity(q.hilbert_dim, q.hilbert_dim)));
  for (const auto& g : frame.generators) basis_store.push_back(banded(g.matrix()));
  std::vector<const Matrix*> basis;
  for (const auto& b : basis_store) basis.push_back(&b);
  double r_preserve = 0.0;
  for (int idx : gr.compact_indices) {
    for (double s : {0.5 * cfg.unitary_sample_parameter, cfg.unitary_sample_parameter}) {
      const Matrix u = matrix_exponential(gr.lie_generators.at(idx), Complex(s, 0.0)).matrix();
      for (const auto& g : frame.generators) {
        const Matrix moved = banded(u * g.matrix() * u.adjoint());
        r_preserve = std::max(r_preserve, span_distance(basis, moved));
      }
    }
  }
  out.push_back(CheckReport::make("symmetric_algebra_preservation", r_preserve, tol));

  // (d) advisory: the designated evolution generator must not be compact
  if (gr.evolution_index >= 0 && !gr.compact_indices.empty()) {
    std::vector<Matrix> compact_store;
    compact_store.reserve(gr.compact_indices.size());
    for (int idx : gr.compact_indices) compact_store.push_back(banded(gr.lie_generators.at(idx).matrix()));
    std::vector<const Matrix*> compact_basis;
    for (const auto& b : compact_store) compact_basis.push_back(&b);
    const double dist =
        span_distance(compact_basis, banded(gr.lie_generators.at(gr.evolution_index).matrix()));
    const bool inside = dist <= 1e-8;
    auto rep = CheckReport::make("symmetric_evolution_noncompact", inside ? 1.0 : 0.0, 0.5);
    rep.advisory = true;
    rep.set_meta("distance_from_compact_span", dist);
    if (inside)
      rep.set_meta("warning", "designated evolution generator lies in the compact subalgebra");
    out.push_back(std::move(rep));
  }
  return out;
}

std::vector<CheckReport> validate_all(const SpectralQuadruple& q, const ValidateConfig& cfg) {
  q.validate_shape();
  std::vector<CheckReport> out;
  out.push_back(check_charge_conjugation(q, cfg));

  for (const auto& [t, slice] : q.slices) {
    const std::string at = "@t=" + fmt_time(t);
    const int gi = q.groupoid.index_of_time(t);
    if (gi < 0) throw std::invalid_argument("no generator registered for slice time " + fmt_time(t));
    const ComplexOperator& iH = q.groupoid.generators[gi];

    auto tv = check_time_vector(slice, cfg);
    const bool tv_ok = tv.pass;
    const double tv_residual = tv.residual;
    tv.name += at;
    out.push_back(std::move(tv));

    auto ve = check_volume_element(slice, q.spacetime_dim, cfg);
    ve.name += at;
    out.push_back(std::move(ve));

    const AnchorFrame frame = anchor_frame(q, slice);
    auto dependency_failed = [&](const std::string& check, const std::string& dep,
                                 double dep_residual) {
      const double tol = cfg.tolerance_for(check, q.scheme, q.grid ? q.grid->h : 0.0);
      auto rep = CheckReport::make(check + at, std::max(dep_residual, 2.0 * tol + 1e-300), tol);
      rep.set_meta("dependency_failed", dep);
      rep.set_meta("dependency_residual", dep_residual);
      return rep;
    };

    const size_t ngen = frame.generators.size();
    for (int p = 0; p < cfg.max_probe_pairs && ngen >= 2; ++p) {
      if (p >= int(ngen)) break;
      const size_t a = size_t(p) % ngen;
      const size_t b = (size_t(p) + 1) % ngen;
      const std::string la =
          a < slice.generator_names.size() ? slice.generator_names[a] : std::to_string(a);
      const std::string lb =
          b < slice.generator_names.size() ? slice.generator_names[b] : std::to_string(b);
      const std::string suffix = at + "#f=" + la + ",g=" + lb;
      if (!frame.valid) {
        auto fo = dependency_failed("first_order", "groupoid_unitarity", frame.unitarity_defect);
        fo.name = "first_order" + suffix;
        out.push_back(std::move(fo));
        continue;
      }
      auto fo = check_first_order(q, frame.generators[a], frame.generators[b], iH, cfg);
      fo.name += suffix;
      out.push_back(std::move(fo));
    }

    if (cfg.cycle.has_value()) {
      if (!tv_ok) {
        out.push_back(dependency_failed("hochschild", "time_vector", tv_residual));
      } else if (!frame.valid) {
        out.push_back(
            dependency_failed("hochschild", "groupoid_unitarity", frame.unitarity_defect));
      } else {
        auto [cand, hr] = hochschild_volume(q, slice, *cfg.cycle, iH, cfg);
        hr.name += at;
        out.push_back(std::move(hr));
      }
    }

    if (!tv_ok) {
      out.push_back(dependency_failed("geometry_of_space", "time_vector", tv_residual));
    } else if (!frame.valid) {
      out.push_back(
          dependency_failed("geometry_of_space", "groupoid_unitarity", frame.unitarity_defect));
    } else {
      // Geometry checks run in the anchor frame so the measurement band applies.
      TimeSlice anchored{slice.t, frame.generators, slice.generator_names, frame.E, frame.gamma};
      auto d = spatial_dirac(anchored, iH);
      auto ge = check_geometry_of_space(q, slice, d, cfg);
      ge.name += at;
      out.push_back(std::move(ge));
    }
  }

  std::vector<double> times;
  for (const auto& [t, s] : q.slices) times.push_back(t);
  for (size_t i = 0; i + 1 < times.size(); ++i) {
    auto ev = check_evolution(q, times[i], times[i + 1], cfg);
    ev.name += "@t0=" + fmt_time(times[i]) + ",t1=" + fmt_time(times[i + 1]);
    out.push_back(std::move(ev));
  }

  if (q.groupoid.kind == GroupoidKind::lie_symmetric) {
    auto sym = check_symmetric(q, cfg);
    out.insert(out.end(), std::make_move_iterator(sym.begin()), std::make_move_iterator(sym.end()));
  }
  return out;
}

bool all_passed(const std::vector<CheckReport>& reports) {
  for (const auto& r : reports)
    if (!r.advisory && !r.pass) return false;
  return true;
}

}  // namespace quadspec

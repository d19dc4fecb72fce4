#include "quadspec/foliation.hpp"

#include <Eigen/LU>
#include <cmath>
#include <sstream>

#include "json.hpp"

namespace quadspec {

Eigen::Matrix2cd CliffordRep::omega(int a, int b) const {
  auto pick = [&](int i) -> const Eigen::Matrix2cd& {
    if (i == 0) return gamma0;
    if (i == 1) return gamma1;
    throw std::invalid_argument("frame index out of range");
  };
  const Eigen::Matrix2cd& ga = pick(a);
  const Eigen::Matrix2cd& gb = pick(b);
  return 0.25 * (ga * gb - gb * ga);
}

CliffordRep clifford_1plus1() {
  CliffordRep rep;
  rep.gamma0 << 0, 1, -1, 0;
  rep.gamma1 << 0, 1, 1, 0;
  rep.eta << -1, 0, 0, 1;
  return rep;
}

FieldSpec FieldSpec::constant(double v) {
  FieldSpec f;
  f.kind = Kind::constant;
  f.value = v;
  return f;
}

FieldSpec FieldSpec::sampled(RealVector v) {
  FieldSpec f;
  f.kind = Kind::samples;
  f.samples = std::move(v);
  return f;
}

FieldSpec FieldSpec::named(std::string b) {
  FieldSpec f;
  f.kind = Kind::builtin;
  f.builtin = std::move(b);
  return f;
}

RealVector FieldSpec::at(Role role, double t, const Grid& g) const {
  switch (kind) {
    case Kind::constant:
      return RealVector::Constant(g.size, value);
    case Kind::samples:
      if (samples.size() != g.size)
        throw std::invalid_argument("sampled field length does not match grid size");
      return samples;
    case Kind::builtin: {
      if (builtin == "flat") {
        const double v = role == Role::shift ? 0.0 : 1.0;
        return RealVector::Constant(g.size, v);
      }
      if (builtin == "desitter") {
        double v = 1.0;
        if (role == Role::shift) v = 0.0;
        if (role == Role::metric) v = std::cosh(t) * std::cosh(t);
        return RealVector::Constant(g.size, v);
      }
      throw std::invalid_argument("unknown builtin field: " + builtin);
    }
  }
  throw std::logic_error("unreachable");
}

RealVector FieldSpec::time_derivative(Role role, double t, const Grid& g) const {
  if (kind == Kind::builtin && builtin == "desitter" && role == Role::metric)
    return RealVector::Constant(g.size, std::sinh(2.0 * t));
  return RealVector::Zero(g.size);
}

std::string FieldSpec::to_json_fragment() const {
  nlohmann::json j;
  switch (kind) {
    case Kind::constant:
      j = nlohmann::json{{"constant", value}};
      break;
    case Kind::samples: {
      std::vector<double> v(samples.data(), samples.data() + samples.size());
      j = nlohmann::json{{"samples", v}};
      break;
    }
    case Kind::builtin:
      j = builtin;
      break;
  }
  return j.dump();
}

namespace {

FieldSpec field_from_json(const nlohmann::json& j) {
  if (j.is_string()) {
    const std::string s = j.get<std::string>();
    // Accept "constant: x" / "samples: [..]" string encodings and builtin names.
    if (s.rfind("constant:", 0) == 0) return FieldSpec::constant(std::stod(s.substr(9)));
    if (s.rfind("samples:", 0) == 0) {
      const nlohmann::json arr = nlohmann::json::parse(s.substr(8));
      RealVector v(arr.size());
      for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
      return FieldSpec::sampled(std::move(v));
    }
    return FieldSpec::named(s);
  }
  if (j.is_number()) return FieldSpec::constant(j.get<double>());
  if (j.is_object()) {
    if (j.contains("constant")) return FieldSpec::constant(j["constant"].get<double>());
    if (j.contains("samples")) {
      const auto& arr = j["samples"];
      RealVector v(arr.size());
      for (size_t i = 0; i < arr.size(); ++i) v[i] = arr[i].get<double>();
      return FieldSpec::sampled(std::move(v));
    }
  }
  throw std::invalid_argument("malformed field spec: " + j.dump());
}

}  // namespace

RealVector FoliationData::lapse_at(double t) const {
  return lapse.at(FieldSpec::Role::lapse, t, grid());
}

RealVector FoliationData::shift_at(double t) const {
  return shift.at(FieldSpec::Role::shift, t, grid());
}

RealVector FoliationData::metric_at(double t) const {
  return g_thth.at(FieldSpec::Role::metric, t, grid());
}

RealVector FoliationData::metric_time_derivative_at(double t) const {
  return g_thth.time_derivative(FieldSpec::Role::metric, t, grid());
}

RealVector FoliationData::zweibein_at(double t) const {
  return metric_at(t).cwiseSqrt();
}

void FoliationData::validate_at(double t) const {
  if (grid_size < 4) throw std::invalid_argument("grid_size must be at least 4");
  if (mass < 0.0) throw std::invalid_argument("mass must be nonnegative");
  const RealVector n = lapse_at(t);
  const RealVector g = metric_at(t);
  const RealVector s = shift_at(t);
  if (!n.allFinite() || !g.allFinite() || !s.allFinite())
    throw NumericalError("foliation fields are not finite");
  if (n.minCoeff() <= 0.0) throw std::invalid_argument("lapse must be positive everywhere");
  if (g.minCoeff() <= 0.0) throw std::invalid_argument("g_thth must be positive everywhere");
}

std::string FoliationData::to_json() const {
  nlohmann::json j;
  j["grid_size"] = grid_size;
  j["mass"] = mass;
  j["scheme"] = to_string(scheme);
  j["fields"]["lapse"] = nlohmann::json::parse(lapse.to_json_fragment());
  j["fields"]["shift"] = nlohmann::json::parse(shift.to_json_fragment());
  j["fields"]["g_thth"] = nlohmann::json::parse(g_thth.to_json_fragment());
  return j.dump(2);
}

FoliationData FoliationData::from_json_text(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("foliation JSON parse error: ") + e.what());
  }
  FoliationData f;
  try {
    f.grid_size = j.at("grid_size").get<int>();
    f.mass = j.value("mass", 0.0);
    f.scheme = scheme_from_string(j.value("scheme", "spectral"));
    const auto& fields = j.at("fields");
    f.lapse = field_from_json(fields.at("lapse"));
    f.shift = field_from_json(fields.at("shift"));
    f.g_thth = field_from_json(fields.at("g_thth"));
  } catch (const nlohmann::json::exception& e) {
    throw std::invalid_argument(std::string("malformed foliation document: ") + e.what());
  }
  return f;
}

Matrix SpinConnectionData::theta_component(const CliffordRep& rep) const {
  const Eigen::Matrix2cd g01 = rep.gamma0 * rep.gamma1;
  Matrix r = Matrix::Zero(2 * w01_theta.size(), 2 * w01_theta.size());
  for (Eigen::Index j = 0; j < w01_theta.size(); ++j)
    r.block<2, 2>(2 * j, 2 * j) = 0.5 * w01_theta[j] * g01;
  return r;
}

Matrix SpinConnectionData::time_component(const CliffordRep& rep) const {
  const Eigen::Matrix2cd g01 = rep.gamma0 * rep.gamma1;
  Matrix r = Matrix::Zero(2 * w01_time.size(), 2 * w01_time.size());
  for (Eigen::Index j = 0; j < w01_time.size(); ++j)
    r.block<2, 2>(2 * j, 2 * j) = 0.5 * w01_time[j] * g01;
  return r;
}

namespace {

// Fraction of field energy in the top quarter of the Fourier band; a crude
// smoothness indicator for sampled data.
double rough_fraction(const RealVector& f, const Grid& g) {
  const int m = g.size;
  RealVector centered = f.array() - f.mean();
  const double total = centered.squaredNorm();
  if (total <= 1e-300) return 0.0;
  double high = 0.0;
  for (int k = m / 4; k <= m / 2; ++k) {
    Complex acc(0, 0);
    for (int j = 0; j < m; ++j) acc += centered[j] * std::polar(1.0, -k * g.thetas[j]);
    double w = (k == m / 2) ? 1.0 : 2.0;
    high += w * std::norm(acc) / m;
  }
  return high / total;
}

}  // namespace

SpinConnectionData spin_connection(const FoliationData& fol, double t) {
  fol.validate_at(t);
  const Grid g = fol.grid();
  const Eigen::MatrixXd d = derivative_matrix(g, fol.scheme);

  const RealVector n = fol.lapse_at(t);
  const RealVector a = fol.zweibein_at(t);
  const RealVector s = fol.shift_at(t);
  const RealVector dtg = fol.metric_time_derivative_at(t);
  const RealVector dta = dtg.cwiseQuotient(2.0 * a);

  SpinConnectionData c;
  c.w01_theta = (dta - RealVector(d * RealVector(a.cwiseProduct(s)))).cwiseQuotient(n);
  c.w01_time = RealVector(d * n).cwiseQuotient(n.cwiseProduct(a));
  c.degraded_accuracy = rough_fraction(n, g) > 1e-3 || rough_fraction(a, g) > 1e-3 ||
                        rough_fraction(s, g) > 1e-3;
  return c;
}

ComplexOperator build_hamiltonian(const FoliationData& fol, double t, const CliffordRep& rep) {
  fol.validate_at(t);
  const Grid g = fol.grid();
  const Eigen::MatrixXd d = derivative_matrix(g, fol.scheme);

  const RealVector n = fol.lapse_at(t);
  const RealVector a = fol.zweibein_at(t);
  const RealVector s = fol.shift_at(t);
  const RealVector c = n.cwiseQuotient(a);  // N / sqrt(g_thth)

  const Eigen::MatrixXd sym_c = 0.5 * (c.asDiagonal() * d + d * c.asDiagonal());
  const Eigen::MatrixXd sym_s = 0.5 * (s.asDiagonal() * d + d * s.asDiagonal());

  const Eigen::Matrix2cd g01 = rep.gamma0 * rep.gamma1;
  const Complex mi(0.0, -1.0);

  Matrix h = Matrix::Zero(2 * g.size, 2 * g.size);
  for (int x = 0; x < g.size; ++x) {
    for (int y = 0; y < g.size; ++y) {
      h.block<2, 2>(2 * x, 2 * y) += mi * sym_c(x, y) * g01;
      if (sym_s(x, y) != 0.0)
        h.block<2, 2>(2 * x, 2 * y) += mi * sym_s(x, y) * Eigen::Matrix2cd::Identity();
    }
    // +i m N gamma0  (= -m N sigma2 in this representation)
    h.block<2, 2>(2 * x, 2 * x) += Complex(0.0, 1.0) * fol.mass * n[x] * rep.gamma0;
  }
  return ComplexOperator(std::move(h));
}

ComplexOperator evolve(const FoliationData& fol, double t0, double t1, int steps) {
  if (steps < 1) throw std::invalid_argument("steps must be at least 1");
  const Grid g = fol.grid();
  const Eigen::Index dim = 2 * g.size;
  const CliffordRep rep = clifford_1plus1();
  const double dt = (t1 - t0) / steps;

  Matrix u = Matrix::Identity(dim, dim);
  if (dt == 0.0) return ComplexOperator(std::move(u));

  for (int k = 0; k < steps; ++k) {
    const double tm = t0 + (k + 0.5) * dt;
    const Matrix h = build_hamiltonian(fol, tm, rep).matrix();
    const Complex half(0.0, 0.5 * dt);
    const Matrix plus = Matrix::Identity(dim, dim) + half * h;
    const Matrix minus = Matrix::Identity(dim, dim) - half * h;
    u = plus.partialPivLu().solve(Matrix(minus * u));
  }
  if (!u.allFinite()) throw NumericalError("evolution produced non-finite entries");
  return ComplexOperator(std::move(u));
}

ComplexOperator transport(const ComplexOperator& o, const ComplexOperator& u,
                          double unitarity_tol) {
  if (o.dim() != u.dim()) throw std::invalid_argument("operator dimension mismatch");
  const double defect =
      operator_norm(Matrix(u.matrix().adjoint() * u.matrix() - Matrix::Identity(u.dim(), u.dim())));
  if (defect > unitarity_tol)
    throw std::invalid_argument("transport requires a unitary within tolerance; defect = " +
                                std::to_string(defect));
  return ComplexOperator(u.matrix() * o.matrix() * u.matrix().adjoint());
}

}  // namespace quadspec

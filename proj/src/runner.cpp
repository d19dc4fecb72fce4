#include "quadspec/runner.hpp"

#include <filesystem>
#include <fstream>
#include <sstream>

#include "json.hpp"
#include "quadspec/builders.hpp"
#include "quadspec/reconstruct.hpp"
#include "quadspec/report_io.hpp"
#include "quadspec/version.hpp"

namespace quadspec {

namespace {

using nlohmann::json;

struct ParsedConfig {
  json doc;
  unsigned long long seed = 0;
};

ParsedConfig parse_config(const RunConfig& cfg) {
  ParsedConfig out;
  try {
    out.doc = json::parse(cfg.config_text.empty() ? "{}" : cfg.config_text);
  } catch (const json::exception& e) {
    throw std::invalid_argument(std::string("config parse error: ") + e.what());
  }
  if (!out.doc.is_object()) throw std::invalid_argument("config must be a JSON object");
  out.seed = out.doc.value("seed", 0ull);
  if (cfg.seed_override.has_value()) out.seed = (unsigned long long)(*cfg.seed_override);
  return out;
}

std::string canonical_run_string(const RunConfig& cfg, const ParsedConfig& parsed) {
  // nlohmann::json::dump emits object keys sorted; stable across runs.
  std::ostringstream os;
  os << cfg.command << "\n" << parsed.doc.dump() << "\n" << cfg.format << "\nseed=" << parsed.seed;
  for (const auto& [k, v] : cfg.tol_overrides) os << "\n" << k << "=" << format_g17(v);
  return os.str();
}

ExampleSpec example_spec_from(const json& j) {
  ExampleSpec s;
  s.name = j.value("name", std::string("desitter"));
  s.grid_size = j.value("grid_size", 128);
  s.mass = j.value("mass", 1.0);
  s.scheme = scheme_from_string(j.value("scheme", std::string("spectral")));
  s.radius = j.value("radius", 1.0);
  if (j.contains("slice_times")) {
    s.slice_times.clear();
    for (const auto& t : j.at("slice_times")) s.slice_times.push_back(t.get<double>());
  }
  s.steps_per_half_unit = j.value("steps_per_half_unit", 200);
  s.generator_modes = j.value("generator_modes", 3);
  return s;
}

// The run owns either a named example or an explicit foliation document.
BuiltExample built_from_config(const json& doc) {
  if (doc.contains("example")) {
    const ExampleSpec spec = example_spec_from(doc.at("example"));
    return build_example(spec);
  }
  if (doc.contains("foliation")) {
    FoliationData fol = FoliationData::from_json_text(doc.at("foliation").dump());
    std::vector<double> times = {0.0};
    if (doc.contains("slice_times")) {
      times.clear();
      for (const auto& t : doc.at("slice_times")) times.push_back(t.get<double>());
    }
    const int steps = doc.value("steps_per_half_unit", 200);
    const int modes = doc.value("generator_modes", 3);
    return {fol, assemble_quadruple(fol, times, steps, modes)};
  }
  throw std::invalid_argument("config needs an \"example\" or \"foliation\" section");
}

void apply_fault(SpectralQuadruple& q, const std::string& fault) {
  if (fault == "none" || fault.empty()) return;
  if (fault == "scale_E") {
    for (auto& [t, slice] : q.slices) slice.E = Complex(1.1, 0.0) * slice.E;
    return;
  }
  if (fault == "scale_C") {
    q.C = AntilinearOperator(Complex(2.0, 0.0) * q.C.matrix_part);
    return;
  }
  if (fault == "scale_U") {
    if (q.groupoid.slice_unitaries.empty())
      throw std::invalid_argument("scale_U fault needs at least one slice unitary");
    auto& u = q.groupoid.slice_unitaries.back();
    u = Complex(1.05, 0.0) * u;
    return;
  }
  throw std::invalid_argument("unknown fault fixture: " + fault);
}

ValidateConfig validate_config_from(const json& doc, const RunConfig& cfg, const Grid& grid) {
  ValidateConfig v;
  const json j = doc.value("validate", json::object());
  v.band_cutoff = j.value("band_cutoff", -1);
  v.witness_kernel_order = j.value("kernel_order", 3);
  v.max_probe_pairs = j.value("max_probe_pairs", 3);
  v.noncomm_floor_scale = j.value("noncomm_floor_scale", 1e-4);
  v.massless_ceiling = j.value("massless_ceiling", 1e-6);
  if (j.contains("tolerances"))
    for (const auto& [k, val] : j.at("tolerances").items())
      v.tol_overrides[k] = val.get<double>();
  for (const auto& [k, val] : cfg.tol_overrides) v.tol_overrides[k] = val;
  const std::string cycle = j.value("cycle", std::string("default"));
  if (cycle == "default") v.cycle = default_volume_cycle(grid);
  else if (cycle != "none")
    throw std::invalid_argument("unknown cycle option: " + cycle);
  return v;
}

void write_file(const std::filesystem::path& p, const std::string& content) {
  std::ofstream f(p, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + p.string());
  f << content;
}

std::string manifest_json(const ReportHeader& h, const std::string& format,
                          const std::vector<std::string>& outputs) {
  std::ostringstream os;
  os << "{\n  \"tool\": \"quadspec\",\n  \"version\": \"" << QUADSPEC_VERSION
     << "\",\n  \"command\": \"" << json_escape(h.command) << "\",\n  \"config_hash\": \""
     << h.config_hash << "\",\n  \"run_id\": \"" << h.run_id << "\",\n  \"format\": \""
     << json_escape(format) << "\",\n  \"outputs\": [";
  for (size_t i = 0; i < outputs.size(); ++i) {
    os << "\"" << json_escape(outputs[i]) << "\"";
    if (i + 1 < outputs.size()) os << ", ";
  }
  os << "]\n}\n";
  return os.str();
}

std::vector<double> dts_from(const json& j) {
  std::vector<double> dts;
  if (j.contains("dts"))
    for (const auto& d : j.at("dts")) dts.push_back(d.get<double>());
  else
    dts = SeriesConfig{}.dts;
  return dts;
}

}  // namespace

std::vector<CheckReport> run_validation_checks(const std::string& config_text,
                                               const std::map<std::string, double>& tol_overrides,
                                               std::optional<long long> seed_override) {
  RunConfig rc;
  rc.command = "validate";
  rc.config_text = config_text;
  rc.tol_overrides = tol_overrides;
  rc.seed_override = seed_override;
  ParsedConfig parsed = parse_config(rc);
  BuiltExample built = built_from_config(parsed.doc);
  ValidateConfig vcfg = validate_config_from(parsed.doc, rc, built.foliation.grid());
  const std::string fault =
      parsed.doc.value("validate", json::object()).value("fault", std::string("none"));
  apply_fault(built.quadruple, fault);
  return validate_all(built.quadruple, vcfg);
}

RunResult run(const RunConfig& cfg) {
  RunResult result;
  try {
    if (cfg.command != "validate" && cfg.command != "evolve" && cfg.command != "reconstruct" &&
        cfg.command != "example" && cfg.command != "search")
      throw std::invalid_argument("unknown command: " + cfg.command);
    if (cfg.format != "json" && cfg.format != "csv")
      throw std::invalid_argument("unknown report format: " + cfg.format);

    ParsedConfig parsed = parse_config(cfg);
    const std::string canon = canonical_run_string(cfg, parsed);
    ReportHeader header;
    header.command = cfg.command;
    header.config_hash = hex64(fnv1a64(parsed.doc.dump()));
    header.run_id = hex64(fnv1a64(canon));

    std::filesystem::create_directories(cfg.out_dir);
    const std::filesystem::path out_dir(cfg.out_dir);
    const std::string ext = cfg.format;
    auto report_path = [&](const std::string& stem) {
      return out_dir / (stem + "_" + header.run_id + "." + ext);
    };

    if (cfg.command == "validate") {
      BuiltExample built = built_from_config(parsed.doc);
      ValidateConfig vcfg = validate_config_from(parsed.doc, cfg, built.foliation.grid());
      const std::string fault =
          parsed.doc.value("validate", json::object()).value("fault", std::string("none"));
      apply_fault(built.quadruple, fault);
      const auto checks = validate_all(built.quadruple, vcfg);
      result.checks_total = int(checks.size());
      for (const auto& c : checks)
        if (!c.advisory && !c.pass) ++result.checks_failed;
      const std::string body =
          cfg.format == "json" ? checks_to_json(checks, header) : checks_to_csv(checks);
      const auto p = report_path("validate");
      write_file(p, body);
      result.files.push_back(p.string());
      result.exit_code = result.checks_failed == 0 ? 0 : 1;
      result.message = std::to_string(result.checks_total - result.checks_failed) + "/" +
                       std::to_string(result.checks_total) + " checks passed";
    } else if (cfg.command == "evolve") {
      BuiltExample built = built_from_config(parsed.doc);
      const json j = parsed.doc.value("evolve", json::object());
      const double t0 = j.value("t0", 0.0);
      const double t1 = j.value("t1", 0.5);
      const int steps = j.value("steps", 1000);
      const auto u = evolve(built.foliation, t0, t1, steps);
      const auto back = evolve(built.foliation, t1, t0, steps);
      const Eigen::Index d = u.dim();
      const double unitarity =
          operator_norm(Matrix(u.matrix().adjoint() * u.matrix() - Matrix::Identity(d, d)));
      const double composition =
          operator_norm(Matrix(back.matrix() * u.matrix() - Matrix::Identity(d, d)));
      const auto h = build_hamiltonian(built.foliation, t0, clifford_1plus1());
      const double herm = operator_norm(h - h.adjoint());

      std::vector<CheckReport> checks;
      checks.push_back(CheckReport::make("evolution_unitarity", unitarity, 1e-8));
      checks.push_back(CheckReport::make("evolution_composition", composition, 1e-8));
      checks.push_back(CheckReport::make("hamiltonian_hermiticity", herm, 1e-10));
      for (auto& c : checks) {
        c.set_meta("t0", t0);
        c.set_meta("t1", t1);
        c.set_meta("steps", double(steps));
      }
      result.checks_total = int(checks.size());
      for (const auto& c : checks)
        if (!c.pass) ++result.checks_failed;
      const std::string body =
          cfg.format == "json" ? checks_to_json(checks, header) : checks_to_csv(checks);
      const auto p = report_path("evolve");
      write_file(p, body);
      result.files.push_back(p.string());
      result.exit_code = result.checks_failed == 0 ? 0 : 1;
      result.message = "evolution diagnostics written";
    } else if (cfg.command == "reconstruct") {
      BuiltExample built = built_from_config(parsed.doc);
      const json j = parsed.doc.value("reconstruct", json::object());
      SeriesConfig scfg;
      scfg.steps_per_unit = j.value("steps_per_unit", scfg.steps_per_unit);
      scfg.kernel_order = j.value("kernel_order", scfg.kernel_order);
      scfg.band_cutoff = j.value("band_cutoff", scfg.band_cutoff);
      const double t0 = j.value("t0", 0.0);
      const Grid grid = built.foliation.grid();
      const ProbeField f = make_probe(grid, j.value("f", std::string("sin")));
      const ProbeField g = make_probe(grid, j.value("g", std::string("sin")));
      const auto r = reconstruct_metric(built.foliation, t0, f, g, dts_from(j), scfg);
      const std::string body =
          cfg.format == "json" ? reconstruction_to_json(r, header) : reconstruction_to_csv(r);
      const auto p = report_path("reconstruct");
      write_file(p, body);
      result.files.push_back(p.string());
      result.exit_code = 0;
      result.message = "max rel errors: lapse " + format_g17(r.max_lapse_rel_err) +
                       ", inv metric " + format_g17(r.max_inv_metric_rel_err);
    } else if (cfg.command == "example") {
      BuiltExample built = built_from_config(parsed.doc);
      const auto h = build_hamiltonian(built.foliation, 0.0, clifford_1plus1());
      std::ostringstream os;
      os << "{\n  ";
      os << "\"tool\": \"quadspec\",\n  \"version\": \"" << QUADSPEC_VERSION
         << "\",\n  \"command\": \"example\",\n  \"config_hash\": \"" << header.config_hash
         << "\",\n  \"run_id\": \"" << header.run_id << "\",\n";
      os << "  \"hilbert_dim\": " << built.quadruple.hilbert_dim << ",\n";
      os << "  \"slice_times\": [";
      const auto& times = built.quadruple.groupoid.times;
      for (size_t i = 0; i < times.size(); ++i) {
        os << format_g17(times[i]);
        if (i + 1 < times.size()) os << ", ";
      }
      os << "],\n";
      os << "  \"hamiltonian_hermiticity_residual\": " << format_g17(operator_norm(h - h.adjoint()))
         << ",\n";
      os << "  \"foliation\": " << built.foliation.to_json() << "\n}\n";
      const auto p = out_dir / ("example_" + header.run_id + ".json");
      write_file(p, os.str());
      result.files.push_back(p.string());
      result.exit_code = 0;
      result.message = "example written";
    } else {  // search
      const json j = parsed.doc.value("search", json::object());
      FiniteSearchConfig scfg;
      scfg.hilbert_dim = j.value("hilbert_dim", 4);
      scfg.spacetime_dim = j.value("spacetime_dim", 2);
      scfg.attempts = j.value("attempts", 32);
      scfg.tolerance = j.value("tolerance", 1e-10);
      scfg.seed = parsed.seed;
      const auto found = finite_quadruple_search(scfg);

      std::ostringstream os;
      os << "{\n  ";
      os << "\"tool\": \"quadspec\",\n  \"version\": \"" << QUADSPEC_VERSION
         << "\",\n  \"command\": \"search\",\n  \"config_hash\": \"" << header.config_hash
         << "\",\n  \"run_id\": \"" << header.run_id << "\",\n";
      os << "  \"attempts\": " << scfg.attempts << ",\n  \"seed\": " << scfg.seed << ",\n";
      os << "  \"found\": " << found.size() << ",\n  \"candidates\": [\n";
      for (size_t i = 0; i < found.size(); ++i) {
        const auto& q = found[i];
        os << "    {\"hilbert_dim\": " << q.hilbert_dim
           << ", \"spacetime_dim\": " << q.spacetime_dim << ", \"algebra\": \""
           << json_escape(q.slices.begin()->second.generator_names.front()) << "\""
           << ", \"noncommutativity\": \"vacuous (single slice)\"}";
        if (i + 1 < found.size()) os << ",";
        os << "\n";
      }
      os << "  ]\n}\n";
      const auto p = out_dir / ("search_" + header.run_id + ".json");
      write_file(p, os.str());
      result.files.push_back(p.string());
      result.exit_code = 0;
      result.message = std::to_string(found.size()) + " candidates found";
    }

    const auto mp = out_dir / ("manifest_" + header.run_id + ".json");
    std::vector<std::string> names;
    for (const auto& f : result.files)
      names.push_back(std::filesystem::path(f).filename().string());
    write_file(mp, manifest_json(header, cfg.format, names));
    result.files.push_back(mp.string());
  } catch (const NumericalError& e) {
    result.exit_code = 3;
    result.message = std::string("numerical failure: ") + e.what();
  } catch (const std::invalid_argument& e) {
    result.exit_code = 2;
    result.message = std::string("malformed config: ") + e.what();
  } catch (const std::exception& e) {
    result.exit_code = 2;
    result.message = e.what();
  }
  return result;
}

}  // namespace quadspec

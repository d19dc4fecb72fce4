#include "quadspec/quadspec_c.h"

#include <cstdlib>
#include <cstring>
#include <string>

#include "json.hpp"
#include "quadspec/builders.hpp"
#include "quadspec/report_io.hpp"
#include "quadspec/runner.hpp"
#include "quadspec/version.hpp"

namespace {

thread_local std::string g_last_error;

void set_error(const std::string& msg) { g_last_error = msg; }
void clear_error() { g_last_error.clear(); }

char* dup_string(const std::string& s) {
  char* out = static_cast<char*>(std::malloc(s.size() + 1));
  if (!out) return nullptr;
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

}  // namespace

struct qs_quadruple {
  quadspec::BuiltExample built;
};

struct qs_checks {
  std::vector<quadspec::CheckReport> reports;
  quadspec::ReportHeader header;
};

extern "C" {

const char* qs_version(void) { return QUADSPEC_VERSION; }

const char* qs_last_error(void) { return g_last_error.c_str(); }

int qs_run(const char* command, const char* config_json, const char* out_dir, const char* format,
           const char* const* tol_overrides, int n_overrides, long long seed_override) {
  clear_error();
  if (!command || !out_dir) {
    set_error("command and out_dir are required");
    return QS_BAD_CONFIG;
  }
  quadspec::RunConfig cfg;
  cfg.command = command;
  cfg.config_text = config_json ? config_json : "{}";
  cfg.out_dir = out_dir;
  cfg.format = format && *format ? format : "json";
  if (seed_override >= 0) cfg.seed_override = seed_override;
  for (int i = 0; i < n_overrides; ++i) {
    if (!tol_overrides || !tol_overrides[i]) {
      set_error("null tolerance override");
      return QS_BAD_CONFIG;
    }
    const std::string kv = tol_overrides[i];
    const auto eq = kv.find('=');
    if (eq == std::string::npos) {
      set_error("tolerance override must be name=value: " + kv);
      return QS_BAD_CONFIG;
    }
    try {
      cfg.tol_overrides[kv.substr(0, eq)] = std::stod(kv.substr(eq + 1));
    } catch (const std::exception&) {
      set_error("bad tolerance override value: " + kv);
      return QS_BAD_CONFIG;
    }
  }
  const quadspec::RunResult r = quadspec::run(cfg);
  if (r.exit_code != 0) set_error(r.message);
  return r.exit_code;
}

qs_quadruple* qs_quadruple_build(const char* config_json) {
  clear_error();
  try {
    nlohmann::json doc = nlohmann::json::parse(config_json ? config_json : "{}");
    if (doc.contains("example")) {
      quadspec::ExampleSpec spec;
      const auto& j = doc.at("example");
      spec.name = j.value("name", std::string("desitter"));
      spec.grid_size = j.value("grid_size", 128);
      spec.mass = j.value("mass", 1.0);
      spec.scheme = quadspec::scheme_from_string(j.value("scheme", std::string("spectral")));
      spec.radius = j.value("radius", 1.0);
      if (j.contains("slice_times")) {
        spec.slice_times.clear();
        for (const auto& t : j.at("slice_times")) spec.slice_times.push_back(t.get<double>());
      }
      spec.steps_per_half_unit = j.value("steps_per_half_unit", 200);
      spec.generator_modes = j.value("generator_modes", 3);
      return new qs_quadruple{quadspec::build_example(spec)};
    }
    if (doc.contains("foliation")) {
      quadspec::FoliationData fol =
          quadspec::FoliationData::from_json_text(doc.at("foliation").dump());
      std::vector<double> times = {0.0};
      if (doc.contains("slice_times")) {
        times.clear();
        for (const auto& t : doc.at("slice_times")) times.push_back(t.get<double>());
      }
      auto q = quadspec::assemble_quadruple(fol, times, doc.value("steps_per_half_unit", 200),
                                            doc.value("generator_modes", 3));
      return new qs_quadruple{quadspec::BuiltExample{std::move(fol), std::move(q)}};
    }
    set_error("config needs an \"example\" or \"foliation\" section");
    return nullptr;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void qs_quadruple_free(qs_quadruple* q) { delete q; }

long long qs_quadruple_hilbert_dim(const qs_quadruple* q) {
  return q ? static_cast<long long>(q->built.quadruple.hilbert_dim) : -1;
}

int qs_quadruple_slice_count(const qs_quadruple* q) {
  return q ? static_cast<int>(q->built.quadruple.slices.size()) : -1;
}

qs_checks* qs_validate(const qs_quadruple* q, const char* config_json) {
  clear_error();
  if (!q) {
    set_error("null quadruple handle");
    return nullptr;
  }
  try {
    nlohmann::json doc =
        nlohmann::json::parse(config_json && *config_json ? config_json : "{}");
    const nlohmann::json vj = doc.value("validate", nlohmann::json::object());
    quadspec::ValidateConfig vcfg;
    vcfg.band_cutoff = vj.value("band_cutoff", -1);
    vcfg.witness_kernel_order = vj.value("kernel_order", 3);
    vcfg.max_probe_pairs = vj.value("max_probe_pairs", 3);
    if (vj.contains("tolerances"))
      for (const auto& [k, val] : vj.at("tolerances").items())
        vcfg.tol_overrides[k] = val.get<double>();
    const std::string cycle = vj.value("cycle", std::string("default"));
    if (cycle == "default" && q->built.quadruple.grid.has_value())
      vcfg.cycle = quadspec::default_volume_cycle(*q->built.quadruple.grid);

    auto quad = q->built.quadruple;
    const std::string fault = vj.value("fault", std::string("none"));
    if (fault == "scale_E") {
      for (auto& [t, slice] : quad.slices) slice.E = quadspec::Complex(1.1, 0.0) * slice.E;
    } else if (fault == "scale_C") {
      quad.C = quadspec::AntilinearOperator(quadspec::Complex(2.0, 0.0) * quad.C.matrix_part);
    } else if (fault == "scale_U") {
      if (!quad.groupoid.slice_unitaries.empty())
        quad.groupoid.slice_unitaries.back() =
            quadspec::Complex(1.05, 0.0) * quad.groupoid.slice_unitaries.back();
    } else if (fault != "none" && !fault.empty()) {
      set_error("unknown fault fixture: " + fault);
      return nullptr;
    }

    auto out = new qs_checks;
    out->reports = quadspec::validate_all(quad, vcfg);
    out->header.command = "validate";
    out->header.config_hash = quadspec::hex64(quadspec::fnv1a64(doc.dump()));
    out->header.run_id = out->header.config_hash;
    return out;
  } catch (const std::exception& e) {
    set_error(e.what());
    return nullptr;
  }
}

void qs_checks_free(qs_checks* c) { delete c; }

int qs_checks_count(const qs_checks* c) { return c ? static_cast<int>(c->reports.size()) : -1; }

int qs_checks_all_passed(const qs_checks* c) {
  if (!c) return 0;
  return quadspec::all_passed(c->reports) ? 1 : 0;
}

const char* qs_checks_name(const qs_checks* c, int i) {
  if (!c || i < 0 || i >= static_cast<int>(c->reports.size())) return nullptr;
  return c->reports[size_t(i)].name.c_str();
}

double qs_checks_residual(const qs_checks* c, int i) {
  if (!c || i < 0 || i >= static_cast<int>(c->reports.size())) return -1.0;
  return c->reports[size_t(i)].residual;
}

double qs_checks_tolerance(const qs_checks* c, int i) {
  if (!c || i < 0 || i >= static_cast<int>(c->reports.size())) return -1.0;
  return c->reports[size_t(i)].tol;
}

int qs_checks_passed(const qs_checks* c, int i) {
  if (!c || i < 0 || i >= static_cast<int>(c->reports.size())) return 0;
  return c->reports[size_t(i)].pass ? 1 : 0;
}

int qs_checks_advisory(const qs_checks* c, int i) {
  if (!c || i < 0 || i >= static_cast<int>(c->reports.size())) return 0;
  return c->reports[size_t(i)].advisory ? 1 : 0;
}

char* qs_checks_to_json(const qs_checks* c) {
  if (!c) return nullptr;
  return dup_string(quadspec::checks_to_json(c->reports, c->header));
}

char* qs_checks_to_csv(const qs_checks* c) {
  if (!c) return nullptr;
  return dup_string(quadspec::checks_to_csv(c->reports));
}

void qs_string_free(char* s) { std::free(s); }

}  // extern "C"

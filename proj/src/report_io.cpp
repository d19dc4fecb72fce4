#include "quadspec/report_io.hpp"

#include <cstdio>
#include <sstream>

#include "quadspec/version.hpp"

namespace quadspec {

std::string format_g17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

std::string json_escape(const std::string& s) {
  std::string out;
  out.reserve(s.size() + 8);
  for (char c : s) {
    switch (c) {
      case '"': out += "\\\""; break;
      case '\\': out += "\\\\"; break;
      case '\n': out += "\\n"; break;
      case '\r': out += "\\r"; break;
      case '\t': out += "\\t"; break;
      default:
        if (static_cast<unsigned char>(c) < 0x20) {
          char buf[8];
          std::snprintf(buf, sizeof(buf), "\\u%04x", c);
          out += buf;
        } else {
          out += c;
        }
    }
  }
  return out;
}

std::uint64_t fnv1a64(const std::string& s) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string hex64(std::uint64_t v) {
  char buf[24];
  std::snprintf(buf, sizeof(buf), "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

namespace {

void emit_header(std::ostringstream& os, const ReportHeader& h) {
  os << "\"tool\": \"quadspec\",\n"
     << "  \"version\": \"" << QUADSPEC_VERSION << "\",\n"
     << "  \"command\": \"" << json_escape(h.command) << "\",\n"
     << "  \"config_hash\": \"" << h.config_hash << "\",\n"
     << "  \"run_id\": \"" << h.run_id << "\"";
}

std::string csv_quote(const std::string& s) {
  std::string out = "\"";
  for (char c : s) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

}  // namespace

std::string checks_to_json(const std::vector<CheckReport>& checks, const ReportHeader& header) {
  int passed = 0, failed = 0, advisory = 0;
  for (const auto& c : checks) {
    if (c.advisory) ++advisory;
    else if (c.pass) ++passed;
    else ++failed;
  }
  std::ostringstream os;
  os << "{\n  ";
  emit_header(os, header);
  os << ",\n  \"summary\": {\"total\": " << checks.size() << ", \"passed\": " << passed
     << ", \"failed\": " << failed << ", \"advisory\": " << advisory << "},\n";
  os << "  \"checks\": [\n";
  for (size_t i = 0; i < checks.size(); ++i) {
    const auto& c = checks[i];
    os << "    {\"name\": \"" << json_escape(c.name) << "\", \"residual\": " << format_g17(c.residual)
       << ", \"tol\": " << format_g17(c.tol) << ", \"pass\": " << (c.pass ? "true" : "false")
       << ", \"advisory\": " << (c.advisory ? "true" : "false") << ", \"meta\": {";
    for (size_t k = 0; k < c.meta.size(); ++k) {
      os << "\"" << json_escape(c.meta[k].first) << "\": \"" << json_escape(c.meta[k].second)
         << "\"";
      if (k + 1 < c.meta.size()) os << ", ";
    }
    os << "}}";
    if (i + 1 < checks.size()) os << ",";
    os << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string checks_to_csv(const std::vector<CheckReport>& checks) {
  std::ostringstream os;
  os << "name,residual,tol,pass,advisory,meta\n";
  for (const auto& c : checks) {
    std::string meta;
    for (size_t k = 0; k < c.meta.size(); ++k) {
      meta += c.meta[k].first + "=" + c.meta[k].second;
      if (k + 1 < c.meta.size()) meta += ";";
    }
    os << csv_quote(c.name) << "," << format_g17(c.residual) << "," << format_g17(c.tol) << ","
       << (c.pass ? "true" : "false") << "," << (c.advisory ? "true" : "false") << ","
       << csv_quote(meta) << "\n";
  }
  return os.str();
}

std::string reconstruction_to_json(const ReconstructionResult& r, const ReportHeader& header) {
  std::ostringstream os;
  os << "{\n  ";
  emit_header(os, header);
  os << ",\n  \"summary\": {\"n_valid\": " << r.n_valid
     << ", \"max_lapse_rel_err\": " << format_g17(r.max_lapse_rel_err)
     << ", \"max_inv_metric_rel_err\": " << format_g17(r.max_inv_metric_rel_err)
     << ", \"max_shift_abs_err\": " << format_g17(r.max_shift_abs_err)
     << ", \"conformal_only\": " << (r.conformal_only ? "true" : "false")
     << ", \"fit_residual\": " << format_g17(r.fit_residual) << "},\n";
  os << "  \"rows\": [\n";
  const int m = int(r.theta.size());
  for (int j = 0; j < m; ++j) {
    os << "    {\"theta\": " << format_g17(r.theta[j]) << ", \"lapse\": " << format_g17(r.lapse[j])
       << ", \"inv_metric\": " << format_g17(r.inv_metric[j])
       << ", \"shift\": " << format_g17(r.shift[j])
       << ", \"valid\": " << (r.valid[j] ? "true" : "false");
    if (r.has_reference) {
      os << ", \"lapse_ref\": " << format_g17(r.lapse_ref[j])
         << ", \"inv_metric_ref\": " << format_g17(r.inv_metric_ref[j])
         << ", \"shift_ref\": " << format_g17(r.shift_ref[j])
         << ", \"lapse_rel_err\": " << format_g17(r.lapse_rel_err[j])
         << ", \"inv_metric_rel_err\": " << format_g17(r.inv_metric_rel_err[j])
         << ", \"shift_abs_err\": " << format_g17(r.shift_abs_err[j]);
    }
    os << "}";
    if (j + 1 < m) os << ",";
    os << "\n";
  }
  os << "  ]\n}\n";
  return os.str();
}

std::string reconstruction_to_csv(const ReconstructionResult& r) {
  std::ostringstream os;
  os << "theta,lapse,inv_metric,shift,valid,lapse_ref,inv_metric_ref,shift_ref,"
        "lapse_rel_err,inv_metric_rel_err,shift_abs_err\n";
  const int m = int(r.theta.size());
  for (int j = 0; j < m; ++j) {
    os << format_g17(r.theta[j]) << "," << format_g17(r.lapse[j]) << ","
       << format_g17(r.inv_metric[j]) << "," << format_g17(r.shift[j]) << ","
       << (r.valid[j] ? "true" : "false");
    if (r.has_reference) {
      os << "," << format_g17(r.lapse_ref[j]) << "," << format_g17(r.inv_metric_ref[j]) << ","
         << format_g17(r.shift_ref[j]) << "," << format_g17(r.lapse_rel_err[j]) << ","
         << format_g17(r.inv_metric_rel_err[j]) << "," << format_g17(r.shift_abs_err[j]);
    } else {
      os << ",,,,,,";
    }
    os << "\n";
  }
  return os.str();
}

}  // namespace quadspec

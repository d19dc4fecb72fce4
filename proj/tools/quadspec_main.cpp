// quadspec: build lattice foliation examples, run the axiom suite, evolve
// states, reconstruct metrics, and emit machine-readable reports.
//
// Links only the C API of the shared library.
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "quadspec/quadspec_c.h"

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path, std::ios::binary);
  if (!f) throw CLI::ValidationError("--config", "cannot read config file: " + path);
  std::ostringstream os;
  os << f.rdbuf();
  return os.str();
}

struct CommonOpts {
  std::string config_path;
  std::string out_dir = ".";
  std::vector<std::string> tol;
  long long seed = -1;
  std::string format = "json";
};

void add_common(CLI::App* cmd, CommonOpts& opts, bool config_required) {
  auto* c = cmd->add_option("--config", opts.config_path, "JSON configuration file");
  if (config_required) c->required();
  cmd->add_option("--out", opts.out_dir, "output directory for reports");
  cmd->add_option("--tol", opts.tol, "tolerance override name=value (repeatable)");
  cmd->add_option("--seed", opts.seed, "seed override (nonnegative integer)");
  cmd->add_option("--format", opts.format, "report format: json or csv")
      ->check(CLI::IsMember({"json", "csv"}));
}

int run_command(const std::string& command, const CommonOpts& opts) {
  const std::string config = opts.config_path.empty() ? "{}" : read_file(opts.config_path);
  std::vector<const char*> overrides;
  overrides.reserve(opts.tol.size());
  for (const auto& t : opts.tol) overrides.push_back(t.c_str());
  const int rc = qs_run(command.c_str(), config.c_str(), opts.out_dir.c_str(),
                        opts.format.c_str(), overrides.empty() ? nullptr : overrides.data(),
                        int(overrides.size()), opts.seed);
  if (rc != 0) std::cerr << "quadspec " << command << ": " << qs_last_error() << "\n";
  return rc;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"lattice spectral-quadruple toolkit"};
  app.set_version_flag("--version", std::string(qs_version()));
  app.require_subcommand(1);

  CommonOpts validate_opts, evolve_opts, reconstruct_opts, example_opts, search_opts;
  auto* validate = app.add_subcommand("validate", "run the axiom residual suite");
  add_common(validate, validate_opts, true);
  auto* evolve = app.add_subcommand("evolve", "evolution diagnostics over a time interval");
  add_common(evolve, evolve_opts, true);
  auto* reconstruct =
      app.add_subcommand("reconstruct", "recover lapse, shift and spatial metric");
  add_common(reconstruct, reconstruct_opts, true);
  auto* example = app.add_subcommand("example", "build a named example and dump its data");
  add_common(example, example_opts, true);
  auto* search = app.add_subcommand("search", "random search for finite quadruples");
  add_common(search, search_opts, true);

  CLI11_PARSE(app, argc, argv);

  try {
    if (validate->parsed()) return run_command("validate", validate_opts);
    if (evolve->parsed()) return run_command("evolve", evolve_opts);
    if (reconstruct->parsed()) return run_command("reconstruct", reconstruct_opts);
    if (example->parsed()) return run_command("example", example_opts);
    if (search->parsed()) return run_command("search", search_opts);
  } catch (const CLI::ValidationError& e) {
    std::cerr << "quadspec: " << e.what() << "\n";
    return 2;
  }
  return 2;
}

// jsnl: simulator and verification CLI for the Jensen-Shannon nonlinear
// Schroedinger dynamics. Subcommands: evolve, measures, potential, verify,
// separability, sweep. Exit codes: 0 success, 1 check failure, 2 config error.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <sstream>

#include "jsnl/runner.hpp"

namespace {

struct CommonArgs {
  std::string config_path;
  std::string out_dir;
  std::uint64_t seed = 0;
  bool strict = true;
};

void add_common(CLI::App* cmd, CommonArgs& args, bool config_required) {
  auto* opt = cmd->add_option("--config", args.config_path, "flat key = value config file");
  if (config_required) opt->required();
  cmd->add_option("--out", args.out_dir, "output directory (overrides config out.dir)");
  cmd->add_option("--seed", args.seed, "seed for random-state generators");
  cmd->add_flag("--strict,!--no-strict", args.strict,
                "reject unknown config keys (default on)");
}

int run(jsnl::Scenario scenario, const CommonArgs& args) {
  std::string text;
  if (!args.config_path.empty()) {
    std::ifstream in(args.config_path);
    if (!in) {
      std::cerr << "error: cannot read config file '" << args.config_path << "'\n";
      return 2;
    }
    std::stringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }

  jsnl::RunConfig rc;
  rc.scenario = scenario;
  rc.seed = args.seed;
  rc.strict = args.strict;
  try {
    rc.config = jsnl::ConfigMap::parse(text);
    const std::string cfg_out = rc.config.get_string("out.dir", "");
    rc.out_dir = !args.out_dir.empty() ? args.out_dir : (!cfg_out.empty() ? cfg_out : "out");
    return jsnl::run_scenario(rc);
  } catch (const jsnl::Error& e) {
    switch (e.code()) {
      case jsnl::Errc::unknown_key:
      case jsnl::Errc::missing_key:
      case jsnl::Errc::type_error:
      case jsnl::Errc::bad_argument:
        std::cerr << "config error: " << e.what() << '\n';
        return 2;
      default:
        std::cerr << "error: " << e.what() << '\n';
        return 1;
    }
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Jensen-Shannon nonlinear Schroedinger simulator"};
  app.require_subcommand(1);

  struct Sub {
    jsnl::Scenario scenario;
    CommonArgs args;
  };
  std::vector<std::pair<CLI::App*, Sub>> subs;
  subs.reserve(6);  // CLI11 keeps pointers into args; no reallocation allowed

  auto make = [&](const char* name, const char* desc, jsnl::Scenario sc, bool need_config) {
    CLI::App* cmd = app.add_subcommand(name, desc);
    subs.emplace_back(cmd, Sub{sc, {}});
    add_common(cmd, subs.back().second.args, need_config);
  };

  make("evolve", "integrate the nonlinear Schroedinger equation", jsnl::Scenario::evolve, true);
  make("measures", "information measures between two densities", jsnl::Scenario::measures, true);
  make("potential", "quantum potentials and nonlinear term of a density",
       jsnl::Scenario::potential, true);
  make("verify", "Hamiltonian-structure check battery", jsnl::Scenario::verify, false);
  make("separability", "two-particle no-signaling experiment",
       jsnl::Scenario::separability, true);
  make("sweep", "convergence sweep over l, dt, n, delta, or pi", jsnl::Scenario::sweep, true);

  CLI11_PARSE(app, argc, argv);

  for (auto& [cmd, sub] : subs) {
    if (cmd->parsed()) return run(sub.scenario, sub.args);
  }
  return 2;
}

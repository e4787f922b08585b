// Command-line front end: single gate runs, parameter sweeps and the
// built-in validation suite.
//
// Exit codes: 0 success, 1 usage error, 2 integration failure,
//             3 validation-suite failure.

#include <CLI11.hpp>

#include <fstream>
#include <iostream>
#include <set>
#include <string>
#include <vector>

#include "iongate/check.hpp"
#include "iongate/gates.hpp"
#include "iongate/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitUsage = 1;
constexpr int kExitIntegration = 2;
constexpr int kExitValidation = 3;

iongate::GateKind parse_gate(const std::string& name) {
  if (name == "phase") return iongate::GateKind::Phase;
  if (name == "swap") return iongate::GateKind::Swap;
  throw CLI::ValidationError("--gate", "expected 'phase' or 'swap'");
}

iongate::RunMode parse_mode(const std::string& name) {
  if (name == "coherent") return iongate::RunMode::Coherent;
  if (name == "conditional") return iongate::RunMode::Conditional;
  if (name == "coherent+projection") return iongate::RunMode::CoherentProjection;
  throw CLI::ValidationError(
      "--mode", "expected 'coherent', 'conditional' or 'coherent+projection'");
}

// Values from --config <file> become extra "--key=value" tokens for any key
// the command line did not set, so explicit flags always win.
std::vector<std::string> expand_config(std::vector<std::string> args) {
  std::string path;
  std::vector<std::string> rest;
  for (size_t i = 0; i < args.size(); ++i) {
    if (args[i] == "--config") {
      if (i + 1 >= args.size()) {
        throw std::invalid_argument("--config expects a file path");
      }
      path = args[++i];
    } else if (args[i].rfind("--config=", 0) == 0) {
      path = args[i].substr(9);
    } else {
      rest.push_back(args[i]);
    }
  }
  if (path.empty()) return rest;

  std::ifstream in(path);
  if (!in) {
    throw std::invalid_argument("cannot read config file '" + path + "'");
  }
  std::set<std::string> given;
  for (const auto& tok : rest) {
    if (tok.rfind("--", 0) == 0) given.insert(tok.substr(0, tok.find('=')));
  }
  for (const auto& [key, value] : iongate::read_config(in)) {
    if (!given.count("--" + key)) rest.push_back("--" + key + "=" + value);
  }
  return rest;
}

void warn_regime(const iongate::GateParams& params, iongate::RunMode mode) {
  if (mode == iongate::RunMode::Conditional && !params.in_recommended_regime()) {
    std::cerr << "warning: conditional run outside the recommended regime "
                 "(g3 ~ g2 and 10 <= gamma3/g2 <= 100)\n";
  }
}

struct RunArgs {
  std::string gate = "phase";
  std::string mode = "coherent";
  double omega = 0.1;
  double g3 = 0.0;
  double gamma3 = 0.0;
  int n_max = 3;
  std::string init = "00";
  double tol = iongate::kDefaultTol;
  std::string traj_path;
  int traj_samples = 200;
  bool strict_projection = false;
};

int cmd_run(const RunArgs& args) {
  const iongate::GateKind kind = parse_gate(args.gate);
  const iongate::RunMode mode = parse_mode(args.mode);
  const iongate::GateParams params{args.omega, args.g3, args.gamma3, args.n_max};
  const iongate::HilbertSpace space(args.n_max);
  const iongate::StateVector psi0 =
      iongate::parse_initial_state(space, args.init);
  if (!iongate::in_qubit_sector(psi0)) {
    throw CLI::ValidationError("--init", "initial state must lie in the qubit "
                                         "sector (n = 0, ion levels 0/1)");
  }
  warn_regime(params, mode);

  iongate::GateReport report = iongate::run_gate(kind, params, psi0, mode, args.tol);
  if (args.strict_projection && mode == iongate::RunMode::CoherentProjection) {
    // Re-score with the stricter projector that also rejects levels 2 and 3.
    const iongate::Operator op = kind == iongate::GateKind::Phase
                                     ? build_coherent(space, params)
                                     : [&] {
                                         iongate::GateParams p = params;
                                         p.g3 = 0.0;
                                         p.gamma3 = 0.0;
                                         return build_conditional_swap(space, p);
                                       }();
    const iongate::EvolutionResult evolved =
        iongate::evolve(op, psi0, report.gate_duration, args.tol);
    auto [projected, success] =
        iongate::project_phonon_ground(evolved.final_state, true);
    const iongate::StateVector target = iongate::ideal_gate(kind, psi0);
    report.success_numeric = success;
    report.fidelity_numeric =
        projected.norm_squared() > 0.0
            ? std::norm(iongate::inner(target, projected)) /
                  projected.norm_squared()
            : 0.0;
  }
  iongate::write_report(std::cout, report);

  if (!args.traj_path.empty()) {
    const iongate::Operator op = [&] {
      switch (mode) {
        case iongate::RunMode::Conditional:
          return kind == iongate::GateKind::Phase
                     ? build_conditional_phase(space, params)
                     : build_conditional_swap(space, params);
        default: {
          if (kind == iongate::GateKind::Phase)
            return build_coherent(space, params);
          iongate::GateParams p = params;
          p.g3 = 0.0;
          p.gamma3 = 0.0;
          return build_conditional_swap(space, p);
        }
      }
    }();
    std::ofstream out(args.traj_path);
    if (!out) {
      throw CLI::ValidationError("--traj", "cannot open '" + args.traj_path +
                                               "' for writing");
    }
    iongate::write_trajectory(
        out, iongate::evolve_trajectory(op, psi0, report.gate_duration,
                                        args.tol, args.traj_samples));
  }
  return kExitOk;
}

struct SweepArgs {
  std::string preset_name;
  std::string gate = "phase";
  std::vector<std::string> modes;
  double omega_start = 0.0;
  double omega_stop = 0.0;
  int omega_count = 0;
  double g3 = -1.0;
  double gamma3 = -1.0;
  int n_max = 0;
  std::vector<std::string> init;
  double tol = 0.0;
  std::string out_path;
};

int cmd_sweep(const SweepArgs& args, const CLI::App& cmd) {
  iongate::SweepSpec spec =
      args.preset_name.empty() ? iongate::SweepSpec{}
                               : iongate::preset(args.preset_name);
  if (cmd.count("--gate")) spec.gate = parse_gate(args.gate);
  if (cmd.count("--mode")) {
    spec.modes.clear();
    for (const auto& m : args.modes) spec.modes.push_back(parse_mode(m));
  }
  if (cmd.count("--omega-start")) spec.omega_start = args.omega_start;
  if (cmd.count("--omega-stop")) spec.omega_stop = args.omega_stop;
  if (cmd.count("--omega-count")) spec.omega_count = args.omega_count;
  if (cmd.count("--g3")) spec.g3 = args.g3;
  if (cmd.count("--gamma3")) spec.gamma3 = args.gamma3;
  if (cmd.count("--nmax")) spec.n_max = args.n_max;
  if (cmd.count("--init")) spec.initial_states = args.init;
  if (cmd.count("--tol")) spec.tol = args.tol;
  spec.output_path = args.out_path;

  for (const iongate::RunMode mode : spec.modes) {
    warn_regime({spec.omega_start, spec.g3, spec.gamma3, spec.n_max}, mode);
  }

  const std::vector<iongate::RunRecord> records = iongate::run_sweep(spec);
  std::ofstream out(spec.output_path);
  if (!out) {
    throw CLI::ValidationError("--out", "cannot open '" + spec.output_path +
                                            "' for writing");
  }
  iongate::write_csv(out, records);
  long failed = 0;
  for (const auto& r : records) {
    if (!r.report) ++failed;
  }
  std::cerr << "wrote " << records.size() << " records to " << spec.output_path;
  if (failed > 0) std::cerr << " (" << failed << " failed points)";
  std::cerr << '\n';
  return kExitOk;
}

int cmd_check(int n_max, double tol) {
  const std::vector<iongate::CheckResult> results =
      iongate::run_validation_suite({n_max, tol});
  bool all_passed = true;
  for (const auto& r : results) {
    std::cout << (r.passed ? "[PASS] " : "[FAIL] ") << r.name << " — "
              << r.detail << '\n';
    all_passed = all_passed && r.passed;
  }
  std::cout << (all_passed ? "validation suite passed"
                           : "validation suite FAILED")
            << '\n';
  return all_passed ? kExitOk : kExitValidation;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Trapped-ion two-qubit phase gate and SWAP simulator\n"
               "(rates in units of g2, time in units of 1/g2)"};
  app.require_subcommand(1);

  RunArgs run_args;
  CLI::App* run = app.add_subcommand(
      "run", "Run a single gate and print a key=value report");
  run->add_option("--gate", run_args.gate, "Gate: phase or swap")
      ->capture_default_str();
  run->add_option("--mode", run_args.mode,
                  "coherent, conditional or coherent+projection")
      ->capture_default_str();
  run->add_option("--omega", run_args.omega, "Rabi frequency Omega/g2")
      ->capture_default_str();
  run->add_option("--g3", run_args.g3, "1-3 sideband coupling g3/g2")
      ->capture_default_str();
  run->add_option("--gamma3", run_args.gamma3, "Level-3 decay rate Gamma3/g2")
      ->capture_default_str();
  run->add_option("--nmax", run_args.n_max, "Phonon truncation")
      ->capture_default_str();
  run->add_option("--init", run_args.init,
                  "Initial state: 00, 01, 10, 11 or a superposition like 00+01")
      ->capture_default_str();
  run->add_option("--tol", run_args.tol, "Certified per-amplitude error bound")
      ->capture_default_str();
  run->add_option("--traj", run_args.traj_path,
                  "Write a checkpoint trajectory to this path");
  run->add_option("--traj-samples", run_args.traj_samples,
                  "Checkpoints in the trajectory")
      ->capture_default_str();
  run->add_flag("--strict-projection", run_args.strict_projection,
                "Projection also rejects ion levels 2 and 3 at n = 0");
  std::string config_dummy;
  run->add_option("--config", config_dummy,
                  "Flat key=value config file; flags override");

  SweepArgs sweep_args;
  CLI::App* sweep = app.add_subcommand(
      "sweep", "Sweep Omega/g2 over a grid and write a CSV file");
  sweep->add_option("--preset", sweep_args.preset_name,
                    "fig2, fig4 or fig5 preset");
  sweep->add_option("--gate", sweep_args.gate, "Gate: phase or swap");
  sweep->add_option("--mode", sweep_args.modes,
                    "One or more run modes (row group per mode)");
  sweep->add_option("--omega-start", sweep_args.omega_start, "Grid start (> 0)");
  sweep->add_option("--omega-stop", sweep_args.omega_stop, "Grid stop (<= 1)");
  sweep->add_option("--omega-count", sweep_args.omega_count, "Grid points (>= 2)");
  sweep->add_option("--g3", sweep_args.g3, "1-3 sideband coupling g3/g2");
  sweep->add_option("--gamma3", sweep_args.gamma3, "Level-3 decay rate");
  sweep->add_option("--nmax", sweep_args.n_max, "Phonon truncation");
  sweep->add_option("--init", sweep_args.init, "Initial states (repeatable)");
  sweep->add_option("--tol", sweep_args.tol, "Certified error bound");
  sweep->add_option("--out", sweep_args.out_path, "Output CSV path")->required();
  sweep->add_option("--config", config_dummy,
                    "Flat key=value config file; flags override");

  int check_nmax = 3;
  double check_tol = iongate::kDefaultTol;
  CLI::App* check = app.add_subcommand(
      "check", "Run the built-in validation suite (exit 3 on failure)");
  check->add_option("--nmax", check_nmax, "Phonon truncation")
      ->capture_default_str();
  check->add_option("--tol", check_tol, "Certified error bound")
      ->capture_default_str();

  try {
    const std::vector<std::string> args =
        expand_config({argv + 1, argv + argc});
    std::vector<const char*> cargv{argv[0]};
    for (const auto& a : args) cargv.push_back(a.c_str());
    app.parse(static_cast<int>(cargv.size()), cargv.data());
    if (app.got_subcommand(run)) return cmd_run(run_args);
    if (app.got_subcommand(sweep)) return cmd_sweep(sweep_args, *sweep);
    if (app.got_subcommand(check)) return cmd_check(check_nmax, check_tol);
    return kExitUsage;
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return kExitUsage;
  } catch (const iongate::IntegrationError& e) {
    std::cerr << "integration failure: " << e.what() << '\n';
    return kExitIntegration;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kExitUsage;
  }
}

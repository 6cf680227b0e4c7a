#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "thziscap/config.hpp"
#include "thziscap/optimizer.hpp"
#include "thziscap/sweep.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitInfeasible = 2;
constexpr int kExitConfig = 3;
constexpr int kExitNumeric = 4;

struct CommonOpts {
  std::string config_path;
  std::string preset = "table1";
  std::string out_path;
  std::string fading;
  std::string eh;
  std::uint64_t seed = 0;
  bool seed_set = false;
};

thziscap::ScenarioConfig resolve_config(const CommonOpts& opts) {
  thziscap::ScenarioConfig cfg;
  if (!opts.config_path.empty()) {
    cfg = thziscap::load_config(opts.config_path);
  } else {
    cfg.params = thziscap::preset(opts.preset);
  }
  if (opts.fading == "mean") {
    cfg.params.fading.mode = thziscap::FadingModel::Mode::DeterministicMean;
  } else if (opts.fading == "mc") {
    cfg.params.fading.mode = thziscap::FadingModel::Mode::MonteCarlo;
  } else if (!opts.fading.empty()) {
    throw thziscap::ConfigError("--fading must be 'mean' or 'mc'");
  }
  if (opts.eh == "linear") {
    cfg.params.harvest = thziscap::EnergyHarvestModel::linear(0.5);
  } else if (opts.eh == "nonlinear") {
    cfg.params.harvest = thziscap::EnergyHarvestModel::reference_fit();
  } else if (!opts.eh.empty()) {
    throw thziscap::ConfigError("--eh must be 'linear' or 'nonlinear'");
  }
  if (opts.seed_set) cfg.params.fading.seed = opts.seed;
  if (!opts.out_path.empty()) cfg.output_path = opts.out_path;
  return cfg;
}

void print_outcome(const char* problem, const thziscap::OptimizationOutcome& out,
                   const char* objective_name) {
  std::printf("problem: %s\n", problem);
  std::printf("status: %s\n", thziscap::to_string(out.status));
  if (out.status != thziscap::SolveStatus::Infeasible) {
    std::printf("%s: %.10g\n", objective_name, out.objective);
    std::printf("rho0_star: %.10g\n", out.rho0);
    std::printf("rho1_star: %.10g\n", out.rho1);
  }
  if (out.interval.empty) {
    std::printf("feasible_interval: empty\n");
  } else {
    std::printf("feasible_interval: [%.6f, %.6f] peak %.6f\n", out.interval.lo,
                out.interval.hi, out.interval.peak);
  }
  std::printf("evaluations: %ld\n", out.evaluations);
}

int run_optimize(const CommonOpts& opts, const std::string& problem, double r_eps,
                 double e_eps, bool verify) {
  const thziscap::ScenarioConfig cfg = resolve_config(opts);
  thziscap::LinkObjectives obj(cfg.params);

  thziscap::OptimizationOutcome out;
  const char* objective_name = nullptr;
  if (problem == "p1") {
    out = thziscap::maximize_energy_subject_to_rate(obj, r_eps, cfg.solver);
    objective_name = "energy_ws";
    print_outcome("p1 (max E s.t. R >= r_eps)", out, objective_name);
  } else if (problem == "p2") {
    out = thziscap::maximize_rate_subject_to_energy(obj, e_eps, cfg.solver);
    objective_name = "rate_bits_per_hz";
    print_outcome("p2 (max R s.t. E >= e_eps)", out, objective_name);
  } else {
    throw thziscap::ConfigError("--problem must be 'p1' or 'p2'");
  }

  if (verify && out.status != thziscap::SolveStatus::Infeasible) {
    const thziscap::OptimizationOutcome oracle =
        problem == "p1" ? thziscap::grid_oracle_p1(obj, r_eps, cfg.solver.grid_step)
                        : thziscap::grid_oracle_p2(obj, e_eps, cfg.solver.grid_step);
    const double gap = out.objective == 0.0
                           ? 0.0
                           : (out.objective - oracle.objective) / out.objective;
    std::printf("verify_grid_%s: %.10g at (%.6g, %.6g), gap %.4g%%, evaluations %ld\n",
                objective_name, oracle.objective, oracle.rho0, oracle.rho1, 100.0 * gap,
                oracle.evaluations);
  }
  return out.status == thziscap::SolveStatus::Infeasible ? kExitInfeasible : kExitOk;
}

int run_sweep_cmd(const CommonOpts& opts) {
  thziscap::ScenarioConfig cfg = resolve_config(opts);
  if (!cfg.sweep) throw thziscap::ConfigError("config has no sweep section");
  const auto records = thziscap::run_sweep(cfg);
  if (cfg.output_path.empty()) {
    thziscap::write_csv(records, std::cout);
  } else {
    std::ofstream f(cfg.output_path, std::ios::binary);
    if (!f) throw thziscap::ConfigError("cannot open output file: " + cfg.output_path);
    thziscap::write_csv(records, f);
    std::fprintf(stderr, "wrote %zu records to %s\n", records.size(),
                 cfg.output_path.c_str());
  }
  return kExitOk;
}

int run_presets() {
  for (const std::string& name : thziscap::preset_names()) {
    const thziscap::SystemParams p = thziscap::preset(name);
    std::printf("%s: f=%.6g GHz, P_t=%.6g W, d=%.6g m, T=%.6g s, N_r=%.6g W, "
                "l0=%.6g m, alpha=%.6g 1/s, K=%.6g\n",
                name.c_str(), p.frequency_hz / 1e9, p.tx_power_w, p.distance_m,
                p.total_time_s, p.noise_power_w, p.initial_misalignment_m,
                p.misalignment_decay_per_s, p.fading.rician_k);
  }
  return kExitOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Two-phase THz sensing/SWIPT link simulator and optimizer"};
  app.require_subcommand(1);

  CommonOpts opts;
  std::string problem;
  double r_eps = 0.0, e_eps = 0.0;
  bool verify = false;

  auto add_common = [&](CLI::App* cmd) {
    cmd->add_option("--config", opts.config_path, "JSON scenario file");
    cmd->add_option("--preset", opts.preset, "named preset (default table1)");
    cmd->add_option("--out", opts.out_path, "output CSV path");
    cmd->add_option("--fading", opts.fading, "fading mode: mean|mc");
    cmd->add_option("--eh", opts.eh, "harvest model: linear|nonlinear");
    cmd->add_option("--seed", opts.seed, "fading seed")->each([&](const std::string&) {
      opts.seed_set = true;
    });
  };

  CLI::App* sweep = app.add_subcommand("sweep", "run the configured parameter sweep");
  add_common(sweep);

  CLI::App* optimize = app.add_subcommand("optimize", "solve p1 or p2");
  add_common(optimize);
  optimize->add_option("--problem", problem, "p1 (max E) or p2 (max R)")->required();
  optimize->add_option("--r-eps", r_eps, "rate floor for p1 (bits/Hz)");
  optimize->add_option("--e-eps", e_eps, "energy floor for p2 (W*s)");
  optimize->add_flag("--verify", verify, "also run the grid oracle and print the gap");

  CLI::App* presets = app.add_subcommand("presets", "list named presets");
  (void)presets;

  CLI::App* validate = app.add_subcommand("validate-config", "parse and validate a config");
  std::string validate_path;
  validate->add_option("--config", validate_path, "JSON scenario file")->required();

  CLI11_PARSE(app, argc, argv);

  try {
    if (sweep->parsed()) return run_sweep_cmd(opts);
    if (optimize->parsed()) return run_optimize(opts, problem, r_eps, e_eps, verify);
    if (presets->parsed()) return run_presets();
    if (validate->parsed()) {
      thziscap::load_config(validate_path);
      std::printf("ok\n");
      return kExitOk;
    }
  } catch (const thziscap::ConfigError& e) {
    std::fprintf(stderr, "config error: %s\n", e.what());
    return kExitConfig;
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return kExitNumeric;
  }
  return kExitOk;
}

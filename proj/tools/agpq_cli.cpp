// Command-line front end: optimize-agp, sweep, exact, dump-circuit.

#include <fstream>
#include <iostream>
#include <string>

#include <CLI11.hpp>

#include "agpq/errors.hpp"
#include "agpq/experiment.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kConfigError = 2;
constexpr int kAllRowsFailed = 3;

struct Common {
  std::string config;
  std::string out;
  std::string mode;
  long shots = -1;
  long long seed = -1;
};

void add_common(CLI::App* sub, Common& c) {
  sub->add_option("--config", c.config, "Experiment config (YAML)")->required();
  sub->add_option("--out", c.out, "Output path (overrides the config)");
  sub->add_option("--mode", c.mode, "Estimator mode")->check(CLI::IsMember({"exact", "shots"}));
  sub->add_option("--shots", c.shots, "Shots per Pauli term (shots mode)");
  sub->add_option("--seed", c.seed, "Base random seed");
}

agpq::ExperimentConfig load(const Common& c) {
  auto cfg = agpq::load_config(c.config);
  if (c.mode == "exact") cfg.estimator.mode = agpq::EstimatorMode::Exact;
  if (c.mode == "shots") cfg.estimator.mode = agpq::EstimatorMode::Shots;
  if (c.shots >= 0) cfg.estimator.shots_per_term = c.shots;
  if (c.seed >= 0) cfg.vqe.seed = cfg.estimator.seed = static_cast<std::uint64_t>(c.seed);
  cfg.validate();
  return cfg;
}

std::ofstream open_out(const std::string& path) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write '" + path + "'");
  return out;
}

// Replaces the extension of `path` (or appends one).
std::string with_extension(const std::string& path, const std::string& ext) {
  const auto slash = path.find_last_of('/');
  const auto dot = path.find_last_of('.');
  if (dot == std::string::npos || (slash != std::string::npos && dot < slash)) return path + ext;
  return path.substr(0, dot) + ext;
}

int status_code(const agpq::SweepResult& res) {
  if (res.rows.empty()) return kOk;
  for (const auto& r : res.rows)
    if (r.ok()) return kOk;
  return kAllRowsFailed;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"AGP-based pair-hopper VQE for the reduced BCS Hamiltonian"};
  app.require_subcommand(1);

  Common agp_opts, sweep_opts, exact_opts, dump_opts;
  auto* agp = app.add_subcommand("optimize-agp", "Optimize AGP geminals per grid point");
  add_common(agp, agp_opts);
  auto* sweep = app.add_subcommand("sweep", "HF, AGP, VQE and exact energies over the G/G_c grid");
  add_common(sweep, sweep_opts);
  auto* exact = app.add_subcommand("exact", "HF and exact-diagonalization energies over the grid");
  add_common(exact, exact_opts);
  auto* dump = app.add_subcommand("dump-circuit", "Write a circuit in line-per-gate text form");
  add_common(dump, dump_opts);
  std::string which = "full";
  dump->add_option("--which", which, "prep | projection | ansatz | full")
      ->check(CLI::IsMember({"prep", "projection", "ansatz", "full"}));

  CLI11_PARSE(app, argc, argv);

  try {
    if (agp->parsed()) {
      const auto cfg = load(agp_opts);
      const auto res = agpq::run_optimize_agp(cfg);
      auto out = open_out(agp_opts.out.empty() ? cfg.output.geminals : agp_opts.out);
      agpq::write_geminal_csv(out, res, cfg.M);
      return status_code(res);
    }
    if (sweep->parsed()) {
      const auto cfg = load(sweep_opts);
      const auto res = agpq::run_sweep(cfg);
      const std::string csv = sweep_opts.out.empty() ? cfg.output.csv : sweep_opts.out;
      const std::string json =
          sweep_opts.out.empty() ? cfg.output.summary : with_extension(sweep_opts.out, ".json");
      auto out = open_out(csv);
      agpq::write_sweep_csv(out, res);
      open_out(json) << agpq::sweep_summary_json(cfg, res);
      return status_code(res);
    }
    if (exact->parsed()) {
      const auto cfg = load(exact_opts);
      const auto res = agpq::run_exact(cfg);
      auto out = open_out(exact_opts.out.empty() ? "exact.csv" : exact_opts.out);
      agpq::write_exact_csv(out, res);
      return status_code(res);
    }
    if (dump->parsed()) {
      const auto cfg = load(dump_opts);
      const auto circuit = agpq::dump_circuit(cfg, agpq::parse_circuit_part(which));
      open_out(dump_opts.out.empty() ? cfg.output.circuit : dump_opts.out) << agpq::to_text(circuit);
      return kOk;
    }
  } catch (const agpq::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfigError;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return 1;
  }
  return kOk;
}

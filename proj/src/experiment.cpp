#include "agpq/experiment.hpp"

#include <cmath>
#include <cstdio>
#include <fstream>
#include <iostream>
#include <limits>
#include <set>
#include <sstream>

#include <json.hpp>
#include <yaml-cpp/yaml.h>

#include "agpq/errors.hpp"
#include "agpq/exact.hpp"

namespace agpq {

namespace {

constexpr double kNaN = std::numeric_limits<double>::quiet_NaN();

void check_keys(const YAML::Node& node, const std::string& where, const std::set<std::string>& allowed) {
  if (!node.IsMap()) throw ConfigError("'" + where + "' must be a mapping");
  for (const auto& kv : node) {
    const auto key = kv.first.as<std::string>();
    if (!allowed.count(key)) throw ConfigError("unknown key '" + key + "' in " + where);
  }
}

template <class T>
void read(const YAML::Node& node, const char* key, T& dst, const std::string& where) {
  if (!node[key]) return;
  try {
    dst = node[key].as<T>();
  } catch (const YAML::Exception&) {
    throw ConfigError("bad value for '" + where + "." + key + "'");
  }
}

}  // namespace

std::vector<double> default_grid() {
  std::vector<double> g(13);
  for (int i = 0; i < 13; ++i) g[i] = -2.0 + 5.0 * i / 12.0;
  return g;
}

void ExperimentConfig::validate() const {
  if (M < 1 || M > 30) throw ConfigError("M must satisfy 1 <= M <= 30 (got " + std::to_string(M) + ")");
  if (N < 0 || N > M)
    throw ConfigError("N must satisfy 0 <= N <= M (got N = " + std::to_string(N) +
                      ", M = " + std::to_string(M) + ")");
  if (!(delta_eps > 0.0) || !std::isfinite(delta_eps)) throw ConfigError("delta_eps must be positive");
  for (double g : g_over_gc_grid)
    if (!std::isfinite(g)) throw ConfigError("grid values must be finite");
  if (estimator.mode == EstimatorMode::Shots && estimator.shots_per_term < 1)
    throw ConfigError("shots mode needs shots >= 1");
  if (vqe.restarts < 1) throw ConfigError("optimizer.restarts must be >= 1");
  if (!(vqe.gradient_tol > 0.0) || !(agp.gradient_tol > 0.0))
    throw ConfigError("gradient tolerances must be positive");
  if (vqe.max_iterations < 1) throw ConfigError("optimizer.max_iterations must be >= 1");
}

ExperimentConfig parse_config(const std::string& text) {
  YAML::Node root;
  try {
    root = YAML::Load(text);
  } catch (const YAML::Exception& e) {
    throw ConfigError(std::string("malformed config: ") + e.what());
  }
  if (!root || root.IsNull()) throw ConfigError("empty config");
  check_keys(root, "config", {"model", "grid", "estimator", "optimizer", "circuit", "output"});

  ExperimentConfig cfg;
  const auto model = root["model"];
  if (!model) throw ConfigError("missing 'model' section");
  check_keys(model, "model", {"M", "N", "delta_eps"});
  if (!model["M"]) throw ConfigError("missing model.M");
  read(model, "M", cfg.M, "model");
  cfg.N = cfg.M / 2;
  read(model, "N", cfg.N, "model");
  read(model, "delta_eps", cfg.delta_eps, "model");

  cfg.g_over_gc_grid = default_grid();
  if (root["grid"]) {
    if (!root["grid"].IsSequence()) throw ConfigError("'grid' must be a list of G/G_c values");
    read(root, "grid", cfg.g_over_gc_grid, "config");
  }

  if (const auto est = root["estimator"]) {
    check_keys(est, "estimator", {"mode", "shots"});
    std::string mode = "exact";
    read(est, "mode", mode, "estimator");
    if (mode == "exact") cfg.estimator.mode = EstimatorMode::Exact;
    else if (mode == "shots") cfg.estimator.mode = EstimatorMode::Shots;
    else throw ConfigError("estimator.mode must be 'exact' or 'shots'");
    read(est, "shots", cfg.estimator.shots_per_term, "estimator");
  }
  if (const auto opt = root["optimizer"]) {
    check_keys(opt, "optimizer", {"restarts", "gradient_tol", "max_iterations", "perturbation", "seed",
                                  "agp_gradient_tol", "agp_max_evaluations"});
    read(opt, "restarts", cfg.vqe.restarts, "optimizer");
    read(opt, "gradient_tol", cfg.vqe.gradient_tol, "optimizer");
    read(opt, "max_iterations", cfg.vqe.max_iterations, "optimizer");
    read(opt, "perturbation", cfg.vqe.perturbation, "optimizer");
    read(opt, "seed", cfg.vqe.seed, "optimizer");
    read(opt, "agp_gradient_tol", cfg.agp.gradient_tol, "optimizer");
    read(opt, "agp_max_evaluations", cfg.agp.max_evaluations, "optimizer");
  }
  cfg.estimator.seed = cfg.vqe.seed;
  if (const auto c = root["circuit"]) {
    check_keys(c, "circuit", {"G", "g_over_gc", "phi"});
    if (c["G"]) {
      double G = 0.0;
      read(c, "G", G, "circuit");
      cfg.circuit.G = G;
    }
    read(c, "g_over_gc", cfg.circuit.g_over_gc, "circuit");
    read(c, "phi", cfg.circuit.phi, "circuit");
  }
  if (const auto out = root["output"]) {
    check_keys(out, "output", {"csv", "summary", "geminals", "circuit"});
    read(out, "csv", cfg.output.csv, "output");
    read(out, "summary", cfg.output.summary, "output");
    read(out, "geminals", cfg.output.geminals, "output");
    read(out, "circuit", cfg.output.circuit, "output");
  }
  cfg.validate();
  return cfg;
}

ExperimentConfig load_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw ConfigError("cannot read config file '" + path + "'");
  std::stringstream ss;
  ss << in.rdbuf();
  return parse_config(ss.str());
}

double critical_coupling(const ExperimentConfig& cfg) {
  if (cfg.N == 0 || cfg.N == cfg.M)
    throw ConfigError("G/G_c needs 0 < N < M; there is no critical coupling otherwise");
  const double gc = find_critical_G(cfg.model(0.0));
  std::clog << "G_c(M=" << cfg.M << ", N=" << cfg.N << ", delta_eps=" << format_real(cfg.delta_eps)
            << ") = " << format_real(gc) << '\n';
  return gc;
}

namespace {

SweepResult grid_rows(const ExperimentConfig& cfg) {
  SweepResult res;
  if (cfg.g_over_gc_grid.empty()) return res;
  res.G_c = critical_coupling(cfg);
  for (double g : cfg.g_over_gc_grid) {
    SweepRow row;
    row.g_over_gc = g;
    row.G = g * res.G_c;
    res.rows.push_back(row);
  }
  return res;
}

void fill_exact(SweepRow& row, const PairingModel& model) {
  row.E_hf = hf_energy(model);
  row.E_exact = ed_ground_state(model).ground_energy;
}

GeminalOptimization agp_for(const ExperimentConfig& cfg, const PairingModel& model) {
  return optimize_agp(model, cfg.agp);
}

double fraction_or_nan(double E, const SweepRow& row) {
  try {
    return correlation_fraction(E, row.E_hf, row.E_exact);
  } catch (const ZeroCorrelation&) {
    return kNaN;
  }
}

}  // namespace

SweepResult run_optimize_agp(const ExperimentConfig& cfg) {
  auto res = grid_rows(cfg);
  for (auto& row : res.rows) {
    try {
      const auto opt = agp_for(cfg, cfg.model(row.G));
      row.geminals = opt.geminals;
      row.E_agp = opt.energy;
      row.iterations = opt.iterations;
      if (!opt.converged) row.status = "agp_not_converged";
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  }
  return res;
}

SweepResult run_exact(const ExperimentConfig& cfg) {
  auto res = grid_rows(cfg);
  for (auto& row : res.rows) {
    try {
      fill_exact(row, cfg.model(row.G));
    } catch (const std::exception& e) {
      row.status = std::string("error: ") + e.what();
    }
  }
  return res;
}

SweepRow sweep_row(const ExperimentConfig& cfg, double g_over_gc, double G, std::uint64_t seed) {
  SweepRow row;
  row.g_over_gc = g_over_gc;
  row.G = G;
  row.E_hf = row.E_agp = row.E_vqe = row.E_exact = kNaN;
  row.err_agp = row.err_vqe = row.frac_agp = row.frac_vqe = kNaN;
  const auto model = cfg.model(G);
  try {
    fill_exact(row, model);
    const auto agp = agp_for(cfg, model);
    row.geminals = agp.geminals;
    row.E_agp = agp.energy;

    const auto full = build_full_pipeline(agp.geminals, 0.0, AnsatzParams::zeros(cfg.M));
    row.two_qubit_count = full.two_qubit_count();
    row.depth = full.depth();

    EstimatorConfig exact;
    VqeOptions opts = cfg.vqe;
    opts.seed = seed;
    const auto vqe = minimize(agp.geminals, model, exact, AnsatzParams::zeros(cfg.M), opts);
    row.tau = vqe.tau;
    row.iterations = vqe.iterations;
    row.E_vqe = vqe.energy;
    if (cfg.estimator.mode == EstimatorMode::Shots) {
      EstimatorConfig shots = cfg.estimator;
      shots.seed = seed;
      const auto ansatz = build_pair_hopper_ansatz(vqe.tau, cfg.M);
      row.E_vqe = estimate_projected(agp.geminals, hamiltonian_pauli(model), &ansatz, shots);
    }

    row.err_agp = row.E_agp - row.E_exact;
    row.err_vqe = row.E_vqe - row.E_exact;
    row.frac_agp = fraction_or_nan(row.E_agp, row);
    row.frac_vqe = fraction_or_nan(row.E_vqe, row);
    if (!agp.converged) row.status = "agp_not_converged";
    else if (!vqe.converged) row.status = "vqe_not_converged";
  } catch (const std::exception& e) {
    row.status = std::string("error: ") + e.what();
  }
  return row;
}

SweepResult run_sweep(const ExperimentConfig& cfg) {
  auto res = grid_rows(cfg);
  for (std::size_t i = 0; i < res.rows.size(); ++i) {
    const auto& r = res.rows[i];
    res.rows[i] = sweep_row(cfg, r.g_over_gc, r.G, cfg.vqe.seed + i);
  }
  return res;
}

std::string format_real(double x) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.17g", x);
  return buf;
}

namespace {

// Keeps commas and quotes out of the free-text status column.
std::string csv_field(std::string s) {
  for (auto& c : s)
    if (c == ',' || c == '"' || c == '\n') c = ';';
  return s;
}

}  // namespace

void write_sweep_csv(std::ostream& out, const SweepResult& result) {
  out << "g_over_gc,G,E_hf,E_agp,E_vqe,E_exact,err_agp,err_vqe,frac_agp,frac_vqe,"
         "two_qubit_count,depth,iterations,status\n";
  for (const auto& r : result.rows) {
    for (double v : {r.g_over_gc, r.G, r.E_hf, r.E_agp, r.E_vqe, r.E_exact, r.err_agp, r.err_vqe,
                     r.frac_agp, r.frac_vqe})
      out << format_real(v) << ',';
    out << r.two_qubit_count << ',' << r.depth << ',' << r.iterations << ',' << csv_field(r.status)
        << '\n';
  }
}

void write_exact_csv(std::ostream& out, const SweepResult& result) {
  out << "g_over_gc,G,E_hf,E_exact,status\n";
  for (const auto& r : result.rows)
    out << format_real(r.g_over_gc) << ',' << format_real(r.G) << ',' << format_real(r.E_hf) << ','
        << format_real(r.E_exact) << ',' << csv_field(r.status) << '\n';
}

void write_geminal_csv(std::ostream& out, const SweepResult& result, int M) {
  out << "g_over_gc,G,E_agp,iterations,status";
  for (int p = 1; p <= M; ++p) out << ",eta_" << p;
  out << '\n';
  for (const auto& r : result.rows) {
    out << format_real(r.g_over_gc) << ',' << format_real(r.G) << ',' << format_real(r.E_agp) << ','
        << r.iterations << ',' << csv_field(r.status);
    for (int p = 0; p < M; ++p)
      out << ',' << (p < r.geminals.M() ? format_real(r.geminals.eta[p]) : std::string("nan"));
    out << '\n';
  }
}

std::string sweep_summary_json(const ExperimentConfig& cfg, const SweepResult& result) {
  using nlohmann::json;
  auto finite_or_null = [](double x) { return std::isfinite(x) ? json(x) : json(nullptr); };
  double min_vqe = INFINITY, max_vqe = -INFINITY, min_agp = INFINITY, max_agp = -INFINITY;
  double worst_vqe = -INFINITY, worst_agp = -INFINITY;
  int failed = 0;
  for (const auto& r : result.rows) {
    if (!r.ok()) ++failed;
    if (std::isfinite(r.frac_vqe)) min_vqe = std::min(min_vqe, r.frac_vqe), max_vqe = std::max(max_vqe, r.frac_vqe);
    if (std::isfinite(r.frac_agp)) min_agp = std::min(min_agp, r.frac_agp), max_agp = std::max(max_agp, r.frac_agp);
    if (std::isfinite(r.err_vqe)) worst_vqe = std::max(worst_vqe, std::abs(r.err_vqe));
    if (std::isfinite(r.err_agp)) worst_agp = std::max(worst_agp, std::abs(r.err_agp));
  }
  json j;
  j["M"] = cfg.M;
  j["N"] = cfg.N;
  j["delta_eps"] = cfg.delta_eps;
  j["G_c"] = finite_or_null(result.rows.empty() ? kNaN : result.G_c);
  j["rows"] = result.rows.size();
  j["failed_rows"] = failed;
  j["estimator_mode"] = cfg.estimator.mode == EstimatorMode::Exact ? "exact" : "shots";
  j["seed"] = cfg.vqe.seed;
  j["frac_vqe"] = {{"min", finite_or_null(min_vqe)}, {"max", finite_or_null(max_vqe)}};
  j["frac_agp"] = {{"min", finite_or_null(min_agp)}, {"max", finite_or_null(max_agp)}};
  j["worst_abs_err_vqe"] = finite_or_null(worst_vqe);
  j["worst_abs_err_agp"] = finite_or_null(worst_agp);
  return j.dump(2) + "\n";
}

CircuitPart parse_circuit_part(const std::string& which) {
  if (which == "prep") return CircuitPart::Prep;
  if (which == "projection") return CircuitPart::Projection;
  if (which == "ansatz") return CircuitPart::Ansatz;
  if (which == "full") return CircuitPart::Full;
  throw ConfigError("--which must be one of prep, projection, ansatz, full");
}

Circuit dump_circuit(const ExperimentConfig& cfg, CircuitPart which) {
  const double G = cfg.circuit.G ? *cfg.circuit.G : cfg.circuit.g_over_gc * critical_coupling(cfg);
  const auto model = cfg.model(G);
  const auto tau = AnsatzParams::zeros(cfg.M);
  switch (which) {
    case CircuitPart::Projection: return build_projection_block(cfg.circuit.phi, cfg.M);
    case CircuitPart::Ansatz: return build_pair_hopper_ansatz(tau, cfg.M);
    default: break;
  }
  const auto g = optimize_agp(model, cfg.agp).geminals;
  return which == CircuitPart::Prep ? build_bcs_prep(g) : build_full_pipeline(g, cfg.circuit.phi, tau);
}

}  // namespace agpq

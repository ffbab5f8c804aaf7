#pragma once

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "agpq/agp_classical.hpp"
#include "agpq/circuit.hpp"
#include "agpq/projection.hpp"
#include "agpq/vqe.hpp"

namespace agpq {

struct OutputPaths {
  std::string csv = "sweep.csv";
  std::string summary = "summary.json";
  std::string geminals = "geminals.csv";
  std::string circuit = "circuit.txt";
};

struct CircuitDumpSettings {
  std::optional<double> G;     // absolute coupling; overrides g_over_gc
  double g_over_gc = 1.0;
  double phi = 0.0;
};

struct ExperimentConfig {
  int M = 0;
  int N = 0;
  double delta_eps = 1.0;
  std::vector<double> g_over_gc_grid;
  EstimatorConfig estimator;
  VqeOptions vqe;
  GeminalOptions agp{1e-8, 10'000, false};
  CircuitDumpSettings circuit;
  OutputPaths output;

  PairingModel model(double G) const { return PairingModel(M, delta_eps, G, N); }
  void validate() const;
};

/// 13 evenly spaced G/G_c values on [-2, 3] (none of them zero).
std::vector<double> default_grid();

/// YAML text. Unknown keys, missing M, or violated bounds raise ConfigError.
ExperimentConfig parse_config(const std::string& text);
ExperimentConfig load_config(const std::string& path);

struct SweepRow {
  double g_over_gc = 0.0;
  double G = 0.0;
  double E_hf = 0.0;
  double E_agp = 0.0;
  double E_vqe = 0.0;
  double E_exact = 0.0;
  double err_agp = 0.0;
  double err_vqe = 0.0;
  double frac_agp = 0.0;  // NaN when G = 0 (no correlation energy)
  double frac_vqe = 0.0;
  int two_qubit_count = 0;
  int depth = 0;
  int iterations = 0;
  std::string status = "ok";
  GeminalState geminals;
  AnsatzParams tau;

  bool ok() const { return status == "ok"; }
};

struct SweepResult {
  double G_c = 0.0;
  std::vector<SweepRow> rows;
};

/// G_c of the attractive branch for (M, N, delta_eps); logged to std::clog.
double critical_coupling(const ExperimentConfig& cfg);

/// AGP optimization per grid point.
SweepResult run_optimize_agp(const ExperimentConfig& cfg);
/// HF and exact energies per grid point.
SweepResult run_exact(const ExperimentConfig& cfg);
/// Full sweep: HF, ED, AGP, VQE. Rows use seed + row index.
SweepResult run_sweep(const ExperimentConfig& cfg);
SweepRow sweep_row(const ExperimentConfig& cfg, double g_over_gc, double G, std::uint64_t seed);

std::string format_real(double x);  // 17 significant digits

void write_sweep_csv(std::ostream& out, const SweepResult& result);
void write_exact_csv(std::ostream& out, const SweepResult& result);
void write_geminal_csv(std::ostream& out, const SweepResult& result, int M);
std::string sweep_summary_json(const ExperimentConfig& cfg, const SweepResult& result);

enum class CircuitPart { Prep, Projection, Ansatz, Full };
CircuitPart parse_circuit_part(const std::string& which);
Circuit dump_circuit(const ExperimentConfig& cfg, CircuitPart which);

}  // namespace agpq

#pragma once

#include <cstdint>
#include <vector>

#include "agpq/agp_classical.hpp"
#include "agpq/circuit.hpp"
#include "agpq/projection.hpp"

namespace agpq {

struct VqeOptions {
  int restarts = 3;  // total starts: init_tau, then seeded perturbations of it
  double gradient_tol = 1e-6;
  int max_iterations = 500;
  double fd_step = 1e-5;
  double perturbation = 0.1;
  std::uint64_t seed = 0;
};

struct VqeIterate {
  double energy;
  double gradient_norm;
};

struct VqeResult {
  double energy = 0.0;
  AnsatzParams tau;
  int iterations = 0;
  double gradient_norm = 0.0;
  std::vector<VqeIterate> history;  // of the start that produced `energy`
  bool converged = false;
  long evaluations = 0;             // over all starts
};

/// E(tau) = <AGP|U(tau)^dag H U(tau)|AGP> / <AGP|AGP> for a fixed model and
/// geminal state. The BCS preparation is simulated once.
class VqeObjective {
 public:
  VqeObjective(const GeminalState& g, const PairingModel& model, const EstimatorConfig& cfg);

  double operator()(const AnsatzParams& tau) const;
  double operator()(std::span<const double> tau) const;

  int M() const { return M_; }

 private:
  int M_;
  ProjectedEstimator estimator_;
};

double objective(const AnsatzParams& tau, const GeminalState& g, const PairingModel& model,
                 const EstimatorConfig& cfg);

/// Central differences with half-width h. Exact mode only.
std::vector<double> gradient_fd(const AnsatzParams& tau, const GeminalState& g,
                                const PairingModel& model, const EstimatorConfig& cfg,
                                double h = 1e-5);

/// BFGS over tau from init_tau and (restarts - 1) perturbed copies; returns
/// the lowest energy found. Never throws on non-convergence.
VqeResult minimize(const GeminalState& g, const PairingModel& model, const EstimatorConfig& cfg,
                   const AnsatzParams& init_tau, const VqeOptions& options = {});

}  // namespace agpq

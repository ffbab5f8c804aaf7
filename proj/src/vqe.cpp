#include "agpq/vqe.hpp"

#include <random>
#include <stdexcept>

#include "agpq/errors.hpp"
#include "agpq/quasi_newton.hpp"

namespace agpq {

VqeObjective::VqeObjective(const GeminalState& g, const PairingModel& model,
                           const EstimatorConfig& cfg)
    : M_(model.M), estimator_(g, hamiltonian_pauli(model), cfg) {
  if (g.M() != model.M || g.N != model.N) throw SizeMismatch("geminals do not match the model");
}

double VqeObjective::operator()(const AnsatzParams& tau) const {
  const Circuit ansatz = build_pair_hopper_ansatz(tau, M_);
  return estimator_.estimate(&ansatz).value;
}

double VqeObjective::operator()(std::span<const double> tau) const {
  return (*this)(AnsatzParams{{tau.begin(), tau.end()}});
}

double objective(const AnsatzParams& tau, const GeminalState& g, const PairingModel& model,
                 const EstimatorConfig& cfg) {
  return VqeObjective(g, model, cfg)(tau);
}

std::vector<double> gradient_fd(const AnsatzParams& tau, const GeminalState& g,
                                const PairingModel& model, const EstimatorConfig& cfg, double h) {
  if (cfg.mode != EstimatorMode::Exact)
    throw std::invalid_argument("finite-difference gradients need the exact estimator");
  const VqeObjective f(g, model, cfg);
  return central_difference_gradient([&](std::span<const double> t) { return f(t); }, tau.tau,
                                     [h](int, double) { return h; });
}

VqeResult minimize(const GeminalState& g, const PairingModel& model, const EstimatorConfig& cfg,
                   const AnsatzParams& init_tau, const VqeOptions& options) {
  if (init_tau.tau.size() != ansatz_parameter_count(model.M))
    throw SizeMismatch("initial tau has the wrong length");
  if (cfg.mode != EstimatorMode::Exact)
    throw std::invalid_argument("VQE minimization needs the exact estimator");
  const VqeObjective f(g, model, cfg);
  const ObjectiveFn fn = [&](std::span<const double> t) { return f(t); };

  QuasiNewtonOptions qn;
  qn.gradient_tol = options.gradient_tol;
  qn.max_iterations = options.max_iterations;
  qn.fd_step = [h = options.fd_step](int, double) { return h; };

  std::mt19937_64 rng(options.seed);
  std::normal_distribution<double> kick(0.0, options.perturbation);

  VqeResult best;
  bool have_best = false;
  long evaluations = 0;
  for (int start = 0; start < std::max(1, options.restarts); ++start) {
    std::vector<double> x0 = init_tau.tau;
    if (start > 0)
      for (auto& v : x0) v += kick(rng);
    const auto run = minimize_bfgs(fn, x0, qn);
    evaluations += run.evaluations;
    if (have_best && run.value >= best.energy) continue;
    have_best = true;
    best.energy = run.value;
    best.tau.tau = run.x;
    best.iterations = run.iterations;
    best.gradient_norm = run.gradient_norm;
    best.converged = run.converged;
    best.history.clear();
    for (const auto& it : run.history) best.history.push_back({it.value, it.gradient_norm});
  }
  best.evaluations = evaluations;
  return best;
}

}  // namespace agpq

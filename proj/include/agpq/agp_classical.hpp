#pragma once

#include <span>
#include <vector>

#include "agpq/pair_model.hpp"

namespace agpq {

/// Real geminal coefficients eta_p of an N-pair AGP, one per level.
struct GeminalState {
  std::vector<double> eta;
  int N = 0;

  int M() const { return static_cast<int>(eta.size()); }
};

/// BCS mean-field solution: gap, chemical potential and the real (u_p, v_p)
/// with u_p^2 + v_p^2 = 1. Phases lambda_p are identically zero.
struct BcsSolution {
  double gap = 0.0;
  double mu = 0.0;
  std::vector<double> u;
  std::vector<double> v;
};

/// Elementary symmetric polynomial e_k(x) by the recurrence
/// e_k^(m) = e_k^(m-1) + x_m e_{k-1}^(m-1).
double esp(std::span<const double> x, int k);

/// <AGP|AGP> = e_N({eta_p^2}).
double agp_norm(const GeminalState& g);

/// eta_p -> eta_p / <AGP|AGP>^{1/(2N)}, so that agp_norm(result) == 1.
GeminalState scale_geminals(const GeminalState& g);

/// Pair occupation <P+_p P_p> / <AGP|AGP> of level p (0-based).
double agp_rdm1(const GeminalState& g, int p);

/// <P+_p P_q> / <AGP|AGP> for p != q.
double agp_pair_transfer(const GeminalState& g, int p, int q);

double agp_energy(const GeminalState& g, const PairingModel& model);

struct GeminalOptions {
  double gradient_tol = 1e-8;
  long max_evaluations = 10'000;
  bool throw_on_failure = true;
};

struct GeminalOptimization {
  GeminalState geminals;  // scaled to unit AGP norm
  double energy = 0.0;
  double gradient_norm = 0.0;
  long evaluations = 0;
  int iterations = 0;
  bool converged = false;
};

/// Minimizes agp_energy over log-parameterized geminals, eta_p = exp(t_p).
/// Throws ConvergenceFailure when the evaluation budget runs out (unless
/// options.throw_on_failure is false).
GeminalOptimization optimize_geminals(const PairingModel& model, const GeminalState& init,
                                      const GeminalOptions& options = {});

/// Starting geminals: v_p/u_p from the BCS solution when the gap is open,
/// otherwise hf_like_geminals.
GeminalState initial_geminals(const PairingModel& model);
/// 1 on the lowest N levels and 0.1^(p-N+1) on level p >= N (0-based), negated
/// above the Fermi level when G < 0.
GeminalState hf_like_geminals(const PairingModel& model);

/// optimize_geminals from initial_geminals and from hf_like_geminals; keeps
/// the lower energy. Just above G_c the BCS start sits on the flat
/// Hartree-Fock plateau (eta ~ gap above the Fermi level) and stalls there.
GeminalOptimization optimize_agp(const PairingModel& model, const GeminalOptions& options = {});

BcsSolution solve_bcs_meanfield(const PairingModel& model);

/// Smallest G > 0 at which the mean-field gap opens.
double find_critical_G(const PairingModel& model);

/// Lowest diagonal of the seniority-zero Hamiltonian (Aufbau pair filling).
double hf_energy(const PairingModel& model);

}  // namespace agpq

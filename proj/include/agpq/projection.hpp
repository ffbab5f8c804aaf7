#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "agpq/agp_classical.hpp"
#include "agpq/circuit.hpp"
#include "agpq/pair_model.hpp"
#include "agpq/state_vector.hpp"

namespace agpq {

/// Phase grid for number projection onto N pairs of M levels:
/// k = floor(log2 max(N, M - N)), n = 2^(k+1), phi_j = 2 pi j / n for j = 0..n-1.
struct ProjectionGrid {
  int M = 0;
  int N = 0;
  int k = 0;
  int n = 0;

  static ProjectionGrid make(int M, int N);
  double phase(int j) const;
  std::vector<double> phases() const;
  /// Half-projection angles pi 2^-j, j = 0..k, of the nested product form.
  std::vector<double> half_projection_phases() const;
};

enum class EstimatorMode { Exact, Shots };

struct EstimatorConfig {
  EstimatorMode mode = EstimatorMode::Exact;
  long shots_per_term = 0;
  std::uint64_t seed = 0;

  void validate() const;
};

/// (1/n) <BCS|BCS> / <AGP|AGP> for geminals already scaled to unit AGP norm,
/// i.e. (1/n) prod_p (1 + eta_p^2).
double classical_prefactor(const GeminalState& g, const ProjectionGrid& grid);

/// exp(i phi (M/2 - N)): converts prod_p Rz(phi) into exp(i phi (Nhat - N)).
cplx global_phase(double phi, int M, int N);

struct ProjectedEstimate {
  double value = 0.0;
  double std_error = 0.0;       // zero in exact mode
  double imag_residual = 0.0;   // |Im| of the accumulated grid sum (exact mode)
  int circuit_evaluations = 0;  // distinct phase-grid circuits
  long measurements = 0;        // shots actually drawn (shots mode)
  bool symmetry_broken = false;
};

/// Estimates <AGP|U^dag A U|AGP> / <AGP|AGP> from BCS-state circuits via the
/// phase-grid sum C sum_j gamma(phi_j) <BCS|U^dag A U R(phi_j)|BCS>.
///
/// Exact mode takes inner products of simulated vectors; when the ansatz
/// conserves occupation number it commutes with R(phi) and is applied once.
/// Shots mode simulates the ancilla circuit (prep, projection block, ansatz)
/// for every phi_j and samples each word of A tensored with X_a (and Y_a when
/// gamma(phi_j) is not real).
class ProjectedEstimator {
 public:
  ProjectedEstimator(const GeminalState& geminals, const PauliSum& observable,
                     const EstimatorConfig& config);

  ProjectedEstimate estimate(const Circuit* ansatz = nullptr) const;

  const ProjectionGrid& grid() const { return grid_; }
  double prefactor() const { return prefactor_; }
  bool symmetry_broken() const { return symmetry_broken_; }

 private:
  ProjectedEstimate estimate_exact(const Circuit* ansatz) const;
  ProjectedEstimate estimate_shots(const Circuit* ansatz) const;
  StateVector apply_observable(const StateVector& state) const;

  GeminalState geminals_;
  PauliSum observable_;
  EstimatorConfig config_;
  ProjectionGrid grid_;
  double prefactor_;
  bool symmetry_broken_;
  StateVector bcs_;
  // Cached sparse form of the observable for small registers.
  std::optional<Eigen::SparseMatrix<cplx, Eigen::RowMajor>> matrix_;
};

ProjectedEstimate estimate_projected_detailed(const GeminalState& g, const PauliSum& observable,
                                              const Circuit* ansatz, const EstimatorConfig& config);
double estimate_projected(const GeminalState& g, const PauliSum& observable, const Circuit* ansatz,
                          const EstimatorConfig& config);

/// Reference projector: applies prod_j (1 + exp(i phi_j (Nhat - N)))/2 with
/// phi_j = pi 2^-j as a diagonal matrix on an M-qubit state.
StateVector project_statevector(const StateVector& state, const ProjectionGrid& grid, int N);

}  // namespace agpq

#pragma once

#include <cstdint>

#include <Eigen/Dense>

#include "agpq/pair_model.hpp"

namespace agpq {

struct EdResult {
  double ground_energy = 0.0;
  Eigen::VectorXd ground_vector;  // over PairBasis(M, N), unit norm
  double residual = 0.0;          // ||H v - E v||
};

/// Lowest eigenpair of the seniority-zero Hamiltonian. Dense solve up to
/// `dense_limit` configurations, restarted Lanczos with full
/// reorthogonalization above that. Throws DimensionLimit above `limit` and
/// ConvergenceFailure if the residual cannot be brought below 1e-10.
EdResult ed_ground_state(const PairingModel& model, std::uint64_t limit = 1'000'000,
                         std::uint64_t dense_limit = 2000);

/// (E - E_hf) / (E_exact - E_hf); throws ZeroCorrelation if the denominator
/// is below 1e-12 in magnitude.
double correlation_fraction(double E, double E_hf, double E_exact);
double correlation_fraction(double E, const PairingModel& model);

}  // namespace agpq

#include "agpq/exact.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "agpq/agp_classical.hpp"
#include "agpq/errors.hpp"

namespace agpq {

namespace {

constexpr double kResidualTol = 1e-10;

Eigen::VectorXd apply_h(const PairingModel& model, const PairBasis& basis, const Eigen::VectorXd& x) {
  Eigen::VectorXd y(x.size());
  apply_pair_hamiltonian(model, basis, {x.data(), static_cast<std::size_t>(x.size())},
                         {y.data(), static_cast<std::size_t>(y.size())});
  return y;
}

// Lanczos with full reorthogonalization, restarted from the current Ritz vector.
EdResult lanczos(const PairingModel& model, const PairBasis& basis) {
  const auto dim = static_cast<Eigen::Index>(basis.size());
  const Eigen::Index krylov = std::min<Eigen::Index>(dim, 80);
  Eigen::VectorXd ritz = Eigen::VectorXd::Constant(dim, 1.0 / std::sqrt(double(dim)));

  EdResult out;
  for (int restart = 0; restart < 200; ++restart) {
    Eigen::MatrixXd V(dim, krylov);
    Eigen::MatrixXd T = Eigen::MatrixXd::Zero(krylov, krylov);
    V.col(0) = ritz;
    Eigen::Index m = krylov;
    for (Eigen::Index j = 0; j < krylov; ++j) {
      Eigen::VectorXd w = apply_h(model, basis, V.col(j));
      for (int pass = 0; pass < 2; ++pass) {
        const Eigen::VectorXd c = V.leftCols(j + 1).transpose() * w;
        w -= V.leftCols(j + 1) * c;
        if (pass == 0) T(j, j) = c(j);
      }
      if (j + 1 == krylov) break;
      const double beta = w.norm();
      if (beta < 1e-14) {
        m = j + 1;  // invariant subspace
        break;
      }
      T(j, j + 1) = T(j + 1, j) = beta;
      V.col(j + 1) = w / beta;
    }
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> small(T.topLeftCorner(m, m));
    ritz = V.leftCols(m) * small.eigenvectors().col(0);
    ritz.normalize();
    const Eigen::VectorXd hv = apply_h(model, basis, ritz);
    out.ground_energy = ritz.dot(hv);
    out.residual = (hv - out.ground_energy * ritz).norm();
    if (out.residual < 1e-2 * kResidualTol || m < krylov) break;
  }
  out.ground_vector = ritz;
  return out;
}

}  // namespace

EdResult ed_ground_state(const PairingModel& model, std::uint64_t limit, std::uint64_t dense_limit) {
  model.validate();
  const std::uint64_t dim = binomial(model.M, model.N);
  if (dim > limit)
    throw DimensionLimit("C(" + std::to_string(model.M) + "," + std::to_string(model.N) + ") = " +
                         std::to_string(dim) + " configurations exceeds the limit of " +
                         std::to_string(limit));
  const PairBasis basis(model.M, model.N, limit);

  EdResult out;
  if (dim <= dense_limit) {
    const Eigen::MatrixXd H = hamiltonian_pair_matrix(model, limit);
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(H);
    out.ground_energy = es.eigenvalues()(0);
    out.ground_vector = es.eigenvectors().col(0);
    out.residual = (H * out.ground_vector - out.ground_energy * out.ground_vector).norm();
  } else {
    out = lanczos(model, basis);
  }
  // Fix the sign so the largest component is positive.
  Eigen::Index top = 0;
  out.ground_vector.cwiseAbs().maxCoeff(&top);
  if (out.ground_vector(top) < 0.0) out.ground_vector = -out.ground_vector;
  if (!(out.residual < kResidualTol))
    throw ConvergenceFailure("ground-state residual " + std::to_string(out.residual) +
                             " above tolerance");
  return out;
}

double correlation_fraction(double E, double E_hf, double E_exact) {
  const double denom = E_exact - E_hf;
  if (!(std::abs(denom) >= 1e-12))
    throw ZeroCorrelation("exact and Hartree-Fock energies coincide; no correlation energy");
  return (E - E_hf) / denom;
}

double correlation_fraction(double E, const PairingModel& model) {
  return correlation_fraction(E, hf_energy(model), ed_ground_state(model).ground_energy);
}

}  // namespace agpq

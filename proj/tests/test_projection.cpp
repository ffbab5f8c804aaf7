#include <gtest/gtest.h>

#include <numbers>
#include <random>

#include "agpq/errors.hpp"
#include "agpq/projection.hpp"
#include "test_util.hpp"

using namespace agpq;
using oracle::Mat;
using oracle::Vec;

namespace {

AnsatzParams random_tau(std::mt19937_64& rng, int M, double scale = 1.0) {
  std::uniform_real_distribution<double> u(-scale, scale);
  AnsatzParams t = AnsatzParams::zeros(M);
  for (auto& v : t.tau) v = u(rng);
  return t;
}

Mat ansatz_matrix(int M, const AnsatzParams& tau) {
  Mat u = Mat::Identity(Eigen::Index{1} << M, Eigen::Index{1} << M);
  const auto order = ansatz_pair_order(M);
  for (std::size_t k = 0; k < order.size(); ++k)
    u = oracle::pair_hopper(M, order[k].first, order[k].second, tau.tau[k]) * u;
  return u;
}

// Random Hermitian, pair-number-conserving observable: Z, ZZ and XX + YY terms.
PauliSum random_observable(std::mt19937_64& rng, int M) {
  std::normal_distribution<double> n01;
  PauliSum a(M);
  a.add(PauliWord::identity(M, n01(rng)));
  for (int p = 0; p < M; ++p) a.add(PauliWord::single(M, p, 'Z', n01(rng)));
  for (int p = 0; p < M; ++p)
    for (int q = 0; q < p; ++q) {
      std::string zz(M, 'I'), xx(M, 'I'), yy(M, 'I');
      zz[p] = zz[q] = 'Z';
      xx[p] = xx[q] = 'X';
      yy[p] = yy[q] = 'Y';
      const double c = n01(rng);
      a.add(PauliWord(zz, n01(rng))).add(PauliWord(xx, c)).add(PauliWord(yy, c));
    }
  return a;
}

GeminalState random_scaled(std::mt19937_64& rng, int M, int N) {
  return scale_geminals(GeminalState{oracle::random_eta(rng, M), N});
}

}  // namespace

TEST(Grid, SizeAndPhases) {
  EXPECT_EQ(ProjectionGrid::make(6, 3).n, 4);
  EXPECT_EQ(ProjectionGrid::make(12, 6).n, 8);
  EXPECT_EQ(ProjectionGrid::make(4, 2).n, 4);
  EXPECT_EQ(ProjectionGrid::make(2, 1).n, 2);
  EXPECT_EQ(ProjectionGrid::make(8, 1).n, 8);
  EXPECT_EQ(ProjectionGrid::make(5, 0).n, 8);
  const auto g = ProjectionGrid::make(12, 6);
  EXPECT_EQ(g.k, 2);
  EXPECT_NEAR(g.phases()[3], 2 * std::numbers::pi * 3 / 8, 1e-15);
  EXPECT_EQ(g.half_projection_phases().size(), 3u);
  EXPECT_THROW(ProjectionGrid::make(3, 4), std::invalid_argument);
}

TEST(Grid, KroneckerDeltaOverSectors) {
  for (int M = 1; M <= 12; ++M)
    for (int N = 0; N <= M; ++N) {
      const auto g = ProjectionGrid::make(M, N);
      for (int k = 0; k <= M; ++k) {
        cplx s = 0;
        for (double phi : g.phases()) s += global_phase(phi, M, N) * std::polar(1.0, phi * (k - 0.5 * M));
        ASSERT_NEAR(std::abs(s - cplx(k == N ? g.n : 0)), 0.0, 1e-12) << M << N << k;
      }
    }
}

TEST(Projector, NestedProductKeepsOnlyTheSector) {
  std::mt19937_64 rng(1);
  std::normal_distribution<double> n01;
  for (int M = 1; M <= 8; ++M)
    for (int N = 0; N <= M; ++N) {
      Vec psi(Eigen::Index{1} << M);
      for (auto& a : psi) a = {n01(rng), n01(rng)};
      const auto out = testutil::to_vec(project_statevector(testutil::from_vec(psi), ProjectionGrid::make(M, N), N));
      for (Eigen::Index b = 0; b < psi.size(); ++b) {
        const bool keep = std::popcount(static_cast<std::uint64_t>(b)) == N;
        ASSERT_NEAR(std::abs(out(b) - (keep ? psi(b) : cplx(0))), 0.0, 1e-13);
      }
    }
}

TEST(Projector, BcsProjectsToAgp) {
  std::mt19937_64 rng(2);
  const auto eta = oracle::random_eta(rng, 6);
  const auto p = testutil::to_vec(project_statevector(testutil::from_vec(oracle::bcs_vector(eta)),
                                                     ProjectionGrid::make(6, 2), 2));
  const Vec agp = oracle::agp_vector(eta, 2);
  // P_N |BCS> = prod_p u_p |AGP>.
  double u = 1;
  for (double e : eta) u /= std::sqrt(1 + e * e);
  EXPECT_LT((p - u * agp).norm(), 1e-13);
}

TEST(Prefactor, RequiresUnitNorm) {
  const GeminalState g{{1.0, 2.0, 0.5}, 1};
  EXPECT_THROW(classical_prefactor(g, ProjectionGrid::make(3, 1)), std::invalid_argument);
  const auto s = scale_geminals(g);
  double want = 1;
  for (double e : s.eta) want *= 1 + e * e;
  EXPECT_NEAR(classical_prefactor(s, ProjectionGrid::make(3, 1)), want / 4, 1e-14);
}

TEST(Estimator, MatchesProjectedStatevector) {
  std::mt19937_64 rng(3);
  for (int trial = 0; trial < 20; ++trial) {
    const int M = 2 + trial % 5;
    const int N = 1 + trial % (M - 1);
    const auto g = random_scaled(rng, M, N);
    const auto tau = random_tau(rng, M);
    const auto A = random_observable(rng, M);
    const Vec psi = ansatz_matrix(M, tau) * oracle::agp_vector(g.eta, N);
    const double want = oracle::expect(psi, testutil::dense(A));
    const auto c = build_pair_hopper_ansatz(tau, M);
    const auto est = estimate_projected_detailed(g, A, &c, EstimatorConfig{});
    EXPECT_NEAR(est.value, want, 1e-9) << M << "," << N;
    EXPECT_EQ(est.circuit_evaluations, ProjectionGrid::make(M, N).n);
    EXPECT_LT(est.imag_residual, 1e-10);
  }
}

TEST(Estimator, TauZeroIsTheAgpEnergy) {
  std::mt19937_64 rng(4);
  for (int trial = 0; trial < 10; ++trial) {
    const int M = 2 + trial % 6, N = 1 + trial % (M - 1);
    const PairingModel m(M, 1.0, 0.2 * trial - 0.7, N);
    const auto g = random_scaled(rng, M, N);
    EXPECT_NEAR(estimate_projected(g, hamiltonian_pauli(m), nullptr, {}), agp_energy(g, m), 1e-10);
  }
}

TEST(Estimator, LiteralPathForSymmetryBreakingAnsatz) {
  // Ansatz that does not conserve number: per-phase simulation of
  // C sum_j gamma_j <BCS| U^dag A U R(phi_j) |BCS>.
  std::mt19937_64 rng(5);
  const int M = 3, N = 1;
  const auto g = random_scaled(rng, M, N);
  Circuit u(M);
  u.add(Gate::ry(0, 0.3)).add(Gate::pair_hopper(2, 1, 0.4)).add(Gate::cnot(1, 0));
  ASSERT_FALSE(u.number_conserving());
  const auto A = random_observable(rng, M);
  const auto grid = ProjectionGrid::make(M, N);
  Mat U = oracle::cnot(M, 1, 0) * oracle::pair_hopper(M, 2, 1, 0.4) * oracle::on_qubit(M, 0, oracle::ry(0.3));
  const Vec bcs = oracle::bcs_vector(g.eta);
  cplx total = 0;
  for (double phi : grid.phases()) {
    Mat R = Mat::Identity(8, 8);
    for (int p = 0; p < M; ++p) R = oracle::on_qubit(M, p, oracle::rz(phi)) * R;
    total += global_phase(phi, M, N) * (bcs.adjoint() * U.adjoint() * testutil::dense(A) * U * R * bcs)(0, 0);
  }
  total *= classical_prefactor(g, grid);
  const ProjectedEstimator est(g, A, {});
  // A non-commuting ansatz can leave an imaginary part; that is reported, not dropped.
  if (std::abs(total.imag()) < 1e-10)
    EXPECT_NEAR(est.estimate(&u).value, total.real(), 1e-10);
  else
    EXPECT_THROW(est.estimate(&u), Error);
}

TEST(HadamardTest, AncillaReadsTheRealPart) {
  std::mt19937_64 rng(6);
  const int M = 4, N = 2;
  const auto g = random_scaled(rng, M, N);
  const auto tau = random_tau(rng, M);
  const double phi = 2.1;
  const auto state = simulate(build_full_pipeline(g, phi, tau), M + 1);
  const PauliWord A("ZXXI", 0.8);
  const Vec bcs = oracle::bcs_vector(g.eta);
  Mat R = Mat::Identity(16, 16);
  for (int p = 0; p < M; ++p) R = oracle::on_qubit(M, p, oracle::rz(phi)) * R;
  const Mat U = ansatz_matrix(M, tau);
  const cplx z = (bcs.adjoint() * U.adjoint() * (0.8 * oracle::pauli_string("ZXXI")) * U * R * bcs)(0, 0);
  const PauliWord ax = A.widened(M + 1) * PauliWord::single(M + 1, M, 'X');
  const PauliWord ay = A.widened(M + 1) * PauliWord::single(M + 1, M, 'Y');
  EXPECT_NEAR(expectation(state, ax).real(), z.real(), 1e-12);
  EXPECT_NEAR(expectation(state, ay).real(), z.imag(), 1e-12);
}

TEST(Estimator, ShotModeWithinStandardErrors) {
  std::mt19937_64 rng(7);
  const PairingModel m(3, 1.0, 0.6, 1);
  const auto g = random_scaled(rng, 3, 1);
  const auto tau = random_tau(rng, 3, 0.5);
  const auto c = build_pair_hopper_ansatz(tau, 3);
  const auto H = hamiltonian_pauli(m);
  const double exact = estimate_projected(g, H, &c, {});
  for (std::uint64_t seed = 0; seed < 3; ++seed) {
    const EstimatorConfig cfg{EstimatorMode::Shots, 20000, seed};
    const auto est = estimate_projected_detailed(g, H, &c, cfg);
    EXPECT_GT(est.std_error, 0.0);
    EXPECT_LT(std::abs(est.value - exact), 5 * est.std_error) << seed;
    EXPECT_EQ(est.circuit_evaluations, ProjectionGrid::make(3, 1).n);
    EXPECT_GT(est.measurements, 0);
    EXPECT_EQ(estimate_projected(g, H, &c, cfg), est.value);
  }
}

TEST(Estimator, Errors) {
  const auto g = scale_geminals(GeminalState{{1.0, 0.5}, 1});
  EXPECT_THROW(ProjectedEstimator(g, PauliSum(2, {PauliWord("ZI", {0, 1})}), {}), NonHermitianObservable);
  EXPECT_THROW(ProjectedEstimator(g, PauliSum(3, {PauliWord("ZII")}), {}), SizeMismatch);
  EXPECT_THROW(ProjectedEstimator(g, PauliSum(2, {PauliWord("ZI")}), {EstimatorMode::Shots, 0, 0}),
               std::invalid_argument);
  EXPECT_THROW(ProjectedEstimator(GeminalState{{1.0, 0.5}, 1}, PauliSum(2, {PauliWord("ZI")}), {}),
               std::invalid_argument);
  const ProjectedEstimator broken(g, PauliSum(2, {PauliWord("XI")}), {});
  EXPECT_TRUE(broken.symmetry_broken());
  // The value itself is meaningless for a number-changing observable; it is
  // returned with the flag set rather than rejected.
  EXPECT_TRUE(broken.estimate().symmetry_broken);
}

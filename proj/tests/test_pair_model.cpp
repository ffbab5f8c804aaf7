#include <gtest/gtest.h>

#include <random>

#include "agpq/errors.hpp"
#include "agpq/pair_model.hpp"
#include "test_util.hpp"

using namespace agpq;
using testutil::dense;

TEST(PairingModel, ValidatesBounds) {
  EXPECT_THROW(PairingModel(0, 1.0, 0.1, 0), std::invalid_argument);
  EXPECT_THROW(PairingModel(4, 1.0, 0.1, 5), std::invalid_argument);
  EXPECT_THROW(PairingModel(4, 0.0, 0.1, 2), std::invalid_argument);
  EXPECT_THROW(PairingModel(4, 1.0, std::nan(""), 2), std::invalid_argument);
  const PairingModel m(4, 0.5, 0.1, 2);
  EXPECT_DOUBLE_EQ(m.epsilon(0), 0.5);
  EXPECT_DOUBLE_EQ(m.epsilon(3), 2.0);
  EXPECT_TRUE(m.half_filling());
}

TEST(PauliWord, LettersRoundTrip) {
  const PauliWord w("XIYZ", 2.0);
  EXPECT_EQ(w.letters(), "XIYZ");
  EXPECT_EQ(w.letter(2), 'Y');
  EXPECT_EQ(w.y_count(), 1);
  EXPECT_TRUE(w.hermitian());
  EXPECT_FALSE(w.scaled({0, 1}).hermitian());
  EXPECT_THROW(PauliWord("XQ"), std::invalid_argument);
}

TEST(PauliWord, ProductMatchesMatrices) {
  const char letters[] = "IXYZ";
  for (int a = 0; a < 64; ++a)
    for (int b = 0; b < 64; ++b) {
      const std::string s1{letters[a & 3], letters[a >> 2 & 3], letters[a >> 4 & 3]};
      const std::string s2{letters[b & 3], letters[b >> 2 & 3], letters[b >> 4 & 3]};
      const PauliWord p = PauliWord(s1, 0.5) * PauliWord(s2, {0, 2});
      const oracle::Mat want = 0.5 * oracle::pauli_string(s1) * oracle::cplx(0, 2) * oracle::pauli_string(s2);
      const oracle::Mat got = p.coefficient() * oracle::pauli_string(p.letters());
      ASSERT_LT((want - got).norm(), 1e-14) << s1 << " * " << s2;
    }
}

TEST(PauliSum, ApplyMatchesDenseMatrix) {
  std::mt19937_64 rng(7);
  std::normal_distribution<double> n01;
  const PauliSum h = hamiltonian_pauli(PairingModel(4, 1.0, 0.37, 2));
  oracle::Vec psi(16);
  for (auto& a : psi) a = {n01(rng), n01(rng)};
  const auto got = testutil::to_vec(h.apply(testutil::from_vec(psi)));
  EXPECT_LT((got - dense(h) * psi).norm(), 1e-12);
  const auto sparse = testutil::to_vec(testutil::from_vec(oracle::Vec(h.to_sparse() * psi)));
  EXPECT_LT((sparse - dense(h) * psi).norm(), 1e-12);
}

TEST(PairOperators, HardCoreBosonAlgebra) {
  // [P_p, P+_q] = delta_pq (1 - N_p) with N_p counting electrons (2 per pair).
  const int n = 3;
  const auto I = oracle::Mat::Identity(8, 8);
  for (int p = 0; p < n; ++p)
    for (int q = 0; q < n; ++q) {
      const auto Pp = dense(pair_lowering(n, p));
      const auto Pdq = dense(pair_raising(n, q));
      const oracle::Mat comm = Pp * Pdq - Pdq * Pp;
      const oracle::Mat want = p == q ? oracle::Mat(I - dense(pair_number(n, p))) : oracle::Mat::Zero(8, 8);
      EXPECT_LT((comm - want).norm(), 1e-14) << p << q;
    }
  for (int p = 0; p < n; ++p) {
    // N_p = 2 P+_p P_p and P+_p^2 = 0.
    const auto Pd = dense(pair_raising(n, p));
    EXPECT_LT((dense(pair_number(n, p)) - 2.0 * Pd * Pd.adjoint()).norm(), 1e-14);
    EXPECT_LT((Pd * Pd).norm(), 1e-14);
    EXPECT_LT((Pd - oracle::raise(n, p)).norm(), 1e-14);
  }
}

TEST(PairOperators, TotalPairNumberCountsBits) {
  const auto nhat = dense(total_pair_number(4, 4));
  for (int b = 0; b < 16; ++b) EXPECT_NEAR(nhat(b, b).real(), std::popcount(unsigned(b)), 1e-14);
  EXPECT_TRUE(total_pair_number(4, 4).number_preserving());
}

TEST(Hamiltonian, PauliFormMatchesPairOperators) {
  for (double G : {-0.4, 0.0, 0.3, 1.7}) {
    const PairingModel m(4, 0.8, G, 2);
    const auto want = oracle::pairing_hamiltonian(4, 0.8, G);
    EXPECT_LT((dense(hamiltonian_pauli(m)) - want).norm(), 1e-12) << G;
    EXPECT_TRUE(hamiltonian_pauli(m).hermitian());
    EXPECT_TRUE(hamiltonian_pauli(m).number_preserving());
  }
}

TEST(Hamiltonian, PairMatrixIsTheNSectorBlock) {
  for (int M = 1; M <= 6; ++M)
    for (int N = 0; N <= M; ++N) {
      const PairingModel m(M, 1.0, 0.45, N);
      const Eigen::MatrixXd h = hamiltonian_pair_matrix(m);
      const auto block = oracle::restrict(oracle::pairing_hamiltonian(M, 1.0, 0.45), oracle::sector(M, N));
      ASSERT_EQ(h.rows(), block.rows());
      // Both enumerate configurations in increasing integer order.
      EXPECT_LT((h.cast<oracle::cplx>() - block).norm(), 1e-12) << M << "," << N;
    }
}

TEST(Hamiltonian, TwoLevelExample) {
  const Eigen::MatrixXd h = hamiltonian_pair_matrix(PairingModel(2, 1.0, 0.5, 1));
  Eigen::Matrix2d want;
  want << 1.5, -0.5, -0.5, 3.5;
  EXPECT_LT((h - want).norm(), 1e-15);
}

TEST(Hamiltonian, MatrixFreeMatchesDense) {
  const PairingModel m(7, 1.0, 0.6, 3);
  const PairBasis basis(7, 3);
  const Eigen::MatrixXd h = hamiltonian_pair_matrix(m);
  Eigen::VectorXd x = Eigen::VectorXd::LinSpaced(basis.size(), -1.0, 2.0);
  Eigen::VectorXd y(basis.size());
  apply_pair_hamiltonian(m, basis, {x.data(), basis.size()}, {y.data(), basis.size()});
  EXPECT_LT((y - h * x).norm(), 1e-12);
}

TEST(PairBasis, ColexOrderAndRank) {
  const PairBasis b(6, 3);
  ASSERT_EQ(b.size(), 20u);
  for (std::size_t i = 0; i < b.size(); ++i) {
    EXPECT_EQ(std::popcount(b.config(i)), 3);
    if (i) EXPECT_LT(b.config(i - 1), b.config(i));
    EXPECT_EQ(b.rank(b.config(i)), i);
  }
  EXPECT_EQ(binomial(12, 6), 924u);
  EXPECT_EQ(binomial(62, 31), 465428353255261088ull);
  EXPECT_THROW(PairBasis(30, 15, 1000), DimensionLimit);
}

TEST(Hamiltonian, DiagonalOfConfiguration) {
  const PairingModel m(12, 1.0, 0.5, 6);
  EXPECT_DOUBLE_EQ(pair_diagonal(m, 0b111111), 39.0);
}

#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <complex>
#include <cstdint>
#include <span>
#include <string>
#include <string_view>
#include <vector>

#include "agpq/state_vector.hpp"

namespace agpq {

/// Reduced BCS (pairing) Hamiltonian on M doubly degenerate levels with
/// single-particle energies eps_p = p * delta_eps, p = 1..M.
///
/// Levels are addressed by 0-based index throughout the library; index i is
/// level p = i + 1 and is carried by qubit i.
struct PairingModel {
  int M = 0;
  double delta_eps = 1.0;
  double G = 0.0;
  int N = 0;

  PairingModel() = default;
  PairingModel(int levels, double spacing, double coupling, int pairs);

  /// Throws std::invalid_argument if the fields violate their bounds.
  void validate() const;

  double epsilon(int level) const { return (level + 1) * delta_eps; }
  bool half_filling() const { return 2 * N == M; }
  PairingModel with_coupling(double coupling) const;
};

/// Tensor product of single-qubit Paulis with a complex coefficient.
///
/// Stored in symplectic form: `x_mask` marks X or Y letters, `z_mask` marks Z
/// or Y letters. On a basis state the word acts as
///   coeff * i^{#Y} * (-1)^{popcount(b & z_mask)} |b ^ x_mask>.
class PauliWord {
 public:
  PauliWord() = default;
  /// `letters[i]` is the Pauli acting on qubit i (ancilla last).
  explicit PauliWord(std::string_view letters, cplx coefficient = 1.0);

  static PauliWord identity(int num_qubits, cplx coefficient = 1.0);
  static PauliWord single(int num_qubits, int qubit, char letter, cplx coefficient = 1.0);

  int num_qubits() const { return num_qubits_; }
  cplx coefficient() const { return coefficient_; }
  std::uint64_t x_mask() const { return x_mask_; }
  std::uint64_t z_mask() const { return z_mask_; }
  int y_count() const;
  char letter(int qubit) const;
  std::string letters() const;
  bool is_identity() const { return x_mask_ == 0 && z_mask_ == 0; }

  /// A word is Hermitian iff its coefficient is real.
  bool hermitian(double tol = 1e-12) const;

  /// Amplitude factor picked up by basis state `b` (it is sent to b ^ x_mask).
  cplx phase(std::uint64_t b) const;

  PauliWord operator*(const PauliWord& rhs) const;
  PauliWord scaled(cplx factor) const;
  /// Same letters, new coefficient.
  PauliWord with_coefficient(cplx c) const;
  /// Widen to `num_qubits` by padding identities on the high qubits.
  PauliWord widened(int num_qubits) const;

  bool same_letters(const PauliWord& other) const {
    return num_qubits_ == other.num_qubits_ && x_mask_ == other.x_mask_ &&
           z_mask_ == other.z_mask_;
  }

 private:
  int num_qubits_ = 0;
  std::uint64_t x_mask_ = 0;
  std::uint64_t z_mask_ = 0;
  cplx coefficient_{1.0, 0.0};
};

/// Sum of Pauli words on a common register.
class PauliSum {
 public:
  PauliSum() = default;
  explicit PauliSum(int num_qubits) : num_qubits_(num_qubits) {}
  PauliSum(int num_qubits, std::vector<PauliWord> terms);

  int num_qubits() const { return num_qubits_; }
  const std::vector<PauliWord>& terms() const { return terms_; }
  std::size_t size() const { return terms_.size(); }

  PauliSum& add(const PauliWord& word);
  PauliSum& operator+=(const PauliSum& other);
  PauliSum operator+(const PauliSum& other) const;
  PauliSum operator-(const PauliSum& other) const;
  PauliSum operator*(const PauliSum& other) const;
  PauliSum scaled(cplx factor) const;

  /// Merge equal letter strings (first-appearance order) and drop terms with
  /// |coefficient| below 1e-14.
  PauliSum simplified() const;
  bool hermitian(double tol = 1e-12) const;
  PauliSum widened(int num_qubits) const;

  /// out = (this) in. Words sharing an X/Y flip pattern are applied in one pass.
  void apply(const StateVector& in, StateVector& out) const;
  StateVector apply(const StateVector& in) const;
  /// Full 2^n x 2^n matrix with exact zeros dropped.
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> to_sparse() const;

  /// True when every flip pattern only connects basis states of equal
  /// popcount, i.e. the operator commutes with the pair-number operator.
  bool number_preserving(double tol = 1e-12) const;

 private:
  int num_qubits_ = 0;
  std::vector<PauliWord> terms_;
};

StateVector pauli_word_apply(const PauliWord& word, const StateVector& state);

/// Hard-core boson pair operators under the pair -> qubit mapping:
/// P+_p -> (X - iY)/2, P_p -> (X + iY)/2, N_p -> 1 - Z.
PauliSum pair_raising(int num_qubits, int level);
PauliSum pair_lowering(int num_qubits, int level);
PauliSum pair_number(int num_qubits, int level);
/// Sum over levels of N_p / 2, i.e. the pair-number operator.
PauliSum total_pair_number(int num_qubits, int levels);

/// sum_p (eps_p - G/2)(1 - Z_p) - (G/2) sum_{p>q} (X_p X_q + Y_p Y_q),
/// with the identity part of (1 - Z_p) kept so energies are absolute.
PauliSum hamiltonian_pauli(const PairingModel& model);

std::uint64_t binomial(int n, int k);

/// N-pair configurations of M levels as bitmasks in colexicographic order
/// (increasing integer value); rank() is the combinatorial number system.
class PairBasis {
 public:
  PairBasis(int levels, int pairs, std::uint64_t limit = 1'000'000);

  int levels() const { return levels_; }
  int pairs() const { return pairs_; }
  std::size_t size() const { return configs_.size(); }
  std::uint64_t config(std::size_t i) const { return configs_[i]; }
  std::span<const std::uint64_t> configs() const { return configs_; }
  std::size_t rank(std::uint64_t config) const;

 private:
  int levels_;
  int pairs_;
  std::vector<std::uint64_t> configs_;
};

/// Diagonal sum_{p in occ} (2 eps_p - G) of one configuration.
double pair_diagonal(const PairingModel& model, std::uint64_t config);

/// Dense seniority-zero Hamiltonian over PairBasis(M, N).
/// Throws DimensionLimit if C(M, N) exceeds `limit`.
Eigen::MatrixXd hamiltonian_pair_matrix(const PairingModel& model,
                                        std::uint64_t limit = 1'000'000);

/// Matrix-free y = H x in the same basis.
void apply_pair_hamiltonian(const PairingModel& model, const PairBasis& basis,
                            std::span<const double> x, std::span<double> y);

}  // namespace agpq

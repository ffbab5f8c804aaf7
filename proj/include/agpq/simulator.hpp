#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <string>

#include "agpq/pair_model.hpp"
#include "agpq/state_vector.hpp"

namespace agpq {

enum class GateKind { Ry, Rz, X, H, CNOT, CRy, CRz, PairHopper };

std::string gate_name(GateKind kind);
bool is_two_qubit(GateKind kind);
bool has_angle(GateKind kind);

/// One gate of the simulator's gate set.
///
/// Single-qubit gates act on `qubit0`. Controlled gates use `qubit0` as the
/// control and `qubit1` as the target. PairHopper(p, q, tau) acts on qubits
/// p = qubit0 and q = qubit1 with the rotation
///   |q occupied> -> cos(tau)|q occupied> + sin(tau)|p occupied>.
struct Gate {
  GateKind kind = GateKind::X;
  int qubit0 = 0;
  int qubit1 = -1;
  double angle = 0.0;

  static Gate ry(int q, double theta) { return {GateKind::Ry, q, -1, theta}; }
  static Gate rz(int q, double phi) { return {GateKind::Rz, q, -1, phi}; }
  static Gate x(int q) { return {GateKind::X, q, -1, 0.0}; }
  static Gate h(int q) { return {GateKind::H, q, -1, 0.0}; }
  static Gate cnot(int control, int target) { return {GateKind::CNOT, control, target, 0.0}; }
  static Gate cry(int control, int target, double theta) {
    return {GateKind::CRy, control, target, theta};
  }
  static Gate crz(int control, int target, double phi) {
    return {GateKind::CRz, control, target, phi};
  }
  static Gate pair_hopper(int p, int q, double tau) { return {GateKind::PairHopper, p, q, tau}; }

  bool two_qubit() const { return is_two_qubit(kind); }
  bool acts_on(int q) const { return qubit0 == q || (two_qubit() && qubit1 == q); }
  bool operator==(const Gate&) const = default;
};

/// Local unitary of a gate: 2x2, or 4x4 in the basis index 2*b(qubit0) + b(qubit1).
Eigen::MatrixXcd gate_matrix(const Gate& gate);

/// In-place gate application; indices must be in range and distinct.
void apply(StateVector& state, const Gate& gate);

/// sum over terms of coeff * <psi|word|psi>.
cplx expectation(const StateVector& state, const PauliSum& observable);
cplx expectation(const StateVector& state, const PauliWord& word);

/// Uniform double in [0, 1) from a counter-based hash of (seed, stream, counter).
double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter);

struct SampleStats {
  double mean = 0.0;       // coefficient times the mean of the +/-1 outcomes
  double std_error = 0.0;  // |coefficient| * sample standard deviation / sqrt(shots)
  long shots = 0;
};

/// Shot-sampled estimate of <word>: the state is rotated into the eigenbasis
/// of `word` (H for X, Rz(-pi/2) then H for Y), each shot reads the parity of
/// the word's support. Shot s uses counter_uniform(seed, stream, s).
SampleStats sample_stats(const StateVector& state, const PauliWord& word, long shots,
                         std::uint64_t seed, std::uint64_t stream = 0);
double sample(const StateVector& state, const PauliWord& word, long shots, std::uint64_t seed);

}  // namespace agpq

#pragma once

#include <complex>
#include <cstdint>
#include <span>
#include <vector>

namespace agpq {

using cplx = std::complex<double>;

/// Dense amplitude array over 2^num_qubits computational basis states.
///
/// Basis index bit i holds the state of qubit i, so qubit 0 (level 1) is the
/// rightmost factor of the tensor product and the ancilla, when present, is
/// the highest bit.
class StateVector {
 public:
  static constexpr int kMaxQubits = 30;

  /// |0...0>
  explicit StateVector(int num_qubits);
  StateVector(int num_qubits, std::vector<cplx> amplitudes);

  static StateVector basis_state(int num_qubits, std::uint64_t index);

  int num_qubits() const { return num_qubits_; }
  std::size_t size() const { return amplitudes_.size(); }

  std::span<const cplx> amplitudes() const { return amplitudes_; }
  std::span<cplx> amplitudes() { return amplitudes_; }

  const cplx& operator[](std::size_t i) const { return amplitudes_[i]; }
  cplx& operator[](std::size_t i) { return amplitudes_[i]; }

  double norm() const;
  double norm_squared() const;
  void normalize();

  /// <this|other>
  cplx inner(const StateVector& other) const;

  StateVector& operator+=(const StateVector& other);
  StateVector& operator*=(cplx factor);

 private:
  int num_qubits_;
  std::vector<cplx> amplitudes_;
};

}  // namespace agpq

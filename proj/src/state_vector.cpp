#include "agpq/state_vector.hpp"

#include <cmath>
#include <string>

#include "agpq/errors.hpp"

namespace agpq {

namespace {

void check_qubits(int num_qubits) {
  if (num_qubits < 0 || num_qubits > StateVector::kMaxQubits)
    throw SizeMismatch("state vector qubit count out of range: " +
                       std::to_string(num_qubits));
}

}  // namespace

StateVector::StateVector(int num_qubits) : num_qubits_(num_qubits) {
  check_qubits(num_qubits);
  amplitudes_.assign(std::size_t{1} << num_qubits, cplx{0.0, 0.0});
  amplitudes_[0] = 1.0;
}

StateVector::StateVector(int num_qubits, std::vector<cplx> amplitudes)
    : num_qubits_(num_qubits), amplitudes_(std::move(amplitudes)) {
  check_qubits(num_qubits);
  if (amplitudes_.size() != (std::size_t{1} << num_qubits))
    throw SizeMismatch("amplitude count " + std::to_string(amplitudes_.size()) +
                       " does not match 2^" + std::to_string(num_qubits));
}

StateVector StateVector::basis_state(int num_qubits, std::uint64_t index) {
  StateVector s(num_qubits);
  if (index >= s.size()) throw SizeMismatch("basis index out of range");
  s.amplitudes_[0] = 0.0;
  s.amplitudes_[index] = 1.0;
  return s;
}

double StateVector::norm_squared() const {
  double acc = 0.0;
  for (const auto& a : amplitudes_) acc += std::norm(a);
  return acc;
}

double StateVector::norm() const { return std::sqrt(norm_squared()); }

void StateVector::normalize() {
  const double n = norm();
  if (n == 0.0) return;
  for (auto& a : amplitudes_) a /= n;
}

cplx StateVector::inner(const StateVector& other) const {
  if (other.num_qubits_ != num_qubits_)
    throw SizeMismatch("inner product between states of different size");
  cplx acc{0.0, 0.0};
  for (std::size_t i = 0; i < amplitudes_.size(); ++i)
    acc += std::conj(amplitudes_[i]) * other.amplitudes_[i];
  return acc;
}

StateVector& StateVector::operator+=(const StateVector& other) {
  if (other.num_qubits_ != num_qubits_)
    throw SizeMismatch("sum of states of different size");
  for (std::size_t i = 0; i < amplitudes_.size(); ++i)
    amplitudes_[i] += other.amplitudes_[i];
  return *this;
}

StateVector& StateVector::operator*=(cplx factor) {
  for (auto& a : amplitudes_) a *= factor;
  return *this;
}

}  // namespace agpq

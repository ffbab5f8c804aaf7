#pragma once

#include "agpq/pair_model.hpp"
#include "agpq/state_vector.hpp"
#include "oracles.hpp"

namespace testutil {

inline oracle::Vec to_vec(const agpq::StateVector& s) {
  oracle::Vec v(s.size());
  for (std::size_t i = 0; i < s.size(); ++i) v(i) = s[i];
  return v;
}

inline agpq::StateVector from_vec(const oracle::Vec& v) {
  const int n = std::countr_zero(static_cast<std::uint64_t>(v.size()));
  return agpq::StateVector(n, std::vector<agpq::cplx>(v.data(), v.data() + v.size()));
}

// Dense matrix of a Pauli sum assembled from Kronecker products of its letters.
inline oracle::Mat dense(const agpq::PauliSum& sum) {
  const auto dim = Eigen::Index{1} << sum.num_qubits();
  oracle::Mat m = oracle::Mat::Zero(dim, dim);
  for (const auto& w : sum.terms()) m += w.coefficient() * oracle::pauli_string(w.letters());
  return m;
}

}  // namespace testutil

#include "agpq/projection.hpp"

#include <bit>
#include <cmath>
#include <iostream>
#include <numbers>
#include <stdexcept>
#include <string>

#include "agpq/errors.hpp"
#include "agpq/simulator.hpp"

namespace agpq {

ProjectionGrid ProjectionGrid::make(int M, int N) {
  if (M < 1 || N < 0 || N > M) throw std::invalid_argument("invalid projection grid dimensions");
  ProjectionGrid g;
  g.M = M;
  g.N = N;
  const auto widest = static_cast<unsigned>(std::max(N, M - N));
  g.k = static_cast<int>(std::bit_width(widest)) - 1;
  g.n = 1 << (g.k + 1);
  return g;
}

double ProjectionGrid::phase(int j) const { return 2.0 * std::numbers::pi * j / n; }

std::vector<double> ProjectionGrid::phases() const {
  std::vector<double> out(n);
  for (int j = 0; j < n; ++j) out[j] = phase(j);
  return out;
}

std::vector<double> ProjectionGrid::half_projection_phases() const {
  std::vector<double> out(k + 1);
  for (int j = 0; j <= k; ++j) out[j] = std::ldexp(std::numbers::pi, -j);
  return out;
}

void EstimatorConfig::validate() const {
  if (mode == EstimatorMode::Shots && shots_per_term < 1)
    throw std::invalid_argument("shots mode requires shots_per_term >= 1");
}

double classical_prefactor(const GeminalState& g, const ProjectionGrid& grid) {
  if (g.M() != grid.M || g.N != grid.N) throw SizeMismatch("geminals do not match the grid");
  const double norm = agp_norm(g);
  if (std::abs(norm - 1.0) > 1e-10)
    throw std::invalid_argument("classical prefactor needs geminals scaled to unit AGP norm (got " +
                                std::to_string(norm) + ")");
  double bcs = 1.0;
  for (double e : g.eta) bcs *= 1.0 + e * e;
  return bcs / grid.n;
}

cplx global_phase(double phi, int M, int N) { return std::polar(1.0, phi * (0.5 * M - N)); }

// ---------------------------------------------------------------------------

ProjectedEstimator::ProjectedEstimator(const GeminalState& geminals, const PauliSum& observable,
                                       const EstimatorConfig& config)
    : geminals_(geminals),
      observable_(observable.simplified()),
      config_(config),
      grid_(ProjectionGrid::make(geminals.M(), geminals.N)),
      prefactor_(classical_prefactor(geminals, grid_)),
      symmetry_broken_(false),
      bcs_(geminals.M()) {
  config_.validate();
  if (observable.num_qubits() != geminals.M())
    throw SizeMismatch("observable must act on the M level qubits");
  if (!observable_.hermitian()) throw NonHermitianObservable("projected observable is not Hermitian");
  symmetry_broken_ = !observable_.number_preserving();
  if (symmetry_broken_)
    std::clog << "warning: observable does not commute with the pair number; its AGP "
                 "expectation value is zero and the estimate is not meaningful\n";
  run(build_bcs_prep(geminals_), bcs_);
  if (config_.mode == EstimatorMode::Exact &&
      observable_.size() * bcs_.size() <= (std::size_t{1} << 24))
    matrix_ = observable_.to_sparse();
}

StateVector ProjectedEstimator::apply_observable(const StateVector& state) const {
  if (!matrix_) return observable_.apply(state);
  StateVector out(state.num_qubits());
  const auto src = state.amplitudes();
  auto dst = out.amplitudes();
  using Vec = Eigen::Matrix<cplx, Eigen::Dynamic, 1>;
  Eigen::Map<Vec>(dst.data(), static_cast<Eigen::Index>(dst.size())).noalias() =
      *matrix_ * Eigen::Map<const Vec>(src.data(), static_cast<Eigen::Index>(src.size()));
  return out;
}

ProjectedEstimate ProjectedEstimator::estimate(const Circuit* ansatz) const {
  if (ansatz && ansatz->num_qubits() > grid_.M)
    throw SizeMismatch("ansatz acts outside the level register");
  auto est = config_.mode == EstimatorMode::Exact ? estimate_exact(ansatz) : estimate_shots(ansatz);
  est.symmetry_broken = symmetry_broken_;
  return est;
}

ProjectedEstimate ProjectedEstimator::estimate_exact(const Circuit* ansatz) const {
  const int M = grid_.M;
  StateVector correlated = bcs_;
  if (ansatz) run(*ansatz, correlated);
  const StateVector a_correlated = apply_observable(correlated);

  cplx total{0.0, 0.0};
  if (!ansatz || ansatz->number_conserving()) {
    // U commutes with R(phi): accumulate <AU psi|U psi> per popcount sector,
    // then R(phi_j) only contributes exp(i phi_j (k - M/2)) on sector k.
    std::vector<cplx> sector(M + 1, cplx{0.0, 0.0});
    const auto w = a_correlated.amplitudes();
    const auto x = correlated.amplitudes();
    for (std::uint64_t b = 0; b < x.size(); ++b) sector[std::popcount(b)] += std::conj(w[b]) * x[b];
    for (int j = 0; j < grid_.n; ++j) {
      const double phi = grid_.phase(j);
      cplx term{0.0, 0.0};
      for (int k = 0; k <= M; ++k) term += sector[k] * std::polar(1.0, phi * (k - 0.5 * M));
      total += global_phase(phi, M, grid_.N) * term;
    }
  } else {
    for (int j = 0; j < grid_.n; ++j) {
      const double phi = grid_.phase(j);
      StateVector rotated = bcs_;
      for (int p = 0; p < M; ++p) apply(rotated, Gate::rz(p, phi));
      run(*ansatz, rotated);
      total += global_phase(phi, M, grid_.N) * a_correlated.inner(rotated);
    }
  }
  total *= prefactor_;

  ProjectedEstimate est;
  est.value = total.real();
  est.imag_residual = std::abs(total.imag());
  est.circuit_evaluations = grid_.n;
  if (!symmetry_broken_ && est.imag_residual >= 1e-10)
    throw Error("projected estimate has imaginary residual " + std::to_string(est.imag_residual));
  return est;
}

ProjectedEstimate ProjectedEstimator::estimate_shots(const Circuit* ansatz) const {
  const int M = grid_.M;
  const auto& terms = observable_.terms();
  const auto stride = static_cast<std::uint64_t>(2 * terms.size());
  double value = 0.0, variance = 0.0;
  long drawn = 0;
  for (int j = 0; j < grid_.n; ++j) {
    const double phi = grid_.phase(j);
    Circuit circuit = build_full_pipeline(geminals_, phi, AnsatzParams::zeros(M));
    if (ansatz) {
      circuit = Circuit(M + 1);
      circuit.append(build_bcs_prep(geminals_));
      circuit.append(build_projection_block(phi, M));
      circuit.append(*ansatz);
    }
    const StateVector state = simulate(circuit, M + 1);
    const cplx gamma = global_phase(phi, M, grid_.N);
    const bool need_imag = std::abs(gamma.imag()) > 1e-15;
    for (std::size_t t = 0; t < terms.size(); ++t) {
      const PauliWord wide = terms[t].widened(M + 1);
      const auto stream = static_cast<std::uint64_t>(j) * stride + 2 * t;
      const auto re = sample_stats(state, wide * PauliWord::single(M + 1, M, 'X'),
                                   config_.shots_per_term, config_.seed, stream);
      value += gamma.real() * re.mean;
      variance += gamma.real() * gamma.real() * re.std_error * re.std_error;
      drawn += re.shots;
      if (need_imag) {
        const auto im = sample_stats(state, wide * PauliWord::single(M + 1, M, 'Y'),
                                     config_.shots_per_term, config_.seed, stream + 1);
        value -= gamma.imag() * im.mean;
        variance += gamma.imag() * gamma.imag() * im.std_error * im.std_error;
        drawn += im.shots;
      }
    }
  }
  ProjectedEstimate est;
  est.value = prefactor_ * value;
  est.std_error = prefactor_ * std::sqrt(variance);
  est.circuit_evaluations = grid_.n;
  est.measurements = drawn;
  return est;
}

ProjectedEstimate estimate_projected_detailed(const GeminalState& g, const PauliSum& observable,
                                              const Circuit* ansatz, const EstimatorConfig& config) {
  return ProjectedEstimator(g, observable, config).estimate(ansatz);
}

double estimate_projected(const GeminalState& g, const PauliSum& observable, const Circuit* ansatz,
                          const EstimatorConfig& config) {
  return estimate_projected_detailed(g, observable, ansatz, config).value;
}

StateVector project_statevector(const StateVector& state, const ProjectionGrid& grid, int N) {
  if (state.num_qubits() != grid.M) throw SizeMismatch("state does not match the grid's M");
  const auto half = grid.half_projection_phases();
  StateVector out = state;
  auto a = out.amplitudes();
  for (std::uint64_t b = 0; b < a.size(); ++b) {
    const int excess = std::popcount(b) - N;
    cplx f{1.0, 0.0};
    for (double phi : half) f *= 0.5 * (1.0 + std::polar(1.0, phi * excess));
    a[b] *= f;
  }
  return out;
}

}  // namespace agpq

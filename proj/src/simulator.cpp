#include "agpq/simulator.hpp"

#include <bit>
#include <cmath>
#include <numbers>
#include <stdexcept>

#include "agpq/errors.hpp"

namespace agpq {

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::Ry: return "RY";
    case GateKind::Rz: return "RZ";
    case GateKind::X: return "X";
    case GateKind::H: return "H";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CRy: return "CRY";
    case GateKind::CRz: return "CRZ";
    case GateKind::PairHopper: return "PAIRHOPPER";
  }
  return "?";
}

bool is_two_qubit(GateKind kind) {
  return kind == GateKind::CNOT || kind == GateKind::CRy || kind == GateKind::CRz ||
         kind == GateKind::PairHopper;
}

bool has_angle(GateKind kind) {
  return kind == GateKind::Ry || kind == GateKind::Rz || kind == GateKind::CRy ||
         kind == GateKind::CRz || kind == GateKind::PairHopper;
}

namespace {

Eigen::Matrix2cd single_matrix(GateKind kind, double angle) {
  Eigen::Matrix2cd m;
  switch (kind) {
    case GateKind::Ry:
    case GateKind::CRy: {
      const double c = std::cos(angle / 2), s = std::sin(angle / 2);
      m << c, -s, s, c;
      break;
    }
    case GateKind::Rz:
    case GateKind::CRz:
      m << std::polar(1.0, -angle / 2), 0.0, 0.0, std::polar(1.0, angle / 2);
      break;
    case GateKind::X:
    case GateKind::CNOT:
      m << 0.0, 1.0, 1.0, 0.0;
      break;
    case GateKind::H: {
      const double r = std::numbers::sqrt2 / 2;
      m << r, r, r, -r;
      break;
    }
    default:
      throw std::logic_error("no single-qubit matrix for gate");
  }
  return m;
}

void check_indices(const StateVector& state, const Gate& gate) {
  const int n = state.num_qubits();
  if (gate.qubit0 < 0 || gate.qubit0 >= n)
    throw std::out_of_range("gate qubit index out of range");
  if (gate.two_qubit()) {
    if (gate.qubit1 < 0 || gate.qubit1 >= n)
      throw std::out_of_range("gate qubit index out of range");
    if (gate.qubit1 == gate.qubit0)
      throw std::invalid_argument("two-qubit gate needs distinct qubits");
  }
}

// Applies a 2x2 block to every amplitude pair differing in `target`,
// restricted to basis states where all bits of `control_mask` are set.
void apply_block(StateVector& state, int target, std::uint64_t control_mask,
                 const Eigen::Matrix2cd& m) {
  const std::uint64_t bit = std::uint64_t{1} << target;
  auto a = state.amplitudes();
  const std::uint64_t dim = a.size();
  const cplx m00 = m(0, 0), m01 = m(0, 1), m10 = m(1, 0), m11 = m(1, 1);
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & bit) || (b & control_mask) != control_mask) continue;
    const cplx a0 = a[b], a1 = a[b | bit];
    a[b] = m00 * a0 + m01 * a1;
    a[b | bit] = m10 * a0 + m11 * a1;
  }
}

void apply_pair_hopper(StateVector& state, int p, int q, double tau) {
  const std::uint64_t bp = std::uint64_t{1} << p, bq = std::uint64_t{1} << q;
  const double c = std::cos(tau), s = std::sin(tau);
  auto a = state.amplitudes();
  const std::uint64_t dim = a.size();
  for (std::uint64_t b = 0; b < dim; ++b) {
    if ((b & bp) || !(b & bq)) continue;
    const std::uint64_t partner = b ^ bp ^ bq;  // q empty, p occupied
    const cplx a01 = a[b], a10 = a[partner];
    a[b] = c * a01 - s * a10;
    a[partner] = s * a01 + c * a10;
  }
}

}  // namespace

Eigen::MatrixXcd gate_matrix(const Gate& gate) {
  if (!gate.two_qubit()) return single_matrix(gate.kind, gate.angle);
  Eigen::Matrix4cd m = Eigen::Matrix4cd::Identity();
  if (gate.kind == GateKind::PairHopper) {
    const double c = std::cos(gate.angle), s = std::sin(gate.angle);
    m(1, 1) = c;
    m(1, 2) = -s;
    m(2, 1) = s;
    m(2, 2) = c;
    return m;
  }
  // Controlled gate: the target block sits in the control = 1 quadrant.
  m.bottomRightCorner<2, 2>() = single_matrix(gate.kind, gate.angle);
  return m;
}

void apply(StateVector& state, const Gate& gate) {
  check_indices(state, gate);
  switch (gate.kind) {
    case GateKind::Ry:
    case GateKind::Rz:
    case GateKind::X:
    case GateKind::H:
      apply_block(state, gate.qubit0, 0, single_matrix(gate.kind, gate.angle));
      break;
    case GateKind::CNOT:
    case GateKind::CRy:
    case GateKind::CRz:
      apply_block(state, gate.qubit1, std::uint64_t{1} << gate.qubit0,
                  single_matrix(gate.kind, gate.angle));
      break;
    case GateKind::PairHopper:
      apply_pair_hopper(state, gate.qubit0, gate.qubit1, gate.angle);
      break;
  }
}

cplx expectation(const StateVector& state, const PauliWord& word) {
  if (word.num_qubits() != state.num_qubits())
    throw SizeMismatch("observable and state have different qubit counts");
  cplx acc{0.0, 0.0};
  const auto a = state.amplitudes();
  const std::uint64_t flip = word.x_mask();
  for (std::uint64_t b = 0; b < a.size(); ++b) acc += std::conj(a[b ^ flip]) * word.phase(b) * a[b];
  return acc;
}

cplx expectation(const StateVector& state, const PauliSum& observable) {
  if (observable.num_qubits() != state.num_qubits())
    throw SizeMismatch("observable and state have different qubit counts");
  const StateVector applied = observable.apply(state);
  return state.inner(applied);
}

namespace {

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9e3779b97f4a7c15ULL;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ULL;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebULL;
  return x ^ (x >> 31);
}

}  // namespace

double counter_uniform(std::uint64_t seed, std::uint64_t stream, std::uint64_t counter) {
  const std::uint64_t h = splitmix64(splitmix64(splitmix64(seed) ^ stream) ^ counter);
  return static_cast<double>(h >> 11) * 0x1.0p-53;
}

SampleStats sample_stats(const StateVector& state, const PauliWord& word, long shots,
                         std::uint64_t seed, std::uint64_t stream) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (word.num_qubits() != state.num_qubits())
    throw SizeMismatch("observable and state have different qubit counts");
  if (!word.hermitian()) throw NonHermitianObservable("sampled Pauli word is not Hermitian");

  StateVector rotated = state;
  for (int q = 0; q < word.num_qubits(); ++q) {
    switch (word.letter(q)) {
      case 'X':
        apply(rotated, Gate::h(q));
        break;
      case 'Y':
        apply(rotated, Gate::rz(q, -std::numbers::pi / 2));
        apply(rotated, Gate::h(q));
        break;
      default:
        break;
    }
  }
  const std::uint64_t support = word.x_mask() | word.z_mask();
  double p_plus = 0.0;
  const auto a = rotated.amplitudes();
  for (std::uint64_t b = 0; b < a.size(); ++b)
    if ((std::popcount(b & support) & 1) == 0) p_plus += std::norm(a[b]);

  long plus = 0;
  for (long s = 0; s < shots; ++s)
    if (counter_uniform(seed, stream, static_cast<std::uint64_t>(s)) < p_plus) ++plus;

  const double coeff = word.coefficient().real();
  const double m = (2.0 * plus - shots) / static_cast<double>(shots);
  SampleStats out;
  out.shots = shots;
  out.mean = coeff * m;
  out.std_error =
      shots > 1 ? std::abs(coeff) * std::sqrt(std::max(0.0, 1.0 - m * m) * shots /
                                               (shots - 1.0) / shots)
                : std::abs(coeff);
  return out;
}

double sample(const StateVector& state, const PauliWord& word, long shots, std::uint64_t seed) {
  return sample_stats(state, word, shots, seed).mean;
}

}  // namespace agpq

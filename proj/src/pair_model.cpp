#include "agpq/pair_model.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <map>
#include <stdexcept>
#include <utility>

#include "agpq/errors.hpp"

namespace agpq {

namespace {

constexpr cplx kI{0.0, 1.0};

cplx i_power(int k) {
  switch (((k % 4) + 4) % 4) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

int parity(std::uint64_t v) { return std::popcount(v) & 1; }

void check_register(int num_qubits) {
  if (num_qubits < 0 || num_qubits > 62)
    throw std::invalid_argument("Pauli register size out of range");
}

}  // namespace

// ---------------------------------------------------------------------------
// PairingModel

PairingModel::PairingModel(int levels, double spacing, double coupling, int pairs)
    : M(levels), delta_eps(spacing), G(coupling), N(pairs) {
  validate();
}

void PairingModel::validate() const {
  if (M < 1 || M > 62) throw std::invalid_argument("level count M must be in [1, 62]");
  if (!(delta_eps > 0.0) || !std::isfinite(delta_eps))
    throw std::invalid_argument("level spacing delta_eps must be positive");
  if (!std::isfinite(G)) throw std::invalid_argument("coupling G must be finite");
  if (N < 0 || N > M) throw std::invalid_argument("pair count N must satisfy 0 <= N <= M");
}

PairingModel PairingModel::with_coupling(double coupling) const {
  PairingModel m = *this;
  m.G = coupling;
  m.validate();
  return m;
}

// ---------------------------------------------------------------------------
// PauliWord

PauliWord::PauliWord(std::string_view letters, cplx coefficient)
    : num_qubits_(static_cast<int>(letters.size())), coefficient_(coefficient) {
  check_register(num_qubits_);
  for (int q = 0; q < num_qubits_; ++q) {
    const std::uint64_t bit = std::uint64_t{1} << q;
    switch (letters[q]) {
      case 'I': break;
      case 'X': x_mask_ |= bit; break;
      case 'Y': x_mask_ |= bit; z_mask_ |= bit; break;
      case 'Z': z_mask_ |= bit; break;
      default:
        throw std::invalid_argument(std::string("invalid Pauli letter '") + letters[q] + "'");
    }
  }
}

PauliWord PauliWord::identity(int num_qubits, cplx coefficient) {
  return PauliWord(std::string(num_qubits, 'I'), coefficient);
}

PauliWord PauliWord::single(int num_qubits, int qubit, char letter, cplx coefficient) {
  if (qubit < 0 || qubit >= num_qubits) throw std::out_of_range("qubit index out of range");
  std::string s(num_qubits, 'I');
  s[qubit] = letter;
  return PauliWord(s, coefficient);
}

int PauliWord::y_count() const { return std::popcount(x_mask_ & z_mask_); }

char PauliWord::letter(int qubit) const {
  const bool x = (x_mask_ >> qubit) & 1;
  const bool z = (z_mask_ >> qubit) & 1;
  if (x && z) return 'Y';
  if (x) return 'X';
  if (z) return 'Z';
  return 'I';
}

std::string PauliWord::letters() const {
  std::string s(num_qubits_, 'I');
  for (int q = 0; q < num_qubits_; ++q) s[q] = letter(q);
  return s;
}

bool PauliWord::hermitian(double tol) const { return std::abs(coefficient_.imag()) <= tol; }

cplx PauliWord::phase(std::uint64_t b) const {
  cplx f = coefficient_ * i_power(y_count());
  return parity(b & z_mask_) ? -f : f;
}

PauliWord PauliWord::operator*(const PauliWord& rhs) const {
  if (rhs.num_qubits_ != num_qubits_)
    throw SizeMismatch("product of Pauli words on different registers");
  // Each word is c i^{nY} X^x Z^z; moving Z^{z1} past X^{x2} costs (-1)^{z1.x2}.
  PauliWord out;
  out.num_qubits_ = num_qubits_;
  out.x_mask_ = x_mask_ ^ rhs.x_mask_;
  out.z_mask_ = z_mask_ ^ rhs.z_mask_;
  const int phase_power = y_count() + rhs.y_count() - out.y_count() +
                          2 * parity(z_mask_ & rhs.x_mask_);
  out.coefficient_ = coefficient_ * rhs.coefficient_ * i_power(phase_power);
  return out;
}

PauliWord PauliWord::scaled(cplx factor) const { return with_coefficient(coefficient_ * factor); }

PauliWord PauliWord::with_coefficient(cplx c) const {
  PauliWord out = *this;
  out.coefficient_ = c;
  return out;
}

PauliWord PauliWord::widened(int num_qubits) const {
  if (num_qubits < num_qubits_) throw SizeMismatch("cannot narrow a Pauli word");
  check_register(num_qubits);
  PauliWord out = *this;
  out.num_qubits_ = num_qubits;
  return out;
}

StateVector pauli_word_apply(const PauliWord& word, const StateVector& state) {
  if (word.num_qubits() != state.num_qubits())
    throw SizeMismatch("Pauli word and state have different qubit counts");
  StateVector out(state.num_qubits(), std::vector<cplx>(state.size()));
  const auto flip = word.x_mask();
  for (std::uint64_t b = 0; b < state.size(); ++b) out[b ^ flip] = word.phase(b) * state[b];
  return out;
}

// ---------------------------------------------------------------------------
// PauliSum

PauliSum::PauliSum(int num_qubits, std::vector<PauliWord> terms)
    : num_qubits_(num_qubits), terms_(std::move(terms)) {
  for (const auto& t : terms_)
    if (t.num_qubits() != num_qubits_) throw SizeMismatch("Pauli term register mismatch");
}

PauliSum& PauliSum::add(const PauliWord& word) {
  if (word.num_qubits() != num_qubits_) throw SizeMismatch("Pauli term register mismatch");
  terms_.push_back(word);
  return *this;
}

PauliSum& PauliSum::operator+=(const PauliSum& other) {
  if (other.num_qubits_ != num_qubits_) throw SizeMismatch("Pauli sum register mismatch");
  terms_.insert(terms_.end(), other.terms_.begin(), other.terms_.end());
  return *this;
}

PauliSum PauliSum::operator+(const PauliSum& other) const {
  PauliSum out = *this;
  out += other;
  return out;
}

PauliSum PauliSum::operator-(const PauliSum& other) const { return *this + other.scaled(-1.0); }

PauliSum PauliSum::operator*(const PauliSum& other) const {
  if (other.num_qubits_ != num_qubits_) throw SizeMismatch("Pauli sum register mismatch");
  PauliSum out(num_qubits_);
  out.terms_.reserve(terms_.size() * other.terms_.size());
  for (const auto& a : terms_)
    for (const auto& b : other.terms_) out.terms_.push_back(a * b);
  return out.simplified();
}

PauliSum PauliSum::scaled(cplx factor) const {
  PauliSum out = *this;
  for (auto& t : out.terms_) t = t.scaled(factor);
  return out;
}

PauliSum PauliSum::simplified() const {
  std::map<std::pair<std::uint64_t, std::uint64_t>, std::size_t> slot;
  std::vector<PauliWord> merged;
  for (const auto& t : terms_) {
    const auto key = std::make_pair(t.x_mask(), t.z_mask());
    auto it = slot.find(key);
    if (it == slot.end()) {
      slot.emplace(key, merged.size());
      merged.push_back(t);
    } else {
      auto& m = merged[it->second];
      m = m.with_coefficient(m.coefficient() + t.coefficient());
    }
  }
  std::erase_if(merged, [](const PauliWord& w) { return std::abs(w.coefficient()) < 1e-14; });
  return PauliSum(num_qubits_, std::move(merged));
}

bool PauliSum::hermitian(double tol) const {
  const auto s = simplified();
  return std::all_of(s.terms_.begin(), s.terms_.end(),
                     [tol](const PauliWord& w) { return w.hermitian(tol); });
}

PauliSum PauliSum::widened(int num_qubits) const {
  PauliSum out(num_qubits);
  for (const auto& t : terms_) out.terms_.push_back(t.widened(num_qubits));
  return out;
}

namespace {

struct FlipGroup {
  std::uint64_t x_mask;
  std::vector<std::pair<std::uint64_t, cplx>> z_terms;  // (z_mask, coeff * i^{nY})
};

std::vector<FlipGroup> group_by_flip(const std::vector<PauliWord>& terms) {
  std::vector<FlipGroup> groups;
  std::map<std::uint64_t, std::size_t> slot;
  for (const auto& t : terms) {
    auto [it, fresh] = slot.emplace(t.x_mask(), groups.size());
    if (fresh) groups.push_back({t.x_mask(), {}});
    groups[it->second].z_terms.emplace_back(t.z_mask(), t.coefficient() * i_power(t.y_count()));
  }
  return groups;
}

cplx group_factor(const FlipGroup& g, std::uint64_t b) {
  cplx f{0.0, 0.0};
  for (const auto& [z, c] : g.z_terms) f += parity(b & z) ? -c : c;
  return f;
}

}  // namespace

void PauliSum::apply(const StateVector& in, StateVector& out) const {
  if (in.num_qubits() != num_qubits_ || out.num_qubits() != num_qubits_)
    throw SizeMismatch("Pauli sum and state have different qubit counts");
  auto dst = out.amplitudes();
  std::fill(dst.begin(), dst.end(), cplx{0.0, 0.0});
  const auto src = in.amplitudes();
  const std::uint64_t dim = src.size();
  for (const auto& g : group_by_flip(terms_)) {
    if (g.z_terms.size() == 1) {
      const auto [z, c] = g.z_terms.front();
      for (std::uint64_t b = 0; b < dim; ++b)
        dst[b ^ g.x_mask] += (parity(b & z) ? -c : c) * src[b];
    } else {
      for (std::uint64_t b = 0; b < dim; ++b) dst[b ^ g.x_mask] += group_factor(g, b) * src[b];
    }
  }
}

StateVector PauliSum::apply(const StateVector& in) const {
  StateVector out(in.num_qubits());
  apply(in, out);
  return out;
}

Eigen::SparseMatrix<cplx, Eigen::RowMajor> PauliSum::to_sparse() const {
  if (num_qubits_ > StateVector::kMaxQubits) throw DimensionLimit("too many qubits for a matrix");
  const std::uint64_t dim = std::uint64_t{1} << num_qubits_;
  std::vector<Eigen::Triplet<cplx>> entries;
  for (const auto& g : group_by_flip(simplified().terms_))
    for (std::uint64_t b = 0; b < dim; ++b) {
      const cplx f = group_factor(g, b);
      if (f != cplx{0.0, 0.0})
        entries.emplace_back(static_cast<int>(b ^ g.x_mask), static_cast<int>(b), f);
    }
  Eigen::SparseMatrix<cplx, Eigen::RowMajor> m(static_cast<Eigen::Index>(dim), static_cast<Eigen::Index>(dim));
  m.setFromTriplets(entries.begin(), entries.end());
  return m;
}

bool PauliSum::number_preserving(double tol) const {
  for (const auto& g : group_by_flip(simplified().terms_)) {
    if (g.x_mask == 0) continue;
    std::uint64_t support = g.x_mask;
    for (const auto& zt : g.z_terms) support |= zt.first;
    const int flips = std::popcount(g.x_mask);
    // Enumerate assignments of the support bits; other bits do not matter.
    for (std::uint64_t sub = support;; sub = (sub - 1) & support) {
      const bool conserving = (flips % 2 == 0) && std::popcount(sub & g.x_mask) == flips / 2;
      if (!conserving && std::abs(group_factor(g, sub)) > tol) return false;
      if (sub == 0) break;
    }
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pair operators and Hamiltonian

PauliSum pair_raising(int num_qubits, int level) {
  return PauliSum(num_qubits, {PauliWord::single(num_qubits, level, 'X', 0.5),
                               PauliWord::single(num_qubits, level, 'Y', -0.5 * kI)});
}

PauliSum pair_lowering(int num_qubits, int level) {
  return PauliSum(num_qubits, {PauliWord::single(num_qubits, level, 'X', 0.5),
                               PauliWord::single(num_qubits, level, 'Y', 0.5 * kI)});
}

PauliSum pair_number(int num_qubits, int level) {
  return PauliSum(num_qubits, {PauliWord::identity(num_qubits),
                               PauliWord::single(num_qubits, level, 'Z', -1.0)});
}

PauliSum total_pair_number(int num_qubits, int levels) {
  PauliSum out(num_qubits);
  for (int p = 0; p < levels; ++p) out += pair_number(num_qubits, p).scaled(0.5);
  return out.simplified();
}

PauliSum hamiltonian_pauli(const PairingModel& model) {
  model.validate();
  const int M = model.M;
  const double G = model.G;
  PauliSum h(M);
  double constant = 0.0;
  for (int p = 0; p < M; ++p) {
    const double a = model.epsilon(p) - G / 2.0;
    constant += a;
    h.add(PauliWord::single(M, p, 'Z', -a));
  }
  for (int q = 0; q < M; ++q) {
    for (int p = q + 1; p < M; ++p) {
      std::string xx(M, 'I'), yy(M, 'I');
      xx[p] = xx[q] = 'X';
      yy[p] = yy[q] = 'Y';
      h.add(PauliWord(xx, -G / 2.0));
      h.add(PauliWord(yy, -G / 2.0));
    }
  }
  h.add(PauliWord::identity(M, constant));
  return h;
}

// ---------------------------------------------------------------------------
// Pair-configuration basis

std::uint64_t binomial(int n, int k) {
  if (k < 0 || k > n) return 0;
  k = std::min(k, n - k);
  __extension__ typedef unsigned __int128 wide;  // r * (n - k + i) can exceed 64 bits
  wide r = 1;
  for (int i = 1; i <= k; ++i) r = r * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
  return static_cast<std::uint64_t>(r);
}

PairBasis::PairBasis(int levels, int pairs, std::uint64_t limit) : levels_(levels), pairs_(pairs) {
  if (levels < 0 || levels > 62 || pairs < 0 || pairs > levels)
    throw std::invalid_argument("invalid pair basis dimensions");
  const std::uint64_t dim = binomial(levels, pairs);
  if (dim > limit)
    throw DimensionLimit("pair sector dimension C(" + std::to_string(levels) + "," +
                         std::to_string(pairs) + ") = " + std::to_string(dim) +
                         " exceeds limit " + std::to_string(limit));
  configs_.reserve(dim);
  if (pairs == 0) {
    configs_.push_back(0);
    return;
  }
  std::uint64_t c = (std::uint64_t{1} << pairs) - 1;
  for (std::uint64_t i = 0; i < dim; ++i) {
    configs_.push_back(c);
    // Gosper's hack: next larger integer with the same popcount.
    const std::uint64_t lowest = c & (~c + 1);
    const std::uint64_t ripple = c + lowest;
    c = (((ripple ^ c) >> 2) / lowest) | ripple;
  }
}

std::size_t PairBasis::rank(std::uint64_t config) const {
  std::size_t r = 0;
  int i = 0;
  while (config) {
    const int pos = std::countr_zero(config);
    r += binomial(pos, i + 1);
    ++i;
    config &= config - 1;
  }
  return r;
}

double pair_diagonal(const PairingModel& model, std::uint64_t config) {
  double d = 0.0;
  while (config) {
    const int p = std::countr_zero(config);
    d += 2.0 * model.epsilon(p) - model.G;
    config &= config - 1;
  }
  return d;
}

Eigen::MatrixXd hamiltonian_pair_matrix(const PairingModel& model, std::uint64_t limit) {
  model.validate();
  const PairBasis basis(model.M, model.N, limit);
  const auto dim = static_cast<Eigen::Index>(basis.size());
  Eigen::MatrixXd h = Eigen::MatrixXd::Zero(dim, dim);
  const std::uint64_t full = (std::uint64_t{1} << model.M) - 1;
  for (Eigen::Index i = 0; i < dim; ++i) {
    const std::uint64_t c = basis.config(i);
    h(i, i) = pair_diagonal(model, c);
    for (std::uint64_t occ = c; occ; occ &= occ - 1) {
      const std::uint64_t from = occ & (~occ + 1);
      for (std::uint64_t emp = full & ~c; emp; emp &= emp - 1) {
        const std::uint64_t to = emp & (~emp + 1);
        h(static_cast<Eigen::Index>(basis.rank(c ^ from ^ to)), i) = -model.G;
      }
    }
  }
  return h;
}

void apply_pair_hamiltonian(const PairingModel& model, const PairBasis& basis,
                            std::span<const double> x, std::span<double> y) {
  if (x.size() != basis.size() || y.size() != basis.size())
    throw SizeMismatch("vector length does not match pair basis");
  const std::uint64_t full = (std::uint64_t{1} << model.M) - 1;
  for (std::size_t i = 0; i < basis.size(); ++i) {
    const std::uint64_t c = basis.config(i);
    double acc = pair_diagonal(model, c) * x[i];
    double hop = 0.0;
    for (std::uint64_t occ = c; occ; occ &= occ - 1) {
      const std::uint64_t from = occ & (~occ + 1);
      for (std::uint64_t emp = full & ~c; emp; emp &= emp - 1) {
        const std::uint64_t to = emp & (~emp + 1);
        hop += x[basis.rank(c ^ from ^ to)];
      }
    }
    y[i] = acc - model.G * hop;
  }
}

}  // namespace agpq

#include "agpq/circuit.hpp"

#include <algorithm>
#include <cctype>
#include <charconv>
#include <cmath>
#include <cstdio>
#include <sstream>
#include <stdexcept>

#include "agpq/errors.hpp"

namespace agpq {

AnsatzParams AnsatzParams::zeros(int M) { return {std::vector<double>(ansatz_parameter_count(M), 0.0)}; }

std::vector<std::pair<int, int>> ansatz_pair_order(int M) {
  std::vector<std::pair<int, int>> order;
  order.reserve(ansatz_parameter_count(M));
  for (int q = 0; q < M; ++q)
    for (int p = q + 1; p < M; ++p) order.emplace_back(p, q);
  return order;
}

std::size_t ansatz_parameter_count(int M) {
  return M < 2 ? 0 : static_cast<std::size_t>(M) * (M - 1) / 2;
}

Circuit& Circuit::add(const Gate& gate) {
  const int hi = gate.two_qubit() ? std::max(gate.qubit0, gate.qubit1) : gate.qubit0;
  const int lo = gate.two_qubit() ? std::min(gate.qubit0, gate.qubit1) : gate.qubit0;
  if (lo < 0 || hi >= num_qubits_) throw std::out_of_range("gate qubit index outside the circuit");
  if (gate.two_qubit() && gate.qubit0 == gate.qubit1)
    throw std::invalid_argument("two-qubit gate needs distinct qubits");
  gates_.push_back(gate);
  return *this;
}

Circuit& Circuit::append(const Circuit& other) {
  num_qubits_ = std::max(num_qubits_, other.num_qubits_);
  const std::size_t offset = gates_.size();
  gates_.insert(gates_.end(), other.gates_.begin(), other.gates_.end());
  for (const auto& [key, idx] : other.slots_) slots_[key] = idx + offset;
  return *this;
}

// A native PairHopper stands for its CNOT-CRy-CNOT block in both counts.
int Circuit::two_qubit_count() const {
  int n = 0;
  for (const auto& g : gates_)
    if (g.two_qubit()) n += g.kind == GateKind::PairHopper ? 3 : 1;
  return n;
}

int Circuit::depth() const {
  std::vector<int> layer(num_qubits_, 0);
  int depth = 0;
  for (const auto& g : gates_) {
    int l = layer[g.qubit0];
    if (g.two_qubit()) l = std::max(l, layer[g.qubit1]);
    l += g.kind == GateKind::PairHopper ? 3 : 1;
    layer[g.qubit0] = l;
    if (g.two_qubit()) layer[g.qubit1] = l;
    depth = std::max(depth, l);
  }
  return depth;
}

namespace {

// CNOT(p -> q), CRy(q -> p, 2 tau), CNOT(p -> q) starting at gates[i].
bool hopper_block_at(const std::vector<Gate>& gates, std::size_t i, Gate& fused) {
  if (i + 2 >= gates.size()) return false;
  const Gate& a = gates[i];
  const Gate& b = gates[i + 1];
  const Gate& c = gates[i + 2];
  if (a.kind != GateKind::CNOT || b.kind != GateKind::CRy || c.kind != GateKind::CNOT) return false;
  if (!(a == c) || b.qubit0 != a.qubit1 || b.qubit1 != a.qubit0) return false;
  fused = Gate::pair_hopper(a.qubit0, a.qubit1, b.angle / 2.0);
  return true;
}

}  // namespace

bool Circuit::number_conserving() const {
  for (std::size_t i = 0; i < gates_.size(); ++i) {
    const Gate& g = gates_[i];
    switch (g.kind) {
      case GateKind::Rz:
      case GateKind::CRz:
      case GateKind::PairHopper:
        break;
      default: {
        Gate fused;
        if (!hopper_block_at(gates_, i, fused)) return false;
        i += 2;
      }
    }
  }
  return true;
}

ResourceCount count_resources(const Circuit& circuit) {
  ResourceCount rc;
  rc.two_qubit_count = circuit.two_qubit_count();
  rc.depth = circuit.depth();
  for (const auto& g : circuit.gates()) {
    switch (g.kind) {
      case GateKind::CNOT: rc.cnot_count += 1; break;
      case GateKind::CRy:
      case GateKind::CRz: rc.cnot_count += 2; break;
      case GateKind::PairHopper: rc.cnot_count += 4; break;
      default: break;
    }
  }
  return rc;
}

Circuit build_bcs_prep(const GeminalState& g) {
  Circuit c(g.M());
  for (int p = 0; p < g.M(); ++p) c.add(Gate::ry(p, 2.0 * std::atan(g.eta[p])));
  return c;
}

Circuit build_projection_block(double phi, int M) {
  if (M < 1) throw std::invalid_argument("projection block needs M >= 1");
  Circuit c(M + 1);
  c.add(Gate::h(M));
  for (int p = 0; p < M; ++p) c.add(Gate::crz(M, p, phi));
  return c;
}

Circuit build_pair_hopper_ansatz(const AnsatzParams& params, int M) {
  const auto order = ansatz_pair_order(M);
  if (params.tau.size() != order.size())
    throw SizeMismatch("ansatz needs " + std::to_string(order.size()) + " parameters, got " +
                       std::to_string(params.tau.size()));
  Circuit c(M);
  for (std::size_t k = 0; k < order.size(); ++k) {
    const auto [p, q] = order[k];
    c.add(Gate::cnot(p, q));
    c.bind_slot(p, q, c.size());
    c.add(Gate::cry(q, p, 2.0 * params.tau[k]));
    c.add(Gate::cnot(p, q));
  }
  return c;
}

Circuit build_full_pipeline(const GeminalState& g, double phi, const AnsatzParams& params) {
  const int M = g.M();
  Circuit c(M + 1);
  c.append(build_bcs_prep(g));
  c.append(build_projection_block(phi, M));
  c.append(build_pair_hopper_ansatz(params, M));
  return c;
}

void run(const Circuit& circuit, StateVector& state) {
  if (circuit.num_qubits() > state.num_qubits())
    throw SizeMismatch("circuit is wider than the state");
  const auto& gates = circuit.gates();
  for (std::size_t i = 0; i < gates.size(); ++i) {
    Gate fused;
    if (hopper_block_at(gates, i, fused)) {
      apply(state, fused);
      i += 2;
    } else {
      apply(state, gates[i]);
    }
  }
}

StateVector simulate(const Circuit& circuit, int num_qubits) {
  StateVector s(num_qubits);
  run(circuit, s);
  return s;
}

std::string to_text(const Circuit& circuit) {
  std::ostringstream out;
  char buf[40];
  for (const auto& g : circuit.gates()) {
    out << gate_name(g.kind) << ' ' << g.qubit0 + 1;
    if (g.two_qubit()) out << ',' << g.qubit1 + 1;
    if (has_angle(g.kind)) {
      std::snprintf(buf, sizeof buf, "%.17g", g.angle);
      out << ',' << buf;
    }
    out << '\n';
  }
  return out.str();
}

namespace {

GateKind parse_kind(std::string_view name) {
  for (GateKind k : {GateKind::Ry, GateKind::Rz, GateKind::X, GateKind::H, GateKind::CNOT,
                     GateKind::CRy, GateKind::CRz, GateKind::PairHopper})
    if (gate_name(k) == name) return k;
  throw std::invalid_argument("unknown gate '" + std::string(name) + "'");
}

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

}  // namespace

Circuit parse_text(std::string_view text, int num_qubits) {
  std::vector<Gate> gates;
  int widest = 0;
  std::size_t line_no = 0;
  while (!text.empty()) {
    const auto nl = text.find('\n');
    std::string_view line = trim(text.substr(0, nl));
    text = nl == std::string_view::npos ? std::string_view{} : text.substr(nl + 1);
    ++line_no;
    if (line.empty() || line.front() == '#') continue;

    const auto fail = [&](const std::string& why) {
      return std::invalid_argument("circuit line " + std::to_string(line_no) + ": " + why);
    };
    const auto space = line.find(' ');
    if (space == std::string_view::npos) throw fail("missing operands");
    Gate g;
    g.kind = parse_kind(line.substr(0, space));
    std::vector<std::string_view> fields;
    std::string_view rest = trim(line.substr(space + 1));
    while (true) {
      const auto comma = rest.find(',');
      fields.push_back(trim(rest.substr(0, comma)));
      if (comma == std::string_view::npos) break;
      rest = rest.substr(comma + 1);
    }
    const std::size_t expected = (g.two_qubit() ? 2 : 1) + (has_angle(g.kind) ? 1 : 0);
    if (fields.size() != expected) throw fail("expected " + std::to_string(expected) + " operands");
    auto parse_int = [&](std::string_view f) {
      int v = 0;
      const auto r = std::from_chars(f.data(), f.data() + f.size(), v);
      if (r.ec != std::errc() || r.ptr != f.data() + f.size() || v < 1) throw fail("bad qubit index");
      return v - 1;
    };
    g.qubit0 = parse_int(fields[0]);
    if (g.two_qubit()) g.qubit1 = parse_int(fields[1]);
    if (has_angle(g.kind)) {
      const std::string f(fields.back());
      std::size_t used = 0;
      try {
        g.angle = std::stod(f, &used);
      } catch (const std::exception&) {
        throw fail("bad angle");
      }
      if (used != f.size()) throw fail("bad angle");
    }
    widest = std::max({widest, g.qubit0 + 1, g.qubit1 + 1});
    gates.push_back(g);
  }
  Circuit c(num_qubits < 0 ? widest : num_qubits);
  for (const auto& g : gates) c.add(g);
  return c;
}

}  // namespace agpq

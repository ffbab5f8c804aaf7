#pragma once

#include <map>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "agpq/agp_classical.hpp"
#include "agpq/simulator.hpp"

namespace agpq {

/// Pair-hopper amplitudes tau_pq, p > q, stored in the ansatz ordering
/// (q = 0 with p = 1..M-1 first, then q = 1, ...), i.e. the first stored
/// block is applied first.
struct AnsatzParams {
  std::vector<double> tau;

  static AnsatzParams zeros(int M);
};

/// (p, q) level pairs in application order; entry k labels AnsatzParams::tau[k].
std::vector<std::pair<int, int>> ansatz_pair_order(int M);
std::size_t ansatz_parameter_count(int M);

struct ResourceCount {
  int two_qubit_count = 0;
  int depth = 0;
  int cnot_count = 0;  // CNOT = 1, CRy = CRz = 2, PairHopper = 4
};

/// Ordered gate list.
class Circuit {
 public:
  explicit Circuit(int num_qubits = 0) : num_qubits_(num_qubits) {}

  int num_qubits() const { return num_qubits_; }
  const std::vector<Gate>& gates() const { return gates_; }
  std::size_t size() const { return gates_.size(); }

  Circuit& add(const Gate& gate);
  /// Appends `other`, widening the register if needed.
  Circuit& append(const Circuit& other);

  /// Ansatz parameter (p, q) -> index of the gate carrying tau_pq.
  const std::map<std::pair<int, int>, std::size_t>& parameter_slots() const { return slots_; }
  void bind_slot(int p, int q, std::size_t gate_index) { slots_[{p, q}] = gate_index; }

  int two_qubit_count() const;
  /// Greedy as-soon-as-possible layering with all-to-all connectivity; gate
  /// order on every qubit is preserved.
  int depth() const;

  /// True when every gate (or CNOT-CRy-CNOT pair-hopper block) conserves the
  /// number of occupied qubits.
  bool number_conserving() const;

 private:
  int num_qubits_;
  std::vector<Gate> gates_;
  std::map<std::pair<int, int>, std::size_t> slots_;
};

ResourceCount count_resources(const Circuit& circuit);

/// Ry(2 atan(eta_p)) on every level qubit (lambda_p = 0, so no Rz).
Circuit build_bcs_prep(const GeminalState& g);

/// H on the ancilla (qubit M), then CRz(phi) from the ancilla onto every level.
Circuit build_projection_block(double phi, int M);

/// CNOT(p -> q), CRy(2 tau_pq) controlled by q on p, CNOT(p -> q) per pair,
/// blocks in ansatz_pair_order.
Circuit build_pair_hopper_ansatz(const AnsatzParams& params, int M);

/// Prep + projection block at phase phi + ansatz on M + 1 qubits.
Circuit build_full_pipeline(const GeminalState& g, double phi, const AnsatzParams& params);

/// Simulates `circuit` on `state`. CNOT-CRy-CNOT pair-hopper blocks are
/// applied as one fused two-qubit rotation.
void run(const Circuit& circuit, StateVector& state);
StateVector simulate(const Circuit& circuit, int num_qubits);

/// Line-per-gate text: `NAME q[,q2][,angle]` with 1-based qubit indices and
/// 17 significant digits on angles.
std::string to_text(const Circuit& circuit);
/// Parses to_text output; `num_qubits` < 0 infers the register from the
/// highest index. Blank lines and lines starting with '#' are skipped.
Circuit parse_text(std::string_view text, int num_qubits = -1);

}  // namespace agpq

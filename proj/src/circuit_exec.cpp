#include "ftnc/circuit_exec.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace ftnc {

bool ErrorAssignment::empty() const {
  for (const auto& [label, e] : gate_errors) {
    if (e.z_on_control || e.x_on_target) return false;
  }
  for (bool z : ancilla_z) {
    if (z) return false;
  }
  return true;
}

ExecResult execute_circuit(const std::vector<ExecElement>& elements, const ErrorAssignment& errors,
                           RandomStream& rng, std::size_t cap) {
  ExecResult res;
  res.state = StateVector(cap);
  int ancilla_counter = 0;

  auto handle = [&](const CircuitElement& e) {
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      res.state.apply(*g);
    } else if (const auto* s = std::get_if<NoisyGateSite>(&e)) {
      res.state.apply(s->gate);
      auto it = errors.gate_errors.find(s->site_label);
      if (it != errors.gate_errors.end()) {
        if (it->second.z_on_control) res.state.apply_z(s->gate.q1);
        if (it->second.x_on_target) res.state.apply_x(s->gate.q2);
      }
    } else if (const auto* m = std::get_if<Measure>(&e)) {
      const int outcome = res.state.measure(m->qubit, m->basis, rng);
      res.records[m->record_label] = outcome;
      if (m->discard) {
        // an X measurement leaves |+/-> behind; rotate to the computational
        // basis so the purity check in remove_measured applies
        if (m->basis == MeasureBasis::X) res.state.apply_h(m->qubit);
        res.state.remove_measured(m->qubit);
      }
    } else if (const auto* c = std::get_if<ConditionalClifford>(&e)) {
      int parity = 0;
      for (const auto& lbl : c->parity_of) {
        auto it = res.records.find(lbl);
        if (it == res.records.end())
          throw std::invalid_argument(fmt::format("missing record '{}'", lbl));
        parity ^= (it->second == -1) ? 1 : 0;
      }
      if (parity) {
        switch (c->kind) {
          case GateKind::X: res.state.apply_x(c->qubit); break;
          case GateKind::Z: res.state.apply_z(c->qubit); break;
          case GateKind::S: res.state.apply_s(c->qubit); break;
          case GateKind::Sdg: res.state.apply_s(c->qubit, true); break;
          default: throw std::invalid_argument("unsupported conditional correction");
        }
      }
    } else if (const auto* p = std::get_if<PrepareBasis>(&e)) {
      res.state.add_qubit(p->qubit, p->state);
      if (p->state == PrepState::T || p->state == PrepState::Tdg) {
        if (ancilla_counter < 15 && errors.ancilla_z[ancilla_counter]) {
          res.state.apply_z(p->qubit);
        }
        ++ancilla_counter;
      }
    }
    res.peak_live = std::max(res.peak_live, res.state.live_count());
  };

  for (const auto& el : elements) {
    if (const auto* r = std::get_if<Relabel>(&el)) {
      res.state.relabel(r->from, r->to);
    } else {
      handle(std::get<CircuitElement>(el));
    }
  }
  return res;
}

ExecResult execute_circuit(const CliffordCircuit& circuit, const ErrorAssignment& errors,
                           RandomStream& rng, std::size_t cap) {
  std::vector<ExecElement> elems(circuit.elements.begin(), circuit.elements.end());
  return execute_circuit(elems, errors, rng, cap);
}

}  // namespace ftnc

#pragma once

#include <array>
#include <map>
#include <string>

#include "ftnc/pauli.hpp"
#include "ftnc/statevec.hpp"

namespace ftnc {

/// Sampled Pauli errors for one shot. Two-qubit gate sites get an
/// independent Z on the control and X on the target (applied after the
/// gate); magic ancillae get a Z right after preparation.
struct ErrorAssignment {
  struct GateError {
    bool z_on_control = false;
    bool x_on_target = false;
    bool operator==(const GateError&) const = default;
  };
  std::map<std::string, GateError> gate_errors;
  std::array<bool, 15> ancilla_z{};

  bool empty() const;
};

/// Relabeling pseudo-element used by recycling circuits (the freshly
/// teleported ancilla takes over the consumed qubit's label).
struct Relabel {
  int from;
  int to;
};

using ExecElement = std::variant<CircuitElement, Relabel>;

struct ExecResult {
  StateVector state{20};
  std::map<std::string, int> records;  // +1 / -1 outcomes
  std::size_t peak_live = 0;
};

/// Reference statevector execution of a circuit with explicit error
/// insertions. Measurements draw from `rng`; `discard` measurements remove
/// the qubit afterwards.
ExecResult execute_circuit(const std::vector<ExecElement>& elements, const ErrorAssignment& errors,
                           RandomStream& rng, std::size_t cap = 20);

ExecResult execute_circuit(const CliffordCircuit& circuit, const ErrorAssignment& errors,
                           RandomStream& rng, std::size_t cap = 20);

}  // namespace ftnc

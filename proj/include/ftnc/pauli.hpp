#pragma once

#include <cstdint>
#include <string>
#include <variant>
#include <vector>

namespace ftnc {

struct CliffordGate;

/// n-qubit Pauli operator in binary-symplectic form with a fourth-root-of-unity
/// phase. Convention fixed project-wide: the stored operator is
///   i^phase_exponent * X^x * Z^z   (all X factors left of all Z factors),
/// so Y = i X Z has phase_exponent 1. Qubit labels are 1-based; bit index q-1
/// holds qubit q.
class PauliOperator {
 public:
  explicit PauliOperator(std::size_t n);

  static PauliOperator identity(std::size_t n);
  /// X on the given 1-based qubit positions.
  static PauliOperator x_on(std::size_t n, const std::vector<int>& qubits);
  /// Z on the given 1-based qubit positions.
  static PauliOperator z_on(std::size_t n, const std::vector<int>& qubits);
  /// From x/z bit vectors (index 0 = qubit 1).
  static PauliOperator from_bits(std::vector<uint8_t> x, std::vector<uint8_t> z,
                                 int phase_exponent = 0);

  std::size_t num_qubits() const { return x_.size(); }
  bool x_bit(int qubit) const { return x_[qubit - 1] != 0; }
  bool z_bit(int qubit) const { return z_[qubit - 1] != 0; }
  void set_x(int qubit, bool v) { x_[qubit - 1] = v ? 1 : 0; }
  void set_z(int qubit, bool v) { z_[qubit - 1] = v ? 1 : 0; }
  const std::vector<uint8_t>& x_bits() const { return x_; }
  const std::vector<uint8_t>& z_bits() const { return z_; }

  /// Phase as an exponent of i, in {0,1,2,3}.
  int phase_exponent() const { return phase_e_; }
  void mul_phase(int exponent) { phase_e_ = static_cast<uint8_t>((phase_e_ + exponent) & 3); }

  /// Number of qubits acted on non-trivially.
  int weight() const;
  bool is_identity() const;

  /// 1-based qubits where the X part is set.
  std::vector<int> x_support() const;
  std::vector<int> z_support() const;

  /// Group product this * other, phase tracked exactly.
  PauliOperator operator*(const PauliOperator& other) const;
  bool operator==(const PauliOperator& other) const = default;

  bool commutes_with(const PauliOperator& other) const;

  /// e.g. "+XIZY", "-iZZ".
  std::string to_string() const;

 private:
  friend void conjugate_by_gate(PauliOperator& p, const CliffordGate& g);
  std::vector<uint8_t> x_, z_;
  uint8_t phase_e_ = 0;
};

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b);
bool commutes(const PauliOperator& a, const PauliOperator& b);

enum class GateKind { H, S, Sdg, X, Y, Z, CNOT, CZ };

/// Single Clifford gate; 1-based qubit indices, q2 unused for 1-qubit gates.
struct CliffordGate {
  GateKind kind;
  int q1 = 0;
  int q2 = 0;
  bool operator==(const CliffordGate&) const = default;
};

CliffordGate make_gate(GateKind kind, int q1, int q2 = 0);
std::string gate_name(GateKind kind);

/// Conjugate p -> G p G^dagger in place, phase tracked.
void conjugate_by_gate(PauliOperator& p, const CliffordGate& g);

enum class MeasureBasis { X, Z };
enum class PrepState { Zero, Plus, T, Tdg };

/// Two-qubit gate with an attached error-location label for noise sampling.
struct NoisyGateSite {
  CliffordGate gate;
  std::string site_label;
};

/// Measurement producing a named classical record. `discard` removes the
/// qubit after collapse (qubit recycling).
struct Measure {
  int qubit;
  MeasureBasis basis;
  std::string record_label;
  bool discard = false;
};

/// Clifford correction applied when the XOR of the referenced records
/// (outcome -1 counted as bit 1) equals 1.
struct ConditionalClifford {
  int qubit;
  GateKind kind;  // one of X, Z, S, Sdg
  std::vector<std::string> parity_of;
};

struct PrepareBasis {
  int qubit;
  PrepState state;
};

using CircuitElement =
    std::variant<CliffordGate, NoisyGateSite, Measure, ConditionalClifford, PrepareBasis>;

/// Ordered gate/measurement/error-location list over 1-based qubits 1..n.
struct CliffordCircuit {
  std::size_t n = 0;
  std::vector<CircuitElement> elements;

  void add(CircuitElement e) { elements.push_back(std::move(e)); }
  void gate(GateKind kind, int q1, int q2 = 0) { elements.push_back(make_gate(kind, q1, q2)); }
  /// Checks label references and qubit ranges; throws on violation.
  void validate() const;
};

/// Push `pauli` from just before elements[insertion_index] through all later
/// gates to the end of the circuit. Later elements must all be Clifford gates
/// (plain or noisy-site); anything else throws.
PauliOperator conjugate_through(const CliffordCircuit& circuit, const PauliOperator& pauli,
                                std::size_t insertion_index);

}  // namespace ftnc

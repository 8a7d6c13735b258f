#include "ftnc/pauli.hpp"

#include <fmt/format.h>

#include <stdexcept>

namespace ftnc {

PauliOperator::PauliOperator(std::size_t n) : x_(n, 0), z_(n, 0) {}

PauliOperator PauliOperator::identity(std::size_t n) { return PauliOperator(n); }

PauliOperator PauliOperator::x_on(std::size_t n, const std::vector<int>& qubits) {
  PauliOperator p(n);
  for (int q : qubits) {
    if (q < 1 || static_cast<std::size_t>(q) > n) throw std::invalid_argument("qubit out of range");
    p.x_[q - 1] ^= 1;
  }
  return p;
}

PauliOperator PauliOperator::z_on(std::size_t n, const std::vector<int>& qubits) {
  PauliOperator p(n);
  for (int q : qubits) {
    if (q < 1 || static_cast<std::size_t>(q) > n) throw std::invalid_argument("qubit out of range");
    p.z_[q - 1] ^= 1;
  }
  return p;
}

PauliOperator PauliOperator::from_bits(std::vector<uint8_t> x, std::vector<uint8_t> z,
                                       int phase_exponent) {
  if (x.size() != z.size()) throw std::invalid_argument("x/z bit vector length mismatch");
  PauliOperator p(x.size());
  p.x_ = std::move(x);
  p.z_ = std::move(z);
  p.phase_e_ = static_cast<uint8_t>(((phase_exponent % 4) + 4) % 4);
  return p;
}

int PauliOperator::weight() const {
  int w = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    w += (x_[i] | z_[i]) ? 1 : 0;
  }
  return w;
}

bool PauliOperator::is_identity() const { return weight() == 0; }

std::vector<int> PauliOperator::x_support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    if (x_[i]) s.push_back(static_cast<int>(i) + 1);
  }
  return s;
}

std::vector<int> PauliOperator::z_support() const {
  std::vector<int> s;
  for (std::size_t i = 0; i < z_.size(); ++i) {
    if (z_[i]) s.push_back(static_cast<int>(i) + 1);
  }
  return s;
}

PauliOperator PauliOperator::operator*(const PauliOperator& other) const {
  if (num_qubits() != other.num_qubits()) throw std::invalid_argument("Pauli length mismatch");
  PauliOperator r(num_qubits());
  // (X^xa Z^za)(X^xb Z^zb) = (-1)^(za.xb) X^(xa^xb) Z^(za^zb)
  int cross = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    cross ^= (z_[i] & other.x_[i]);
    r.x_[i] = x_[i] ^ other.x_[i];
    r.z_[i] = z_[i] ^ other.z_[i];
  }
  r.phase_e_ = static_cast<uint8_t>((phase_e_ + other.phase_e_ + 2 * cross) & 3);
  return r;
}

bool PauliOperator::commutes_with(const PauliOperator& other) const {
  if (num_qubits() != other.num_qubits()) throw std::invalid_argument("Pauli length mismatch");
  int sym = 0;
  for (std::size_t i = 0; i < x_.size(); ++i) {
    sym ^= (x_[i] & other.z_[i]) ^ (z_[i] & other.x_[i]);
  }
  return sym == 0;
}

std::string PauliOperator::to_string() const {
  static const char* phases[] = {"+", "+i", "-", "-i"};
  std::string s = phases[phase_e_];
  for (std::size_t i = 0; i < x_.size(); ++i) {
    int code = x_[i] * 2 + z_[i];
    s += "IZXY"[code];
  }
  return s;
}

PauliOperator multiply(const PauliOperator& a, const PauliOperator& b) { return a * b; }

bool commutes(const PauliOperator& a, const PauliOperator& b) { return a.commutes_with(b); }

CliffordGate make_gate(GateKind kind, int q1, int q2) {
  bool two_qubit = (kind == GateKind::CNOT || kind == GateKind::CZ);
  if (two_qubit && q1 == q2) throw std::invalid_argument("two-qubit gate needs distinct qubits");
  if (!two_qubit && q2 != 0) throw std::invalid_argument("single-qubit gate given two qubits");
  return CliffordGate{kind, q1, q2};
}

std::string gate_name(GateKind kind) {
  switch (kind) {
    case GateKind::H: return "H";
    case GateKind::S: return "S";
    case GateKind::Sdg: return "Sdg";
    case GateKind::X: return "X";
    case GateKind::Y: return "Y";
    case GateKind::Z: return "Z";
    case GateKind::CNOT: return "CNOT";
    case GateKind::CZ: return "CZ";
  }
  return "?";
}

void conjugate_by_gate(PauliOperator& p, const CliffordGate& g) {
  const int a = g.q1 - 1;
  const int b = g.q2 - 1;
  auto& x = p.x_;
  auto& z = p.z_;
  switch (g.kind) {
    case GateKind::H:
      p.mul_phase(2 * (x[a] & z[a]));
      std::swap(x[a], z[a]);
      break;
    case GateKind::S:
      p.mul_phase(x[a]);
      z[a] ^= x[a];
      break;
    case GateKind::Sdg:
      p.mul_phase(3 * x[a]);
      z[a] ^= x[a];
      break;
    case GateKind::X:
      p.mul_phase(2 * z[a]);
      break;
    case GateKind::Y:
      p.mul_phase(2 * (x[a] ^ z[a]));
      break;
    case GateKind::Z:
      p.mul_phase(2 * x[a]);
      break;
    case GateKind::CNOT:
      // X-part and Z-part images stay pure X / pure Z, no phase.
      x[b] ^= x[a];
      z[a] ^= z[b];
      break;
    case GateKind::CZ:
      p.mul_phase(2 * (x[a] & x[b]));
      z[a] ^= x[b];
      z[b] ^= x[a];
      break;
  }
}

void CliffordCircuit::validate() const {
  std::vector<std::string> records;
  auto check_q = [&](int q) {
    if (q < 1 || static_cast<std::size_t>(q) > n)
      throw std::invalid_argument(fmt::format("qubit {} out of range 1..{}", q, n));
  };
  for (const auto& e : elements) {
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      check_q(g->q1);
      if (g->kind == GateKind::CNOT || g->kind == GateKind::CZ) check_q(g->q2);
    } else if (const auto* s = std::get_if<NoisyGateSite>(&e)) {
      check_q(s->gate.q1);
      check_q(s->gate.q2);
    } else if (const auto* m = std::get_if<Measure>(&e)) {
      check_q(m->qubit);
      records.push_back(m->record_label);
    } else if (const auto* c = std::get_if<ConditionalClifford>(&e)) {
      check_q(c->qubit);
      for (const auto& lbl : c->parity_of) {
        bool found = false;
        for (const auto& r : records) found |= (r == lbl);
        if (!found)
          throw std::invalid_argument(fmt::format("conditional references unknown record '{}'", lbl));
      }
    } else if (const auto* pr = std::get_if<PrepareBasis>(&e)) {
      check_q(pr->qubit);
    }
  }
}

PauliOperator conjugate_through(const CliffordCircuit& circuit, const PauliOperator& pauli,
                                std::size_t insertion_index) {
  if (insertion_index > circuit.elements.size())
    throw std::invalid_argument("insertion index outside circuit");
  if (pauli.num_qubits() != circuit.n) throw std::invalid_argument("Pauli/circuit size mismatch");
  PauliOperator p = pauli;
  for (std::size_t i = insertion_index; i < circuit.elements.size(); ++i) {
    const auto& e = circuit.elements[i];
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      conjugate_by_gate(p, *g);
    } else if (const auto* s = std::get_if<NoisyGateSite>(&e)) {
      conjugate_by_gate(p, s->gate);
    } else {
      throw std::invalid_argument("non-Clifford element after insertion point");
    }
  }
  return p;
}

}  // namespace ftnc

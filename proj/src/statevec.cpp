#include "ftnc/statevec.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <numbers>
#include <stdexcept>

namespace ftnc {

namespace {
constexpr double kInvSqrt2 = 0.70710678118654752440;
}

std::array<cd, 2> single_qubit_state(PrepState s) {
  switch (s) {
    case PrepState::Zero: return {cd{1, 0}, cd{0, 0}};
    case PrepState::Plus: return {cd{kInvSqrt2, 0}, cd{kInvSqrt2, 0}};
    case PrepState::T:
      return {cd{kInvSqrt2, 0}, std::polar(kInvSqrt2, std::numbers::pi / 4)};
    case PrepState::Tdg:
      return {cd{kInvSqrt2, 0}, std::polar(kInvSqrt2, -std::numbers::pi / 4)};
  }
  throw std::invalid_argument("unknown preparation state");
}

StateVector::StateVector(std::size_t cap) : amps_{cd{1, 0}}, cap_(cap) {}

StateVector StateVector::from_amplitudes(std::vector<int> labels, std::vector<cd> amps,
                                         std::size_t cap) {
  if (amps.size() != (std::size_t{1} << labels.size()))
    throw std::invalid_argument("amplitude count != 2^labels");
  if (labels.size() > cap) throw std::invalid_argument("qubit cap exceeded");
  double n2 = 0;
  for (const auto& a : amps) n2 += std::norm(a);
  if (n2 < 1e-24) throw std::invalid_argument("zero state vector");
  const double inv = 1.0 / std::sqrt(n2);
  for (auto& a : amps) a *= inv;
  StateVector sv(cap);
  sv.labels_ = std::move(labels);
  sv.amps_ = std::move(amps);
  return sv;
}

bool StateVector::has(int label) const {
  return std::find(labels_.begin(), labels_.end(), label) != labels_.end();
}

std::size_t StateVector::pos_of(int label) const {
  auto it = std::find(labels_.begin(), labels_.end(), label);
  if (it == labels_.end()) throw std::invalid_argument(fmt::format("unknown qubit label {}", label));
  return static_cast<std::size_t>(it - labels_.begin());
}

std::size_t StateVector::bit_of(int label) const { return labels_.size() - 1 - pos_of(label); }

double StateVector::norm() const {
  double n2 = 0;
  for (const auto& a : amps_) n2 += std::norm(a);
  return std::sqrt(n2);
}

void StateVector::add_qubit(int label, PrepState init) { add_qubit(label, single_qubit_state(init)); }

void StateVector::add_qubit(int label, const std::array<cd, 2>& amp) {
  if (has(label)) throw std::invalid_argument(fmt::format("label {} already live", label));
  if (labels_.size() >= cap_) throw std::invalid_argument("qubit cap exceeded");
  std::vector<cd> next(amps_.size() * 2);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    next[2 * i] = amps_[i] * amp[0];
    next[2 * i + 1] = amps_[i] * amp[1];
  }
  amps_ = std::move(next);
  labels_.push_back(label);
}

void StateVector::remove_measured(int label, double purity_tol) {
  const std::size_t b = bit_of(label);
  const std::size_t stride = std::size_t{1} << b;
  double n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    ((i & stride) ? n1 : n0) += std::norm(amps_[i]);
  }
  const bool keep_one = n1 > n0;
  if (std::min(n0, n1) > purity_tol)
    throw std::invalid_argument("qubit still entangled; measure before removing");
  std::vector<cd> next(amps_.size() / 2);
  std::size_t w = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i >> b) & 1) == static_cast<std::size_t>(keep_one)) next[w++] = amps_[i];
  }
  const double inv = 1.0 / std::sqrt(keep_one ? n1 : n0);
  for (auto& a : next) a *= inv;
  amps_ = std::move(next);
  labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(pos_of(label)));
}

void StateVector::relabel(int old_label, int new_label) {
  if (has(new_label)) throw std::invalid_argument("new label already live");
  labels_[pos_of(old_label)] = new_label;
}

void StateVector::apply_1q(const std::array<cd, 4>& u, int label) {
  const std::size_t stride = std::size_t{1} << bit_of(label);
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cd a0 = amps_[i], a1 = amps_[i + stride];
      amps_[i] = u[0] * a0 + u[1] * a1;
      amps_[i + stride] = u[2] * a0 + u[3] * a1;
    }
  }
}

void StateVector::apply_h(int label) {
  apply_1q({cd{kInvSqrt2, 0}, cd{kInvSqrt2, 0}, cd{kInvSqrt2, 0}, cd{-kInvSqrt2, 0}}, label);
}

void StateVector::apply_s(int label, bool dagger) {
  const cd ph = dagger ? cd{0, -1} : cd{0, 1};
  const std::size_t stride = std::size_t{1} << bit_of(label);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & stride) amps_[i] *= ph;
  }
}

void StateVector::apply_t(int label, bool dagger) {
  const cd ph = std::polar(1.0, (dagger ? -1.0 : 1.0) * std::numbers::pi / 4);
  const std::size_t stride = std::size_t{1} << bit_of(label);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & stride) amps_[i] *= ph;
  }
}

void StateVector::apply_x(int label) {
  const std::size_t stride = std::size_t{1} << bit_of(label);
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) std::swap(amps_[i], amps_[i + stride]);
  }
}

void StateVector::apply_y(int label) {
  const std::size_t stride = std::size_t{1} << bit_of(label);
  for (std::size_t base = 0; base < amps_.size(); base += 2 * stride) {
    for (std::size_t i = base; i < base + stride; ++i) {
      const cd a0 = amps_[i];
      amps_[i] = cd{0, -1} * amps_[i + stride];
      amps_[i + stride] = cd{0, 1} * a0;
    }
  }
}

void StateVector::apply_z(int label) {
  const std::size_t stride = std::size_t{1} << bit_of(label);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & stride) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_cnot(int control, int target) {
  if (control == target) throw std::invalid_argument("duplicate labels");
  const std::size_t sc = std::size_t{1} << bit_of(control);
  const std::size_t st = std::size_t{1} << bit_of(target);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & sc) && !(i & st)) std::swap(amps_[i], amps_[i | st]);
  }
}

void StateVector::apply_cz(int a, int b) {
  if (a == b) throw std::invalid_argument("duplicate labels");
  const std::size_t sa = std::size_t{1} << bit_of(a);
  const std::size_t sb = std::size_t{1} << bit_of(b);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & sa) && (i & sb)) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_ccz(int a, int b, int c) { apply_cmz({a, b, c}); }

void StateVector::apply_cmz(const std::vector<int>& qubit_labels) {
  std::size_t mask = 0;
  for (int l : qubit_labels) {
    const std::size_t s = std::size_t{1} << bit_of(l);
    if (mask & s) throw std::invalid_argument("duplicate labels");
    mask |= s;
  }
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if ((i & mask) == mask) amps_[i] = -amps_[i];
  }
}

void StateVector::apply_pauli(const PauliOperator& p, const std::vector<int>& qubit_labels) {
  if (p.num_qubits() != qubit_labels.size())
    throw std::invalid_argument("Pauli/label count mismatch");
  for (std::size_t i = 0; i < qubit_labels.size(); ++i) {
    const int q = static_cast<int>(i) + 1;
    if (p.x_bit(q)) apply_x(qubit_labels[i]);
    if (p.z_bit(q)) apply_z(qubit_labels[i]);
  }
}

void StateVector::apply(const CliffordGate& g) {
  switch (g.kind) {
    case GateKind::H: apply_h(g.q1); break;
    case GateKind::S: apply_s(g.q1); break;
    case GateKind::Sdg: apply_s(g.q1, true); break;
    case GateKind::X: apply_x(g.q1); break;
    case GateKind::Y: apply_y(g.q1); break;
    case GateKind::Z: apply_z(g.q1); break;
    case GateKind::CNOT: apply_cnot(g.q1, g.q2); break;
    case GateKind::CZ: apply_cz(g.q1, g.q2); break;
  }
}

int StateVector::measure(int label, MeasureBasis basis, RandomStream& rng) {
  return measure(label, basis, rng.next_uniform());
}

int StateVector::measure(int label, MeasureBasis basis, double u) {
  if (basis == MeasureBasis::X) apply_h(label);
  const std::size_t stride = std::size_t{1} << bit_of(label);
  double p1 = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & stride) p1 += std::norm(amps_[i]);
  }
  const bool minus = u < p1;  // outcome -1 corresponds to the |1> branch
  const double keep = minus ? p1 : 1.0 - p1;
  const double inv = 1.0 / std::sqrt(keep);
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (((i & stride) != 0) == minus) {
      amps_[i] *= inv;
    } else {
      amps_[i] = cd{0, 0};
    }
  }
  if (basis == MeasureBasis::X) apply_h(label);
  return minus ? -1 : +1;
}

int StateVector::replace_via_cnot_zmeasure(int label, cd alpha, cd beta, bool outcome_flip,
                                           double u) {
  const std::size_t stride = std::size_t{1} << bit_of(label);
  double n0 = 0, n1 = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    ((i & stride) ? n1 : n0) += std::norm(amps_[i]);
  }
  const double pa = std::norm(alpha), pb = std::norm(beta);
  // branch(e): new pair = (alpha*Psi_e, beta*Psi_{1-e}); outcome +1 maps to
  // e = outcome_flip, outcome -1 to e = !outcome_flip.
  auto branch_prob = [&](int e) { return e == 0 ? pa * n0 + pb * n1 : pa * n1 + pb * n0; };
  const double p_minus = branch_prob(outcome_flip ? 0 : 1);
  const bool minus = u < p_minus;
  const int e = (minus != outcome_flip) ? 1 : 0;
  const double inv = 1.0 / std::sqrt(branch_prob(e));
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & stride) continue;
    const cd a0 = amps_[i], a1 = amps_[i | stride];
    const cd src0 = (e == 0) ? a0 : a1;
    const cd src1 = (e == 0) ? a1 : a0;
    amps_[i] = alpha * src0 * inv;
    amps_[i | stride] = beta * src1 * inv;
  }
  return minus ? -1 : +1;
}

int StateVector::measure_x_and_remove(int label, double u) {
  const std::size_t b = bit_of(label);
  const std::size_t stride = std::size_t{1} << b;
  double p_plus = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (!(i & stride)) p_plus += 0.5 * std::norm(amps_[i] + amps_[i | stride]);
  }
  const bool minus = u < 1.0 - p_plus;
  const double sign = minus ? -1.0 : 1.0;
  const double inv = 1.0 / std::sqrt(2.0 * (minus ? 1.0 - p_plus : p_plus));
  std::vector<cd> next(amps_.size() / 2);
  std::size_t w = 0;
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    if (i & stride) continue;
    next[w++] = (amps_[i] + sign * amps_[i | stride]) * inv;
  }
  amps_ = std::move(next);
  labels_.erase(labels_.begin() + static_cast<std::ptrdiff_t>(pos_of(label)));
  return minus ? -1 : +1;
}

double StateVector::fidelity(const std::array<cd, 2>& target) const {
  if (labels_.size() != 1) throw std::invalid_argument("fidelity needs exactly one live qubit");
  const cd ip = std::conj(target[0]) * amps_[0] + std::conj(target[1]) * amps_[1];
  return std::norm(ip);
}

std::vector<cd> StateVector::amplitudes_in_label_order(const std::vector<int>& order) const {
  if (order.size() != labels_.size()) throw std::invalid_argument("label count mismatch");
  std::vector<std::size_t> src_bit(order.size());
  for (std::size_t j = 0; j < order.size(); ++j) src_bit[j] = bit_of(order[j]);
  std::vector<cd> out(amps_.size());
  const std::size_t k = order.size();
  for (std::size_t i = 0; i < amps_.size(); ++i) {
    std::size_t dst = 0;
    for (std::size_t j = 0; j < k; ++j) {
      if ((i >> src_bit[j]) & 1) dst |= std::size_t{1} << (k - 1 - j);
    }
    out[dst] = amps_[i];
  }
  return out;
}

std::string StateVector::dump() const {
  std::string s = "labels:";
  for (int l : labels_) s += fmt::format(" {}", l);
  s += '\n';
  for (const auto& a : amps_) s += fmt::format("{:+.12e} {:+.12e}\n", a.real(), a.imag());
  return s;
}

}  // namespace ftnc

#pragma once

#include <array>
#include <complex>
#include <string>
#include <vector>

#include "ftnc/pauli.hpp"
#include "ftnc/rng.hpp"

namespace ftnc {

using cd = std::complex<double>;

std::array<cd, 2> single_qubit_state(PrepState s);

/// Dense statevector over externally labeled qubits. Amplitude layout:
/// the label list is addition order and the most recently added label is
/// the fastest-varying index bit.
class StateVector {
 public:
  explicit StateVector(std::size_t cap = 20);

  /// Builds a state with the given labels (slowest-varying first) and
  /// amplitudes; normalizes, throws on zero vector or size mismatch.
  static StateVector from_amplitudes(std::vector<int> labels, std::vector<cd> amps,
                                     std::size_t cap = 20);

  std::size_t live_count() const { return labels_.size(); }
  const std::vector<int>& labels() const { return labels_; }
  bool has(int label) const;
  const std::vector<cd>& amplitudes() const { return amps_; }
  double norm() const;

  void add_qubit(int label, PrepState init);
  void add_qubit(int label, const std::array<cd, 2>& amp);
  void remove_measured(int label, double purity_tol = 1e-10);
  void relabel(int old_label, int new_label);

  void apply(const CliffordGate& g);
  void apply_h(int label);
  void apply_s(int label, bool dagger = false);
  void apply_t(int label, bool dagger = false);
  void apply_x(int label);
  void apply_y(int label);
  void apply_z(int label);
  void apply_cnot(int control, int target);
  void apply_cz(int a, int b);
  void apply_ccz(int a, int b, int c);
  /// C^(m)Z over all listed labels: -1 phase when every qubit is 1.
  void apply_cmz(const std::vector<int>& qubit_labels);
  void apply_pauli(const PauliOperator& p, const std::vector<int>& qubit_labels);
  void apply_1q(const std::array<cd, 4>& u, int label);

  /// Born-rule measurement from the given stream; returns +1/-1, state
  /// collapsed and renormalized.
  int measure(int label, MeasureBasis basis, RandomStream& rng);
  int measure(int label, MeasureBasis basis, double u);

  /// Fused teleportation step: conceptually adds an ancilla (alpha,beta),
  /// applies CNOT(ancilla -> label), optionally an X error on `label`,
  /// Z-measures `label` (using uniform draw u), removes it, and the
  /// ancilla takes over the label in place. Returns the measured outcome.
  int replace_via_cnot_zmeasure(int label, cd alpha, cd beta, bool outcome_flip, double u);

  /// Fused X-basis measurement followed by removal of the qubit.
  int measure_x_and_remove(int label, double u);

  /// |<target|state>|^2; requires exactly one live qubit.
  double fidelity(const std::array<cd, 2>& target) const;

  /// Amplitudes re-indexed with `order` as the slowest-to-fastest labels.
  std::vector<cd> amplitudes_in_label_order(const std::vector<int>& order) const;

  /// Debug dump: label order header plus one complex pair per line.
  std::string dump() const;

 private:
  std::size_t bit_of(int label) const;  // throws on unknown label
  std::size_t pos_of(int label) const;

  std::vector<int> labels_;
  std::vector<cd> amps_;
  std::size_t cap_;
};

}  // namespace ftnc

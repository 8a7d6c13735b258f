#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "ftnc/circuit_exec.hpp"
#include "ftnc/codes.hpp"
#include "ftnc/pauli.hpp"
#include "ftnc/statevec.hpp"

namespace ftnc {

// Qubit labels used by the distillation circuits. Code qubits are 1..15.
inline constexpr int kOutQubit = 16;
inline constexpr int kFlagQubit = 17;
inline constexpr int kGadgetAncilla = 18;

/// Noisy-CZ error model: each two-qubit gate puts an independent Z on the
/// control and X on the target, with probability p_key at key sites and
/// p_other elsewhere. Input magic ancillae carry a Z with probability eps_in.
struct NoiseModel {
  double p_other = 0;
  double p_key = 0;
  double eps_in = 0;
  uint64_t seed = 0;

  static double p_from_fidelity(double choi_fidelity);
  double choi_fidelity_key() const { return (1 - p_key) * (1 - p_key); }
  double choi_fidelity_other() const { return (1 - p_other) * (1 - p_other); }
  void validate() const;
};

/// How the transversal T-dagger layer is simulated: Faithful runs each
/// teleportation gadget with noisy gadget CNOTs; Fast applies the ideal
/// gate plus the sampled input-ancilla Z errors and skips gadget-gate noise.
enum class GadgetMode { Faithful, Fast };

enum class DiscardReason { None, XStabilizer, Flag };

struct ShotResult {
  bool accepted = false;
  double output_infidelity = 0;  // defined only when accepted
  DiscardReason discard_reason = DiscardReason::None;
};

struct MCSummary {
  uint64_t shots = 0;
  uint64_t accepted = 0;
  double success_rate = 0;
  double success_rate_stderr = 0;
  double output_error = 0;
  double output_error_stderr = 0;
};

struct EncoderSite {
  std::string label;
  bool is_key = false;
  int control = 0;
  int target = 0;
  // Equivalent end-of-encoder Paulis for a Z-on-control / X-on-target
  // inserted right after this gate.
  PauliOperator z_control_end{1};
  PauliOperator x_target_end{1};
};

struct DistillationCircuit {
  bool flag_enabled = false;
  std::size_t n = 0;  // qubit index space of the element lists

  CliffordCircuit encoder;                 // preparation + Clifford portion
  std::vector<ExecElement> full_elements;  // encoder + gadgets + final measurements
  std::vector<std::string> key_sites;
  std::vector<EncoderSite> encoder_sites;

  // Precomputed noiseless post-encoder state over labels
  // [out, 1..15] (flag already measured off when enabled).
  std::vector<int> checkpoint_labels;
  std::vector<cd> checkpoint;
  std::array<cd, 2> ideal_target{};  // noiseless output magic state
};

/// The four-phase [[15,1,3]] encoder on {out, 1..15}: EPR key gate,
/// pivot key CNOTs into qubit 1, qubit-1 fan-out, pivot fan-outs.
CliffordCircuit synthesize_encoder();

/// One T-teleportation gadget segment: prepare ancilla, CNOT(ancilla ->
/// code qubit), Z-measure the code qubit (recorded under `site_label`),
/// conditional Clifford correction, relabel ancilla as the code qubit.
std::vector<ExecElement> build_t_gadget(int code_qubit, PrepState ancilla_kind, int ancilla_label,
                                        const std::string& site_label);

DistillationCircuit build_distillation_circuit(bool flag);

ErrorAssignment sample_noise(const DistillationCircuit& circuit, const NoiseModel& model,
                             uint64_t shot_index);

ShotResult run_shot(const DistillationCircuit& circuit, const NoiseModel& model,
                    uint64_t shot_index, GadgetMode mode = GadgetMode::Faithful);

/// Same shot via the generic circuit executor; consumes the identical
/// random draws, so results match run_shot exactly.
ShotResult run_shot_reference(const DistillationCircuit& circuit, const NoiseModel& model,
                              uint64_t shot_index);

MCSummary monte_carlo(const DistillationCircuit& circuit, const NoiseModel& model, uint64_t shots,
                      GadgetMode mode = GadgetMode::Faithful, int workers = 1);
MCSummary monte_carlo(const NoiseModel& model, uint64_t shots, bool flag,
                      GadgetMode mode = GadgetMode::Faithful, int workers = 1);

// ---- first-order error enumeration oracle ----

enum class ErrorClass { Detected, Benign, HalfDetected, OutputError };

struct SiteClassification {
  std::string site;
  std::string mechanism;  // "Z-control", "X-target", "ancilla-Z"
  ErrorClass cls;
  double error_weight = 0;  // first-order output infidelity contribution
  double rate_weight = 0;   // first-order success-rate loss contribution
};

struct OracleResult {
  double slope_key = 0;
  double slope_other = 0;
  double slope_eps = 0;
  double rate_slope_key = 0;
  double rate_slope_other = 0;
  double rate_slope_eps = 0;
  std::vector<SiteClassification> sites;
};

/// Enumerates every single-error event, propagates it symbolically through
/// the Clifford portion and the transversal layer (T^dag X = phase X S T^dag),
/// and classifies it. Throws on an unclassifiable residue.
OracleResult first_order_oracle(const DistillationCircuit& circuit);

}  // namespace ftnc

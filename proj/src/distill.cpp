#include "ftnc/distill.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <thread>

namespace ftnc {

namespace {

constexpr std::size_t kQubitSpace = 18;  // 1..15 code, 16 out, 17 flag, 18 gadget ancilla
const std::vector<int> kPivots = {5, 7, 8, 11};
const std::vector<int> kFan1Targets = {2, 3, 12, 13, 14, 15};
const std::vector<std::pair<int, std::vector<int>>> kPivotFanouts = {
    {5, {3, 6, 9, 10, 12, 15}},
    {7, {3, 4, 9, 10, 13, 14}},
    {8, {2, 4, 6, 10, 12, 14}},
    {11, {2, 4, 6, 9, 13, 15}},
};

// Counter layout for one shot's random stream: explicit counters for error
// sampling, sequential draws (offset 2^32 inside CounterRng) for measurements.
constexpr uint64_t kEncoderSiteBase = 0;
constexpr uint64_t kGadgetSiteBase = 1000;
constexpr uint64_t kAncillaBase = 2000;

bool is_pivot(int q) { return std::find(kPivots.begin(), kPivots.end(), q) != kPivots.end(); }

}  // namespace

double NoiseModel::p_from_fidelity(double choi_fidelity) {
  if (choi_fidelity < 0 || choi_fidelity > 1) throw std::invalid_argument("fidelity outside [0,1]");
  return 1.0 - std::sqrt(choi_fidelity);
}

void NoiseModel::validate() const {
  for (double p : {p_other, p_key, eps_in}) {
    if (p < 0 || p > 1) throw std::invalid_argument("probability outside [0,1]");
  }
}

CliffordCircuit synthesize_encoder() {
  CliffordCircuit c;
  c.n = 16;
  c.add(PrepareBasis{kOutQubit, PrepState::Plus});
  for (int q = 1; q <= 15; ++q) {
    c.add(PrepareBasis{q, is_pivot(q) ? PrepState::Plus : PrepState::Zero});
  }
  c.add(NoisyGateSite{make_gate(GateKind::CNOT, kOutQubit, 1), "epr"});
  for (int p : kPivots) {
    c.add(NoisyGateSite{make_gate(GateKind::CNOT, p, 1), fmt::format("piv_{}", p)});
  }
  for (int t : kFan1Targets) {
    c.add(NoisyGateSite{make_gate(GateKind::CNOT, 1, t), fmt::format("fan1_{}", t)});
  }
  for (const auto& [p, targets] : kPivotFanouts) {
    for (int t : targets) {
      c.add(NoisyGateSite{make_gate(GateKind::CNOT, p, t), fmt::format("fan{}_{}", p, t)});
    }
  }
  return c;
}

std::vector<ExecElement> build_t_gadget(int code_qubit, PrepState ancilla_kind, int ancilla_label,
                                        const std::string& site_label) {
  if (ancilla_kind != PrepState::T && ancilla_kind != PrepState::Tdg)
    throw std::invalid_argument("gadget ancilla must be T or Tdg");
  std::vector<ExecElement> seg;
  const std::string record = site_label + "_m";
  seg.push_back(CircuitElement{PrepareBasis{ancilla_label, ancilla_kind}});
  seg.push_back(CircuitElement{NoisyGateSite{make_gate(GateKind::CNOT, ancilla_label, code_qubit),
                                             site_label}});
  seg.push_back(CircuitElement{Measure{code_qubit, MeasureBasis::Z, record, true}});
  seg.push_back(CircuitElement{ConditionalClifford{ancilla_label, GateKind::X, {record}}});
  seg.push_back(CircuitElement{ConditionalClifford{
      ancilla_label, ancilla_kind == PrepState::Tdg ? GateKind::Sdg : GateKind::S, {record}}});
  seg.push_back(Relabel{ancilla_label, code_qubit});
  return seg;
}

namespace {

CliffordCircuit build_encoder_with_optional_flag(bool flag) {
  CliffordCircuit enc = synthesize_encoder();
  if (!flag) return enc;
  CliffordCircuit c;
  c.n = 17;
  // P0 preps, EPR gate, then the flag window around the four pivot CNOTs.
  for (const auto& e : enc.elements) {
    if (const auto* s = std::get_if<NoisyGateSite>(&e); s && s->site_label == "epr") {
      c.add(PrepareBasis{kFlagQubit, PrepState::Zero});
      c.add(e);
      c.add(NoisyGateSite{make_gate(GateKind::CNOT, 1, kFlagQubit), "flag_in"});
    } else if (const auto* s2 = std::get_if<NoisyGateSite>(&e);
               s2 && s2->site_label == "fan1_2") {
      // The pivot CNOTs rewrite qubit 1 inside the flag window, so the two
      // CNOT(1->flag) couplings alone would leave the pivots' parity on the
      // flag. Copying each pivot onto the flag restores a deterministic |0>
      // flag in the noiseless circuit while keeping the detection pattern:
      // an X on qubit 1 between the couplings still flips the flag once.
      for (int p : kPivots) {
        c.add(NoisyGateSite{make_gate(GateKind::CNOT, p, kFlagQubit), fmt::format("cmp_{}", p)});
      }
      c.add(NoisyGateSite{make_gate(GateKind::CNOT, 1, kFlagQubit), "flag_out"});
      c.add(Measure{kFlagQubit, MeasureBasis::Z, "flag", true});
      c.add(e);
    } else {
      c.add(e);
    }
  }
  return c;
}

struct PropagationResult {
  PauliOperator end{kQubitSpace};
  bool trips_flag = false;
};

// Push a Pauli inserted after element `idx` to the end of the encoder. The
// flag measurement (if present) records whether the operator's X part flips
// the flag outcome and then drops the flag's Pauli content.
PropagationResult propagate_to_end(const CliffordCircuit& enc, const PauliOperator& p,
                                   std::size_t idx) {
  PropagationResult r;
  r.end = p;
  for (std::size_t i = idx + 1; i < enc.elements.size(); ++i) {
    const auto& e = enc.elements[i];
    if (const auto* g = std::get_if<CliffordGate>(&e)) {
      conjugate_by_gate(r.end, *g);
    } else if (const auto* s = std::get_if<NoisyGateSite>(&e)) {
      conjugate_by_gate(r.end, s->gate);
    } else if (const auto* m = std::get_if<Measure>(&e)) {
      if (m->qubit != kFlagQubit) throw std::logic_error("unexpected encoder measurement");
      r.trips_flag = r.end.x_bit(kFlagQubit);
      r.end.set_x(kFlagQubit, false);
      r.end.set_z(kFlagQubit, false);
    }
  }
  return r;
}

}  // namespace

DistillationCircuit build_distillation_circuit(bool flag) {
  DistillationCircuit dc;
  dc.flag_enabled = flag;
  dc.n = kQubitSpace;
  dc.encoder = build_encoder_with_optional_flag(flag);

  if (flag) {
    dc.key_sites = {"epr", "flag_in"};
  } else {
    dc.key_sites = {"epr", "piv_5", "piv_7", "piv_8", "piv_11"};
  }

  // Full element list: encoder, one T-dagger gadget per code qubit, final
  // X measurements, conditional Z on the output keyed to the total parity.
  dc.full_elements.assign(dc.encoder.elements.begin(), dc.encoder.elements.end());
  for (int q = 1; q <= 15; ++q) {
    auto seg = build_t_gadget(q, PrepState::Tdg, kGadgetAncilla, fmt::format("gad_{}", q));
    dc.full_elements.insert(dc.full_elements.end(), seg.begin(), seg.end());
  }
  std::vector<std::string> x_records;
  for (int q = 1; q <= 15; ++q) {
    x_records.push_back(fmt::format("x{}", q));
    dc.full_elements.push_back(
        CircuitElement{Measure{q, MeasureBasis::X, x_records.back(), true}});
  }
  dc.full_elements.push_back(CircuitElement{ConditionalClifford{kOutQubit, GateKind::Z, x_records}});

  // Per-site end-of-encoder Pauli propagation, over the 18-qubit index space.
  for (std::size_t i = 0; i < dc.encoder.elements.size(); ++i) {
    const auto* s = std::get_if<NoisyGateSite>(&dc.encoder.elements[i]);
    if (!s) continue;
    EncoderSite site;
    site.label = s->site_label;
    site.is_key = std::find(dc.key_sites.begin(), dc.key_sites.end(), site.label) !=
                  dc.key_sites.end();
    site.control = s->gate.q1;
    site.target = s->gate.q2;
    auto zc = propagate_to_end(dc.encoder, PauliOperator::z_on(kQubitSpace, {site.control}), i);
    auto xt = propagate_to_end(dc.encoder, PauliOperator::x_on(kQubitSpace, {site.target}), i);
    site.z_control_end = zc.end;
    site.x_target_end = xt.end;
    dc.encoder_sites.push_back(std::move(site));
    if (zc.trips_flag) throw std::logic_error("Z error cannot flip the flag");
    dc.encoder_sites.back().x_target_end.set_x(kFlagQubit, xt.trips_flag);
  }

  // Noiseless post-encoder checkpoint.
  {
    CounterStream rng(CounterRng(0, 0));
    auto res = execute_circuit(dc.encoder, ErrorAssignment{}, rng, 20);
    dc.checkpoint_labels = res.state.labels();
    dc.checkpoint = res.state.amplitudes();
    if (dc.checkpoint_labels.size() != 16) throw std::logic_error("unexpected checkpoint width");
  }

  // Ideal output target from one noiseless run (outcome branch irrelevant).
  {
    CounterStream rng(CounterRng(0, 0));
    auto res = execute_circuit(dc.full_elements, ErrorAssignment{}, rng, 20);
    if (res.state.live_count() != 1) throw std::logic_error("output qubit not isolated");
    dc.ideal_target = {res.state.amplitudes()[0], res.state.amplitudes()[1]};
  }
  return dc;
}

ErrorAssignment sample_noise(const DistillationCircuit& circuit, const NoiseModel& model,
                             uint64_t shot_index) {
  model.validate();
  CounterRng rng(model.seed, shot_index);
  ErrorAssignment a;
  uint64_t ctr = kEncoderSiteBase;
  for (const auto& site : circuit.encoder_sites) {
    const double p = site.is_key ? model.p_key : model.p_other;
    ErrorAssignment::GateError e;
    e.z_on_control = rng.uniform_at(ctr++) < p;
    e.x_on_target = rng.uniform_at(ctr++) < p;
    if (e.z_on_control || e.x_on_target) a.gate_errors[site.label] = e;
  }
  for (int q = 1; q <= 15; ++q) {
    ErrorAssignment::GateError e;
    e.z_on_control = rng.uniform_at(kGadgetSiteBase + 2 * q) < model.p_other;
    e.x_on_target = rng.uniform_at(kGadgetSiteBase + 2 * q + 1) < model.p_other;
    if (e.z_on_control || e.x_on_target) a.gate_errors[fmt::format("gad_{}", q)] = e;
    a.ancilla_z[q - 1] = rng.uniform_at(kAncillaBase + q) < model.eps_in;
  }
  return a;
}

namespace {

struct ShotOutcome {
  ShotResult result;
  std::array<cd, 2> out_state{};
};

ShotOutcome simulate_shot(const DistillationCircuit& dc, const ErrorAssignment& errors,
                          const NoiseModel& model, uint64_t shot_index, GadgetMode mode) {
  CounterRng base(model.seed, shot_index);
  CounterStream rng(base);
  ShotOutcome out;

  // Accumulated end-of-encoder Pauli for the sampled encoder-site errors.
  PauliOperator p_end = PauliOperator::identity(kQubitSpace);
  for (const auto& site : dc.encoder_sites) {
    auto it = errors.gate_errors.find(site.label);
    if (it == errors.gate_errors.end()) continue;
    if (it->second.z_on_control) p_end = p_end * site.z_control_end;
    if (it->second.x_on_target) p_end = p_end * site.x_target_end;
  }

  if (dc.flag_enabled) {
    rng.next_uniform();  // the flag measurement's draw (outcome deterministic)
    if (p_end.x_bit(kFlagQubit)) {
      out.result = {false, 0, DiscardReason::Flag};
      return out;
    }
  }

  StateVector sv = StateVector::from_amplitudes(dc.checkpoint_labels, dc.checkpoint);
  for (int q = 1; q <= 16; ++q) {
    if (p_end.x_bit(q)) sv.apply_x(q);
    if (p_end.z_bit(q)) sv.apply_z(q);
  }

  if (mode == GadgetMode::Faithful) {
    const auto anc = single_qubit_state(PrepState::Tdg);
    for (int q = 1; q <= 15; ++q) {
      auto it = errors.gate_errors.find(fmt::format("gad_{}", q));
      const bool gz = it != errors.gate_errors.end() && it->second.z_on_control;
      const bool gx = it != errors.gate_errors.end() && it->second.x_on_target;
      const bool bz = errors.ancilla_z[q - 1] ^ gz;
      const cd beta = bz ? -anc[1] : anc[1];
      const int o = sv.replace_via_cnot_zmeasure(q, anc[0], beta, gx, rng.next_uniform());
      if (o == -1) {
        sv.apply_x(q);
        sv.apply_s(q, true);
      }
    }
  } else {
    for (int q = 1; q <= 15; ++q) {
      sv.apply_t(q, true);
      if (errors.ancilla_z[q - 1]) sv.apply_z(q);
    }
  }

  std::array<int, 15> outcomes{};
  for (int q = 1; q <= 15; ++q) {
    outcomes[q - 1] = sv.measure_x_and_remove(q, rng.next_uniform());
  }
  const auto& hx = qrm15().hx;
  for (const auto& row : hx) {
    int parity = 1;
    for (int q = 1; q <= 15; ++q) {
      if (row[q - 1]) parity *= outcomes[q - 1];
    }
    if (parity == -1) {
      out.result = {false, 0, DiscardReason::XStabilizer};
      return out;
    }
  }
  int total = 1;
  for (int o : outcomes) total *= o;
  if (total == -1) sv.apply_z(kOutQubit);

  out.out_state = {sv.amplitudes()[0], sv.amplitudes()[1]};
  out.result = {true, 1.0 - sv.fidelity(dc.ideal_target), DiscardReason::None};
  return out;
}

}  // namespace

ShotResult run_shot(const DistillationCircuit& circuit, const NoiseModel& model,
                    uint64_t shot_index, GadgetMode mode) {
  ErrorAssignment errors = sample_noise(circuit, model, shot_index);
  if (errors.empty()) return {true, 0.0, DiscardReason::None};
  return simulate_shot(circuit, errors, model, shot_index, mode).result;
}

ShotResult run_shot_reference(const DistillationCircuit& circuit, const NoiseModel& model,
                              uint64_t shot_index) {
  ErrorAssignment errors = sample_noise(circuit, model, shot_index);
  CounterStream rng(CounterRng(model.seed, shot_index));
  auto res = execute_circuit(circuit.full_elements, errors, rng, 20);
  if (res.peak_live > 18) throw std::logic_error("recycling bug: peak width exceeded 18");
  if (circuit.flag_enabled && res.records.at("flag") == -1) {
    return {false, 0, DiscardReason::Flag};
  }
  std::array<int, 15> outcomes{};
  for (int q = 1; q <= 15; ++q) outcomes[q - 1] = res.records.at(fmt::format("x{}", q));
  for (const auto& row : qrm15().hx) {
    int parity = 1;
    for (int q = 1; q <= 15; ++q) {
      if (row[q - 1]) parity *= outcomes[q - 1];
    }
    if (parity == -1) return {false, 0, DiscardReason::XStabilizer};
  }
  return {true, 1.0 - res.state.fidelity(circuit.ideal_target), DiscardReason::None};
}

MCSummary monte_carlo(const DistillationCircuit& circuit, const NoiseModel& model, uint64_t shots,
                      GadgetMode mode, int workers) {
  if (shots < 1) throw std::invalid_argument("shots must be >= 1");
  if (workers < 1) workers = 1;
  std::vector<ShotResult> results(shots);
  auto work = [&](uint64_t begin, uint64_t end) {
    for (uint64_t s = begin; s < end; ++s) results[s] = run_shot(circuit, model, s, mode);
  };
  if (workers == 1) {
    work(0, shots);
  } else {
    std::vector<std::thread> pool;
    const uint64_t chunk = (shots + workers - 1) / workers;
    for (int w = 0; w < workers; ++w) {
      const uint64_t b = std::min<uint64_t>(w * chunk, shots);
      const uint64_t e = std::min<uint64_t>(b + chunk, shots);
      if (b < e) pool.emplace_back(work, b, e);
    }
    for (auto& t : pool) t.join();
  }

  // Sequential shot-order reduction keeps the summary independent of the
  // worker split.
  MCSummary sum;
  sum.shots = shots;
  double mean = 0, m2 = 0;
  uint64_t k = 0;
  for (const auto& r : results) {
    if (!r.accepted) continue;
    ++k;
    const double d = r.output_infidelity - mean;
    mean += d / static_cast<double>(k);
    m2 += d * (r.output_infidelity - mean);
  }
  sum.accepted = k;
  sum.success_rate = static_cast<double>(k) / static_cast<double>(shots);
  sum.success_rate_stderr =
      std::sqrt(sum.success_rate * (1.0 - sum.success_rate) / static_cast<double>(shots));
  sum.output_error = (k > 0) ? mean : 0.0;
  sum.output_error_stderr = (k > 1) ? std::sqrt(m2 / static_cast<double>(k - 1) /
                                                static_cast<double>(k))
                                    : 0.0;
  return sum;
}

MCSummary monte_carlo(const NoiseModel& model, uint64_t shots, bool flag, GadgetMode mode,
                      int workers) {
  auto circuit = build_distillation_circuit(flag);
  return monte_carlo(circuit, model, shots, mode, workers);
}

}  // namespace ftnc

#include "ftnc/verify.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "ftnc/concat.hpp"
#include "ftnc/cupz.hpp"
#include "ftnc/distill.hpp"

namespace ftnc {

bool all_pass(const std::vector<CheckReport>& checks) {
  return std::all_of(checks.begin(), checks.end(), [](const CheckReport& c) { return c.pass; });
}

namespace {

std::vector<std::vector<uint8_t>> coset_words(const StabilizerCode& code, unsigned logical_bits) {
  std::vector<std::vector<uint8_t>> span = {std::vector<uint8_t>(code.n, 0)};
  for (const auto& row : code.hx) {
    auto next = span;
    for (auto w : span) {
      for (std::size_t i = 0; i < code.n; ++i) w[i] ^= row[i];
      next.push_back(std::move(w));
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }
  for (std::size_t j = 0; j < code.logical_x.size(); ++j) {
    if (!(logical_bits & (1u << j))) continue;
    for (auto& w : span) {
      for (int q : code.logical_x[j].x_support()) w[q - 1] ^= 1;
    }
  }
  return span;
}

std::vector<cd> coset_amplitudes(const StabilizerCode& code, unsigned logical_bits) {
  std::vector<cd> amps(std::size_t{1} << code.n, cd(0, 0));
  for (const auto& w : coset_words(code, logical_bits)) {
    std::size_t pos = 0;
    for (std::size_t i = 0; i < code.n; ++i) {
      if (w[i]) pos |= std::size_t{1} << (code.n - 1 - i);  // label i+1 added i-th
    }
    amps[pos] += 1.0;
  }
  return amps;
}

CheckReport phase_check(const std::string& name, const StateVector& transformed,
                        const StateVector& reference, cd expected_phase, double tol = 1e-9) {
  const cd ip = state_overlap(reference, transformed);
  const bool ok = std::abs(ip - expected_phase) < tol;
  return {name, ok,
          fmt::format("overlap {:.12f}{:+.12f}i, expected {:.3f}{:+.3f}i", ip.real(), ip.imag(),
                      expected_phase.real(), expected_phase.imag())};
}

const cd kPhaseT = std::polar(1.0, std::numbers::pi / 4);

}  // namespace

StateVector logical_basis_state(const StabilizerCode& code, unsigned logical_bits) {
  std::vector<int> labels(code.n);
  for (std::size_t i = 0; i < code.n; ++i) labels[i] = static_cast<int>(i) + 1;
  return StateVector::from_amplitudes(labels, coset_amplitudes(code, logical_bits),
                                      std::max<std::size_t>(code.n, 20));
}

cd state_overlap(const StateVector& a, const StateVector& b) {
  const auto av = a.amplitudes();
  const auto bv = b.amplitudes_in_label_order(a.labels());
  cd ip = 0;
  for (std::size_t i = 0; i < av.size(); ++i) ip += std::conj(av[i]) * bv[i];
  return ip;
}

std::vector<CheckReport> verify_qrm() {
  std::vector<CheckReport> out;
  const auto& code = qrm15();
  try {
    code.check_invariants();
    out.push_back({"qrm15 CSS commutation and logical pairing", true, ""});
  } catch (const std::exception& e) {
    out.push_back({"qrm15 CSS commutation and logical pairing", false, e.what()});
  }
  const bool low_weight = min_weight_logical_at_most(code, 2);
  out.push_back({"qrm15 distance >= 3", !low_weight,
                 low_weight ? "found a logical operator of weight <= 2" : "no logical of weight <= 2"});

  for (unsigned b : {0u, 1u}) {
    StateVector sv = logical_basis_state(code, b);
    for (int q = 1; q <= 15; ++q) sv.apply_t(q, true);
    out.push_back(phase_check(fmt::format("qrm15 Tdg^15 on |{}L>", b), sv,
                              logical_basis_state(code, b), b ? kPhaseT : cd(1, 0)));
  }
  return out;
}

std::vector<CheckReport> verify_encoder() {
  std::vector<CheckReport> out;
  const auto dc = build_distillation_circuit(false);
  const auto& code = qrm15();

  // Encoder output vs (|0>|0L> + |1>|1L>)/sqrt(2), labels [out, 1..15].
  {
    std::vector<cd> target(std::size_t{1} << 16, cd(0, 0));
    for (unsigned o : {0u, 1u}) {
      const auto part = coset_amplitudes(code, o);
      for (std::size_t i = 0; i < part.size(); ++i) {
        target[(std::size_t{o} << 15) | i] = part[i];
      }
    }
    StateVector tgt = StateVector::from_amplitudes(dc.checkpoint_labels, target);
    StateVector got = StateVector::from_amplitudes(dc.checkpoint_labels, dc.checkpoint);
    const double ov = std::abs(state_overlap(tgt, got));
    out.push_back({"encoder output matches the coded EPR state", ov > 1 - 1e-9,
                   fmt::format("overlap {:.12f}", ov)});
  }

  const auto enc = synthesize_encoder();
  auto site_index = [&](const std::string& label) {
    for (std::size_t i = 0; i < enc.elements.size(); ++i) {
      const auto* s = std::get_if<NoisyGateSite>(&enc.elements[i]);
      if (s && s->site_label == label) return i;
    }
    throw std::logic_error("site not found: " + label);
  };

  {
    const auto p = conjugate_through(enc, PauliOperator::x_on(16, {1}), site_index("piv_11") + 1);
    const std::vector<int> want = {1, 2, 3, 12, 13, 14, 15};
    const bool ok = p.x_support() == want && p.z_support().empty();
    out.push_back({"X on 1 after key gates spreads to {1,2,3,12,13,14,15}", ok, p.to_string()});
  }
  {
    const auto p = conjugate_through(enc, PauliOperator::z_on(16, {1}), site_index("epr") + 1);
    const std::vector<int> want = {1, 5, 7, 8, 11};
    const bool ok = p.z_support() == want && p.x_support().empty();
    out.push_back({"Z on 1 after the EPR gate spreads to {1,5,7,8,11}", ok, p.to_string()});
  }
  for (unsigned b : {0u, 1u}) {
    StateVector sv = logical_basis_state(code, b);
    for (int q : {1, 2, 3, 12, 13, 14, 15}) sv.apply_s(q);
    out.push_back(phase_check(fmt::format("S^7 on the spread set = logical Sdg on |{}L>", b), sv,
                              logical_basis_state(code, b), b ? cd(0, -1) : cd(1, 0)));
  }
  return out;
}

std::vector<CheckReport> verify_gadget() {
  std::vector<CheckReport> out;
  // Teleportation identity on |+>: the gadget must output T|+> (resp.
  // Tdg|+>) with fidelity 1 on both measurement branches.
  for (const auto kind : {PrepState::T, PrepState::Tdg}) {
    for (double u : {0.1, 0.9}) {
      std::vector<ExecElement> elems;
      elems.push_back(CircuitElement{PrepareBasis{1, PrepState::Plus}});
      auto seg = build_t_gadget(1, kind, 2, "g");
      elems.insert(elems.end(), seg.begin(), seg.end());
      struct FixedStream : RandomStream {
        double v;
        explicit FixedStream(double v) : v(v) {}
        double next_uniform() override { return v; }
      } rng(u);
      auto res = execute_circuit(elems, ErrorAssignment{}, rng, 4);
      StateVector expect(4);
      expect.add_qubit(1, PrepState::Plus);
      expect.apply_t(1, kind == PrepState::Tdg);
      const double f = res.state.fidelity(
          {expect.amplitudes()[0], expect.amplitudes()[1]});
      out.push_back({fmt::format("teleportation gadget ({}, branch u={})",
                                 kind == PrepState::Tdg ? "Tdg" : "T", u),
                     f > 1 - 1e-9, fmt::format("fidelity {:.12f}", f)});
    }
  }
  // Optimized and reference shot paths must agree trajectory-by-trajectory.
  for (bool flag : {false, true}) {
    const auto dc = build_distillation_circuit(flag);
    NoiseModel model{0.02, 0.05, 0.03, 7};
    bool ok = true;
    std::string detail;
    for (uint64_t s = 0; s < 200 && ok; ++s) {
      const auto a = run_shot(dc, model, s);
      const auto b = run_shot_reference(dc, model, s);
      if (a.accepted != b.accepted || a.discard_reason != b.discard_reason ||
          std::abs(a.output_infidelity - b.output_infidelity) > 1e-9) {
        ok = false;
        detail = fmt::format("mismatch at shot {}", s);
      }
    }
    out.push_back({fmt::format("fused vs reference executor agreement ({})",
                               flag ? "flagged" : "plain"),
                   ok, detail});
  }
  return out;
}

std::vector<CheckReport> verify_oracle() {
  std::vector<CheckReport> out;
  const auto plain = first_order_oracle(build_distillation_circuit(false));
  const auto flagged = first_order_oracle(build_distillation_circuit(true));
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-9; };
  out.push_back({"plain slope_key = 3.5", near(plain.slope_key, 3.5),
                 fmt::format("slope_key {:.12f}", plain.slope_key)});
  out.push_back({"flagged slope_key = 2.5", near(flagged.slope_key, 2.5),
                 fmt::format("slope_key {:.12f}", flagged.slope_key)});
  out.push_back({"plain slope_other = 0", near(plain.slope_other, 0),
                 fmt::format("slope_other {:.12f}", plain.slope_other)});
  out.push_back({"flagged slope_other = 0", near(flagged.slope_other, 0),
                 fmt::format("slope_other {:.12f}", flagged.slope_other)});
  out.push_back({"first-order eps contribution = 0 (distance-3 suppression)",
                 near(plain.slope_eps, 0) && near(flagged.slope_eps, 0),
                 fmt::format("plain {:.12f}, flagged {:.12f}", plain.slope_eps,
                             flagged.slope_eps)});
  return out;
}

std::vector<CheckReport> verify_transversal_claims() {
  std::vector<CheckReport> out;
  const auto& rm = qrm15();
  const auto& st = steane7();

  for (unsigned b : {0u, 1u}) {
    StateVector sv = logical_basis_state(rm, b);
    for (int q = 1; q <= 15; ++q) sv.apply_s(q);
    out.push_back(phase_check(fmt::format("qrm15 S^15 = logical Sdg on |{}L>", b), sv,
                              logical_basis_state(rm, b), b ? cd(0, -1) : cd(1, 0)));
  }
  for (unsigned b : {0u, 1u}) {
    StateVector sv = logical_basis_state(rm, b);
    for (int q = 1; q <= 15; ++q) sv.apply_t(q, true);
    out.push_back(phase_check(fmt::format("qrm15 Tdg^15 = logical T on |{}L>", b), sv,
                              logical_basis_state(rm, b), b ? kPhaseT : cd(1, 0)));
  }
  for (unsigned b : {0u, 1u}) {
    StateVector sv = logical_basis_state(st, b);
    for (int q = 1; q <= 7; ++q) sv.apply_s(q, true);
    out.push_back(phase_check(fmt::format("steane7 Sdg^7 = logical S on |{}L>", b), sv,
                              logical_basis_state(st, b), b ? cd(0, 1) : cd(1, 0)));
  }
  for (unsigned b : {0u, 1u}) {
    StateVector sv = logical_basis_state(st, b);
    for (int q = 1; q <= 7; ++q) sv.apply_h(q);
    const cd p0 = state_overlap(logical_basis_state(st, 0), sv);
    const cd p1 = state_overlap(logical_basis_state(st, 1), sv);
    const double r = 1.0 / std::sqrt(2.0);
    const bool ok = std::abs(p0 - cd(r, 0)) < 1e-9 &&
                    std::abs(p1 - cd(b ? -r : r, 0)) < 1e-9;
    out.push_back({fmt::format("steane7 H^7 = logical H on |{}L>", b), ok,
                   fmt::format("components {:.9f}, {:.9f}", p0.real(), p1.real())});
  }

  // Transversal CNOT between two Steane blocks (labels 1..7 and 8..14).
  {
    std::vector<int> labels(14);
    for (int i = 0; i < 14; ++i) labels[i] = i + 1;
    auto two_block = [&](unsigned a, unsigned b) {
      const auto av = coset_amplitudes(st, a);
      const auto bv = coset_amplitudes(st, b);
      std::vector<cd> amps(std::size_t{1} << 14);
      for (std::size_t i = 0; i < av.size(); ++i) {
        for (std::size_t j = 0; j < bv.size(); ++j) amps[(i << 7) | j] = av[i] * bv[j];
      }
      return StateVector::from_amplitudes(labels, amps, 14);
    };
    bool ok = true;
    std::string detail;
    for (unsigned a : {0u, 1u}) {
      for (unsigned b : {0u, 1u}) {
        StateVector sv = two_block(a, b);
        for (int q = 1; q <= 7; ++q) sv.apply_cnot(q, q + 7);
        const cd ip = state_overlap(two_block(a, a ^ b), sv);
        if (std::abs(ip - cd(1, 0)) > 1e-9) {
          ok = false;
          detail = fmt::format("|{}L,{}L> overlap {:.9f}{:+.9f}i", a, b, ip.real(), ip.imag());
        }
      }
    }
    out.push_back({"transversal CNOT = logical CNOT on steane7 x steane7", ok, detail});
  }
  return out;
}

std::vector<CheckReport> verify_concat() {
  std::vector<CheckReport> out = verify_transversal_claims();
  const ConcatLayout layout;
  auto near = [](double a, double b) { return std::abs(a - b) < 1e-9; };

  CostModel moving_only;
  moving_only.transfer_us = 0;
  CostModel standard;  // 150 us transfers

  const double t_move = cost(plan_logical_T(layout, moving_only), layout, moving_only);
  const double t_full = cost(plan_logical_T(layout, standard), layout, standard);
  out.push_back({"logical T moving-only cost = 240 us", near(t_move, 240),
                 fmt::format("{:.3f} us", t_move)});
  out.push_back({"logical T cost with 150 us transfers = 840 us", near(t_full, 840),
                 fmt::format("{:.3f} us", t_full)});

  const double h_full = cost(plan_logical_H(layout, standard, true), layout, standard);
  out.push_back({"logical H worst-case cost = 3760 us", near(h_full, 3760),
                 fmt::format("{:.3f} us", h_full)});

  // Affine transfer-time coefficients: 4 for T, 16 for H.
  CostModel t100 = standard, t200 = standard;
  t100.transfer_us = 100;
  t200.transfer_us = 200;
  const double coef_t = (cost(plan_logical_T(layout, t200), layout, t200) -
                         cost(plan_logical_T(layout, t100), layout, t100)) /
                        100.0;
  const double coef_h = (cost(plan_logical_H(layout, t200, true), layout, t200) -
                         cost(plan_logical_H(layout, t100, true), layout, t100)) /
                        100.0;
  out.push_back({"T transfer coefficient = 4", near(coef_t, 4), fmt::format("{:.6f}", coef_t)});
  out.push_back({"H transfer coefficient = 16", near(coef_h, 16), fmt::format("{:.6f}", coef_h)});

  const auto pair_row = plan_transversal_pair(layout, standard, MotionGroup::Row, 1, 6);
  const auto bd = cost_breakdown(pair_row, layout, standard);
  out.push_back({"row(1,6) pair plan: 100 um round trip, 2 transfers",
                 near(bd.move_us, 200) && near(bd.transfer_us, 300),
                 fmt::format("move {:.3f} us, transfer {:.3f} us", bd.move_us, bd.transfer_us)});
  return out;
}

std::vector<CheckReport> verify_cupz(int D) {
  std::vector<CheckReport> out;
  LayeredSystem sys{TorusLattice{D, 2}, D == 2 ? 2 : D};

  if (D == 2) {
    const auto code = build_toric_layer(sys.lattice);
    out.push_back({"2D L=2 layer: 8 qubits, 2 logical qubits",
                   code.n == 8 && code.logical_x.size() == 2,
                   fmt::format("n={}, k={}", code.n, code.logical_x.size())});
    const auto cz = build_logical_CZ(sys, 1, 2);
    const auto rep = statevector_codespace_check(sys, cz);
    out.push_back({"CZ polynomial preserves the layered codespace", rep.preserved, rep.detail});
    out.push_back({"CZ logical action couples the two layers", rep.inter_layer_nontrivial,
                   rep.detail});
    const auto conj = verify_conjugation_identity(sys, 2);
    out.push_back({"2D conjugation identity", conj.classification != ResidualClass::Fail,
                   fmt::format("classification {}", conj.detail)});
    // Contractible flip: a single star is a stabilizer, so the conjugation
    // residual must carry no logical content.
    XFlip star_flip;
    star_flip.edges_by_layer.assign(2, {});
    const auto layer_code = build_toric_layer(sys.lattice);
    for (std::size_t e = 0; e < layer_code.n; ++e) {
      if (layer_code.hx[0][e]) star_flip.edges_by_layer[0].push_back(static_cast<int>(e));
    }
    const auto control = classify_residual(sys, conjugate_by_flip(cz, star_flip));
    out.push_back({"contractible flip leaves no logical content",
                   control.classification != ResidualClass::Fail, control.detail});
  } else if (D == 3) {
    const auto cnz = build_logical_CnZ(sys, {1, 2, 3});
    out.push_back({"CCZ polynomial: 6 monomials per cube (48 total at L=2)",
                   cnz.monomials.size() == 48,
                   fmt::format("{} monomials", cnz.monomials.size())});
    const auto conj = verify_conjugation_identity(sys, 3);
    out.push_back({"3D conjugation identity (CCZ conjugated by the layer-3 membrane)",
                   conj.classification != ResidualClass::Fail,
                   fmt::format("classification: {}", conj.detail)});
  } else {
    out.push_back({"cupz suite", false, "only D in {2,3} is materialized"});
  }
  return out;
}

}  // namespace ftnc

#include <algorithm>

#include "doctest.h"
#include "ftnc/distill.hpp"
#include "ftnc/verify.hpp"

using namespace ftnc;

namespace {

const SiteClassification& find_site(const OracleResult& oracle, const std::string& site,
                                    const std::string& mechanism) {
  for (const auto& s : oracle.sites) {
    if (s.site == site && s.mechanism == mechanism) return s;
  }
  throw std::runtime_error("site not classified: " + site + "/" + mechanism);
}

}  // namespace

TEST_CASE("noise model parameter checks") {
  CHECK(NoiseModel::p_from_fidelity(1.0) == doctest::Approx(0.0));
  const double p = NoiseModel::p_from_fidelity(0.99);
  CHECK((1 - p) * (1 - p) == doctest::Approx(0.99).epsilon(1e-12));
  CHECK_NOTHROW(NoiseModel{0.01, 0.02, 0.0, 1}.validate());
  CHECK_THROWS(NoiseModel{-0.1, 0.0, 0.0, 1}.validate());
  CHECK_THROWS(NoiseModel{0.0, 1.5, 0.0, 1}.validate());
}

TEST_CASE("code and encoder verification suites pass") {
  CHECK(all_pass(verify_qrm()));
  CHECK(all_pass(verify_encoder()));
}

TEST_CASE("gadget and oracle verification suites pass") {
  CHECK(all_pass(verify_gadget()));
  CHECK(all_pass(verify_oracle()));
}

TEST_CASE("circuit structure: key sites and checkpoint") {
  const auto plain = build_distillation_circuit(false);
  CHECK(plain.key_sites ==
        std::vector<std::string>{"epr", "piv_5", "piv_7", "piv_8", "piv_11"});
  CHECK(plain.checkpoint_labels.size() == 16);
  CHECK(plain.checkpoint_labels[0] == kOutQubit);
  const auto flagged = build_distillation_circuit(true);
  CHECK(flagged.flag_enabled);
  CHECK(flagged.key_sites == std::vector<std::string>{"epr", "flag_in"});
}

TEST_CASE("sampled noise is a pure function of (model, shot)") {
  const auto circuit = build_distillation_circuit(false);
  NoiseModel model{0.3, 0.4, 0.2, 77};
  const auto a = sample_noise(circuit, model, 5);
  const auto b = sample_noise(circuit, model, 5);
  CHECK(a.gate_errors == b.gate_errors);
  CHECK(a.ancilla_z == b.ancilla_z);
  // different shots give different assignments at these rates
  const auto c = sample_noise(circuit, model, 6);
  CHECK((a.gate_errors != c.gate_errors || a.ancilla_z != c.ancilla_z));
  CHECK(sample_noise(circuit, NoiseModel{0, 0, 0, 77}, 5).empty());
}

TEST_CASE("oracle slope decomposition by site") {
  const auto plain = first_order_oracle(build_distillation_circuit(false));
  CHECK(plain.slope_key == doctest::Approx(3.5).epsilon(1e-12));
  CHECK(plain.slope_other == doctest::Approx(0.0));
  CHECK(plain.slope_eps == doctest::Approx(0.0));
  // the EPR coupler carries the dominant terms: an undetectable logical Z
  // (infidelity 1) and an X that spreads to the weight-7 pattern, i.e. a
  // logical S-dagger residue (infidelity 1/2)
  CHECK(find_site(plain, "epr", "Z-control").error_weight == doctest::Approx(1.0));
  CHECK(find_site(plain, "epr", "X-target").cls == ErrorClass::OutputError);
  CHECK(find_site(plain, "epr", "X-target").error_weight == doctest::Approx(0.5));

  const auto flagged = first_order_oracle(build_distillation_circuit(true));
  CHECK(flagged.slope_key == doctest::Approx(2.5).epsilon(1e-12));
  CHECK(flagged.slope_other == doctest::Approx(0.0));
  CHECK(flagged.slope_eps == doctest::Approx(0.0));
  // the flag turns the pivot-layer X faults into detected events
  for (const char* site : {"piv_5", "piv_7", "piv_8", "piv_11"}) {
    CHECK(find_site(flagged, site, "X-target").cls == ErrorClass::Detected);
  }
}

TEST_CASE("noiseless shots succeed exactly") {
  for (bool flag : {false, true}) {
    const auto circuit = build_distillation_circuit(flag);
    const NoiseModel model{0, 0, 0, 3};
    for (GadgetMode mode : {GadgetMode::Faithful, GadgetMode::Fast}) {
      const auto r = run_shot(circuit, model, 0, mode);
      CHECK(r.accepted);
      CHECK(r.output_infidelity == doctest::Approx(0.0));
      CHECK(r.discard_reason == DiscardReason::None);
    }
  }
}

TEST_CASE("monte carlo summary is worker-count independent") {
  const auto circuit = build_distillation_circuit(true);
  const NoiseModel model{0.002, 0.004, 0.003, 123};
  const auto one = monte_carlo(circuit, model, 400, GadgetMode::Faithful, 1);
  const auto three = monte_carlo(circuit, model, 400, GadgetMode::Faithful, 3);
  CHECK(one.accepted == three.accepted);
  CHECK(one.success_rate == three.success_rate);
  CHECK(one.output_error == three.output_error);
  CHECK(one.output_error_stderr == three.output_error_stderr);
  CHECK(one.shots == 400);
}

TEST_CASE("monte carlo responds to noise in the right direction") {
  const NoiseModel quiet{0, 0.001, 0, 11};
  const NoiseModel loud{0, 0.2, 0, 11};
  const auto a = monte_carlo(quiet, 1500, false, GadgetMode::Fast);
  const auto b = monte_carlo(loud, 1500, false, GadgetMode::Fast);
  CHECK(a.success_rate > b.success_rate);
  CHECK(a.output_error < b.output_error);
  // input-only noise with perfect gates: errors are mostly caught, output
  // error lands far below the input error (cubic suppression regime)
  const NoiseModel input_only{0, 0, 0.05, 11};
  const auto c = monte_carlo(input_only, 4000, false, GadgetMode::Fast);
  CHECK(c.output_error < 0.2 * 0.05);
  CHECK(c.success_rate < 1.0);
}

TEST_CASE("fused path matches the reference executor shot by shot") {
  const NoiseModel model{0.03, 0.05, 0.02, 19};
  for (bool flag : {false, true}) {
    const auto circuit = build_distillation_circuit(flag);
    for (uint64_t shot = 0; shot < 25; ++shot) {
      const auto fast = run_shot(circuit, model, shot);
      const auto ref = run_shot_reference(circuit, model, shot);
      CHECK(fast.accepted == ref.accepted);
      CHECK(fast.discard_reason == ref.discard_reason);
      if (fast.accepted) {
        CHECK(fast.output_infidelity ==
              doctest::Approx(ref.output_infidelity).epsilon(1e-9));
      }
    }
  }
}

#include <fmt/format.h>

#include <cstdlib>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "ftnc/concat.hpp"
#include "ftnc/cupz.hpp"
#include "ftnc/distill.hpp"
#include "ftnc/verify.hpp"
#include "json.hpp"

namespace {

constexpr const char* kVersion = "1.0.0";

uint64_t default_seed() {
  if (const char* env = std::getenv("FTNC_SEED")) {
    return std::strtoull(env, nullptr, 10);
  }
  return 0;
}

struct SweepConfig {
  std::vector<double> eps_in = {0.0};
  std::vector<double> p_key, p_other;
  std::vector<double> f_key, f_other, f_gate;
  uint64_t shots = 10000;
  bool flag = false;
  bool fast = false;
  uint64_t seed = default_seed();
  int workers = 1;
  std::string output;  // empty = stdout
};

int run_distill(const SweepConfig& cfg) {
  if ((!cfg.p_key.empty() && !cfg.f_key.empty()) ||
      (!cfg.p_other.empty() && !cfg.f_other.empty()) ||
      (!cfg.f_gate.empty() && (!cfg.p_key.empty() || !cfg.f_key.empty() ||
                               !cfg.p_other.empty() || !cfg.f_other.empty()))) {
    std::cerr << "error: probability and fidelity flags are mutually exclusive per axis\n";
    return 2;
  }
  auto to_p = [](const std::vector<double>& fs) {
    std::vector<double> ps;
    for (double f : fs) ps.push_back(ftnc::NoiseModel::p_from_fidelity(f));
    return ps;
  };
  std::vector<double> keys = !cfg.p_key.empty()   ? cfg.p_key
                             : !cfg.f_key.empty() ? to_p(cfg.f_key)
                             : !cfg.f_gate.empty()? to_p(cfg.f_gate)
                                                  : std::vector<double>{0.0};
  std::vector<double> others = !cfg.p_other.empty()   ? cfg.p_other
                               : !cfg.f_other.empty() ? to_p(cfg.f_other)
                               : !cfg.f_gate.empty()  ? to_p(cfg.f_gate)
                                                      : std::vector<double>{0.0};

  std::string csv;
  csv += fmt::format("# ftnc distill v{}\n", kVersion);
  csv += fmt::format("# seed={} shots={} flag={} mode={}\n", cfg.seed, cfg.shots,
                     cfg.flag ? 1 : 0, cfg.fast ? "fast" : "faithful");
  csv += "# probabilities from fidelities via p = 1 - sqrt(F)\n";
  csv += "eps_in,p_other,p_key,flag,shots,accepted,success_rate,success_rate_stderr,"
         "output_error,output_error_stderr\n";

  const auto circuit = ftnc::build_distillation_circuit(cfg.flag);
  const auto mode = cfg.fast ? ftnc::GadgetMode::Fast : ftnc::GadgetMode::Faithful;
  for (double eps : cfg.eps_in) {
    for (double po : others) {
      for (double pk : keys) {
        ftnc::NoiseModel model{po, pk, eps, cfg.seed};
        const auto s = ftnc::monte_carlo(circuit, model, cfg.shots, mode, cfg.workers);
        csv += fmt::format("{:.9g},{:.9g},{:.9g},{},{},{},{:.9g},{:.9g},{:.9g},{:.9g}\n", eps,
                           po, pk, cfg.flag ? 1 : 0, s.shots, s.accepted, s.success_rate,
                           s.success_rate_stderr, s.output_error, s.output_error_stderr);
      }
    }
  }

  if (cfg.output.empty()) {
    std::cout << csv;
  } else {
    std::ofstream f(cfg.output, std::ios::binary);
    if (!f) {
      std::cerr << fmt::format("error: cannot write '{}'\n", cfg.output);
      return 2;
    }
    f << csv;
  }
  return 0;
}

int run_verify(const std::string& suite) {
  std::vector<std::pair<std::string, std::vector<ftnc::CheckReport>>> reports;
  auto want = [&](const std::string& s) { return suite == "all" || suite == s; };
  if (want("qrm")) reports.emplace_back("qrm", ftnc::verify_qrm());
  if (want("encoder")) reports.emplace_back("encoder", ftnc::verify_encoder());
  if (want("gadget")) reports.emplace_back("gadget", ftnc::verify_gadget());
  if (want("oracle")) reports.emplace_back("oracle", ftnc::verify_oracle());
  if (want("concat")) reports.emplace_back("concat", ftnc::verify_concat());
  if (want("cupz2d")) reports.emplace_back("cupz2d", ftnc::verify_cupz(2));
  if (want("cupz3d")) reports.emplace_back("cupz3d", ftnc::verify_cupz(3));
  if (reports.empty()) {
    std::cerr << fmt::format("error: unknown suite '{}'\n", suite);
    return 2;
  }
  bool all_ok = true;
  for (const auto& [name, checks] : reports) {
    for (const auto& c : checks) {
      all_ok &= c.pass;
      std::cout << fmt::format("[{}] {}: {}{}{}\n", c.pass ? "PASS" : "FAIL", name, c.name,
                               c.detail.empty() ? "" : " — ", c.detail);
    }
  }
  return all_ok ? 0 : 1;
}

int run_concat_cost(const std::string& gate, double transfer_us, bool worst_case, bool json) {
  ftnc::ConcatLayout layout;
  ftnc::CostModel model;
  model.transfer_us = transfer_us;
  model.validate();

  ftnc::MotionPlan plan;
  if (gate == "T") {
    plan = ftnc::plan_logical_T(layout, model);
  } else if (gate == "H") {
    plan = ftnc::plan_logical_H(layout, model, worst_case);
  } else {
    std::cerr << fmt::format("error: unknown gate '{}'\n", gate);
    return 2;
  }
  const auto b = ftnc::cost_breakdown(plan, layout, model);
  if (json) {
    nlohmann::json j;
    j["gate"] = gate;
    j["worst_case"] = worst_case;
    j["transfer_us"] = transfer_us;
    j["move_us"] = b.move_us;
    j["transfer_total_us"] = b.transfer_us;
    j["pulse_us"] = b.pulse_us;
    j["accel_us"] = b.accel_us;
    j["total_us"] = b.total();
    j["total_with_pulses_us"] = b.total_with_pulses();
    j["plan"] = ftnc::serialize_plan(plan);
    std::cout << j.dump(2) << "\n";
  } else {
    std::cout << ftnc::serialize_plan(plan);
    std::cout << fmt::format("move:      {:.3f} us\n", b.move_us);
    std::cout << fmt::format("transfers: {:.3f} us\n", b.transfer_us);
    std::cout << fmt::format("pulses:    {:.3f} us (excluded from total)\n", b.pulse_us);
    std::cout << fmt::format("total:     {:.3f} us\n", b.total());
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Magic-state distillation, atom-motion cost, and cup-product toolkit"};
  app.require_subcommand(1);

  SweepConfig cfg;
  auto* distill = app.add_subcommand("distill", "Monte Carlo distillation sweep (CSV output)");
  distill->add_option("--input-noise", cfg.eps_in, "input magic-state infidelity eps_in (list)");
  distill->add_option("--p-key", cfg.p_key, "key-gate error probability (list)");
  distill->add_option("--p-other", cfg.p_other, "non-key gate error probability (list)");
  distill->add_option("--key-fidelity", cfg.f_key, "key-gate Choi fidelity (list)");
  distill->add_option("--other-fidelity", cfg.f_other, "non-key gate Choi fidelity (list)");
  distill->add_option("--gate-fidelity", cfg.f_gate, "Choi fidelity for all gates (list)");
  distill->add_option("--shots", cfg.shots, "shots per grid point");
  distill->add_flag("--flag", cfg.flag, "use the flagged encoder");
  distill->add_flag("--fast", cfg.fast, "ideal-gadget mode (skip gadget gate noise)");
  distill->add_option("--seed", cfg.seed, "RNG seed (default from FTNC_SEED)");
  distill->add_option("--workers", cfg.workers, "worker threads (output is worker-independent)");
  distill->add_option("-o,--output", cfg.output, "CSV output path (default stdout)");

  std::string suite = "all";
  auto* verify = app.add_subcommand("verify", "run a verification suite");
  verify->add_option("suite", suite,
                     "one of qrm, encoder, gadget, oracle, concat, cupz2d, cupz3d, all");

  std::string gate;
  double transfer_us = 150;
  bool worst_case = false, json = false;
  auto* concat = app.add_subcommand("concat-cost", "motion plan and time cost for a logical gate");
  concat->add_option("gate", gate, "T or H")->required();
  concat->add_option("--transfer-us", transfer_us, "tweezer transfer time (100-200, or 0)");
  concat->add_flag("--worst-case", worst_case, "use the worst-case H cycle template");
  concat->add_flag("--json", json, "emit the report as JSON");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  try {
    if (distill->parsed()) return run_distill(cfg);
    if (verify->parsed()) return run_verify(suite);
    if (concat->parsed()) return run_concat_cost(gate, transfer_us, worst_case, json);
  } catch (const std::exception& e) {
    std::cerr << fmt::format("error: {}\n", e.what());
    return 2;
  }
  return 2;
}

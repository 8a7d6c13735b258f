#include <cmath>
#include <numbers>

#include "doctest.h"
#include "ftnc/statevec.hpp"
#include "ftnc/verify.hpp"

using namespace ftnc;

namespace {

StateVector scrambled_pair() {
  StateVector sv(4);
  sv.add_qubit(1, PrepState::Plus);
  sv.add_qubit(2, PrepState::Zero);
  sv.apply_t(1);
  sv.apply_cnot(1, 2);
  sv.apply_h(2);
  sv.apply_s(2);
  return sv;
}

double dist(const std::vector<cd>& a, const std::vector<cd>& b) {
  double d = 0;
  for (std::size_t i = 0; i < a.size(); ++i) d += std::norm(a[i] - b[i]);
  return std::sqrt(d);
}

}  // namespace

TEST_CASE("norm stays 1 through a long random-ish circuit") {
  StateVector sv(6);
  for (int q = 1; q <= 5; ++q) sv.add_qubit(q, q % 2 ? PrepState::Plus : PrepState::T);
  for (int i = 0; i < 100; ++i) {
    const int q = 1 + (i * 7) % 5;
    const int r = 1 + (i * 3 + 1) % 5;
    switch (i % 5) {
      case 0: sv.apply_h(q); break;
      case 1: sv.apply_s(q, i % 2); break;
      case 2: sv.apply_t(q); break;
      case 3: if (q != r) sv.apply_cnot(q, r); break;
      case 4: if (q != r) sv.apply_cz(q, r); break;
    }
    CHECK(std::abs(sv.norm() - 1.0) < 1e-12);
  }
}

TEST_CASE("gate then inverse gate is the identity") {
  auto ref = scrambled_pair().amplitudes();
  {
    auto sv = scrambled_pair();
    sv.apply_h(1);
    sv.apply_h(1);
    CHECK(dist(sv.amplitudes(), ref) < 1e-10);
  }
  {
    auto sv = scrambled_pair();
    sv.apply_s(1);
    sv.apply_s(1, true);
    CHECK(dist(sv.amplitudes(), ref) < 1e-10);
  }
  {
    auto sv = scrambled_pair();
    sv.apply_t(2);
    sv.apply_t(2, true);
    CHECK(dist(sv.amplitudes(), ref) < 1e-10);
  }
  {
    auto sv = scrambled_pair();
    sv.apply_cnot(2, 1);
    sv.apply_cnot(2, 1);
    CHECK(dist(sv.amplitudes(), ref) < 1e-10);
  }
  {
    auto sv = scrambled_pair();
    sv.apply_cz(1, 2);
    sv.apply_cz(1, 2);
    CHECK(dist(sv.amplitudes(), ref) < 1e-10);
  }
}

TEST_CASE("diagonal gates: CCZ and CmZ") {
  StateVector sv(4);
  for (int q : {1, 2, 3}) sv.add_qubit(q, PrepState::Plus);
  sv.apply_ccz(1, 2, 3);
  // only |111> picks up -1
  const auto amps = sv.amplitudes();
  const double a = 1.0 / std::sqrt(8.0);
  for (std::size_t i = 0; i < 8; ++i) {
    CHECK(std::abs(amps[i] - cd(i == 7 ? -a : a, 0)) < 1e-12);
  }
  StateVector sv2(4);
  for (int q : {1, 2, 3}) sv2.add_qubit(q, PrepState::Plus);
  sv2.apply_cmz({1, 2, 3});
  CHECK(dist(sv2.amplitudes(), amps) < 1e-12);
}

TEST_CASE("measurement basics") {
  {
    StateVector sv(2);
    sv.add_qubit(1, PrepState::Zero);
    CHECK(sv.measure(1, MeasureBasis::Z, 0.99) == +1);
  }
  {
    StateVector sv(2);
    sv.add_qubit(1, PrepState::Plus);
    CHECK(sv.measure(1, MeasureBasis::X, 0.99) == +1);
  }
  {
    // |+> in Z: both branches reachable, collapse is consistent
    StateVector sv(2);
    sv.add_qubit(1, PrepState::Plus);
    CHECK(sv.measure(1, MeasureBasis::Z, 0.2) == -1);
    CHECK(sv.measure(1, MeasureBasis::Z, 0.9) == -1);  // collapsed
  }
  {
    StateVector sv(2);
    sv.add_qubit(1, PrepState::T);
    // |T> is equatorial: Z outcome probability 1/2 each
    StateVector sv2 = sv;
    CHECK(sv.measure(1, MeasureBasis::Z, 0.49) == -1);
    CHECK(sv2.measure(1, MeasureBasis::Z, 0.51) == +1);
  }
}

TEST_CASE("X measurements of |+L> multiply to +1") {
  // |+L> is the uniform superposition over the span of hx and logical X;
  // it is a +1 eigenstate of X^15 = Xbar * r3 * r4, so the product of
  // transversal X outcomes is deterministic.
  const auto& code = qrm15();
  std::vector<std::vector<uint8_t>> gens = code.hx;
  gens.push_back(code.logical_x[0].x_bits());
  std::vector<int> labels;
  for (int q = 1; q <= 15; ++q) labels.push_back(q);
  for (double base : {0.13, 0.57, 0.91}) {
    std::vector<cd> amps(std::size_t{1} << 15, 0.0);
    for (unsigned mask = 0; mask < (1u << gens.size()); ++mask) {
      std::size_t idx = 0;
      for (int q = 1; q <= 15; ++q) {
        uint8_t bit = 0;
        for (std::size_t g = 0; g < gens.size(); ++g) {
          if (mask >> g & 1) bit ^= gens[g][q - 1];
        }
        if (bit) idx |= std::size_t{1} << (15 - q);
      }
      amps[idx] = 1.0;
    }
    StateVector sv = StateVector::from_amplitudes(labels, amps);
    int prod = 1;
    for (int q = 1; q <= 15; ++q) {
      prod *= sv.measure_x_and_remove(q, std::fmod(base + 0.061 * q, 1.0));
    }
    CHECK(prod == +1);
  }
}

TEST_CASE("add, relabel, remove round trip") {
  auto sv = scrambled_pair();
  const auto ref = sv.amplitudes();
  sv.add_qubit(7, PrepState::Zero);
  CHECK(sv.live_count() == 3);
  sv.relabel(7, 9);
  CHECK(sv.has(9));
  CHECK(!sv.has(7));
  CHECK(sv.measure(9, MeasureBasis::Z, 0.5) == +1);
  sv.remove_measured(9);
  CHECK(dist(sv.amplitudes(), ref) < 1e-10);

  CHECK_THROWS(sv.add_qubit(1, PrepState::Zero));  // duplicate label
  StateVector tiny(2);
  tiny.add_qubit(1, PrepState::Zero);
  tiny.add_qubit(2, PrepState::Zero);
  CHECK_THROWS(tiny.add_qubit(3, PrepState::Zero));  // cap exceeded
}

TEST_CASE("remove_measured rejects entangled qubits") {
  StateVector sv(3);
  sv.add_qubit(1, PrepState::Plus);
  sv.add_qubit(2, PrepState::Zero);
  sv.apply_cnot(1, 2);
  CHECK_THROWS(sv.remove_measured(2));
}

TEST_CASE("fused teleportation step matches the explicit gadget") {
  const auto anc = single_qubit_state(PrepState::Tdg);
  for (double u : {0.2, 0.8}) {
    // fused
    auto fused = scrambled_pair();
    const int o1 = fused.replace_via_cnot_zmeasure(1, anc[0], anc[1], false, u);
    // explicit: add ancilla, CNOT(anc -> 1), Z-measure 1, remove, relabel
    auto plain = scrambled_pair();
    plain.add_qubit(3, PrepState::Tdg);
    plain.apply_cnot(3, 1);
    const int o2 = plain.measure(1, MeasureBasis::Z, u);
    plain.remove_measured(1);
    plain.relabel(3, 1);
    CHECK(o1 == o2);
    CHECK(dist(fused.amplitudes_in_label_order(plain.labels()), plain.amplitudes()) < 1e-10);
  }
}

TEST_CASE("fused X measurement matches measure + remove") {
  for (double u : {0.2, 0.8}) {
    auto a = scrambled_pair();
    const int o1 = a.measure_x_and_remove(1, u);
    auto b = scrambled_pair();
    const int o2 = b.measure(1, MeasureBasis::X, u);
    b.apply_h(1);
    b.remove_measured(1);
    CHECK(o1 == o2);
    CHECK(dist(a.amplitudes(), b.amplitudes()) < 1e-10);
  }
}

TEST_CASE("fidelity values for the magic state") {
  const auto t = single_qubit_state(PrepState::T);
  StateVector sv(1);
  sv.add_qubit(1, PrepState::T);
  CHECK(sv.fidelity(t) == doctest::Approx(1.0).epsilon(1e-12));
  sv.apply_s(1, true);
  CHECK(sv.fidelity(t) == doctest::Approx(0.5).epsilon(1e-9));
  StateVector sz(1);
  sz.add_qubit(1, PrepState::T);
  sz.apply_z(1);
  CHECK(sz.fidelity(t) == doctest::Approx(0.0).epsilon(1e-9));
}

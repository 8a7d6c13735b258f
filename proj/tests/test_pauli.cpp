#include "doctest.h"
#include "ftnc/pauli.hpp"

using namespace ftnc;

namespace {

PauliOperator y1() { return PauliOperator::from_bits({1}, {1}, 1); }  // Y = i X Z

PauliOperator conj(PauliOperator p, const CliffordGate& g) {
  conjugate_by_gate(p, g);
  return p;
}

}  // namespace

TEST_CASE("single-qubit pauli products and phases") {
  const auto I = PauliOperator::identity(1);
  const auto X = PauliOperator::x_on(1, {1});
  const auto Z = PauliOperator::z_on(1, {1});
  const auto Y = y1();

  CHECK(X * X == I);
  CHECK(Z * Z == I);
  CHECK(Y * Y == I);

  // XY = iZ, YZ = iX, ZX = iY (cyclic)
  auto iZ = PauliOperator::z_on(1, {1});
  iZ.mul_phase(1);
  CHECK(X * Y == iZ);
  auto iX = PauliOperator::x_on(1, {1});
  iX.mul_phase(1);
  CHECK(Y * Z == iX);
  auto iY = y1();
  iY.mul_phase(1);
  CHECK(Z * X == iY);

  CHECK(!X.commutes_with(Z));
  CHECK(!X.commutes_with(Y));
  CHECK(X.commutes_with(X));
  CHECK(X.commutes_with(I));
}

TEST_CASE("weight, support, string form") {
  const auto p = PauliOperator::x_on(4, {1, 3}) * PauliOperator::z_on(4, {3, 4});
  CHECK(p.weight() == 3);
  CHECK(p.x_support() == std::vector<int>{1, 3});
  CHECK(p.z_support() == std::vector<int>{3, 4});
  CHECK(PauliOperator::identity(3).is_identity());
  CHECK(!p.is_identity());
}

TEST_CASE("single-qubit conjugation table") {
  const auto X = PauliOperator::x_on(1, {1});
  const auto Z = PauliOperator::z_on(1, {1});
  const auto Y = y1();

  CHECK(conj(X, make_gate(GateKind::H, 1)) == Z);
  CHECK(conj(Z, make_gate(GateKind::H, 1)) == X);
  auto mY = y1();
  mY.mul_phase(2);
  CHECK(conj(Y, make_gate(GateKind::H, 1)) == mY);

  CHECK(conj(X, make_gate(GateKind::S, 1)) == Y);
  auto mX = PauliOperator::x_on(1, {1});
  mX.mul_phase(2);
  CHECK(conj(Y, make_gate(GateKind::S, 1)) == mX);
  CHECK(conj(Z, make_gate(GateKind::S, 1)) == Z);

  CHECK(conj(Y, make_gate(GateKind::Sdg, 1)) == X);
  CHECK(conj(conj(X, make_gate(GateKind::S, 1)), make_gate(GateKind::Sdg, 1)) == X);

  auto mZ = PauliOperator::z_on(1, {1});
  mZ.mul_phase(2);
  CHECK(conj(Z, make_gate(GateKind::X, 1)) == mZ);
  CHECK(conj(X, make_gate(GateKind::Z, 1)) == mX);
  CHECK(conj(X, make_gate(GateKind::Y, 1)) == mX);
}

TEST_CASE("two-qubit conjugation: CNOT and CZ") {
  const auto cnot = make_gate(GateKind::CNOT, 1, 2);
  CHECK(conj(PauliOperator::x_on(2, {1}), cnot) == PauliOperator::x_on(2, {1, 2}));
  CHECK(conj(PauliOperator::x_on(2, {2}), cnot) == PauliOperator::x_on(2, {2}));
  CHECK(conj(PauliOperator::z_on(2, {1}), cnot) == PauliOperator::z_on(2, {1}));
  CHECK(conj(PauliOperator::z_on(2, {2}), cnot) == PauliOperator::z_on(2, {1, 2}));
  // Y (x) Y -> -X (x) Z under CNOT
  const auto yy = PauliOperator::from_bits({1, 1}, {1, 1}, 2);  // i^2 XZ (x) XZ = Y (x) Y
  auto want = PauliOperator::x_on(2, {1}) * PauliOperator::z_on(2, {2});
  want.mul_phase(2);
  CHECK(conj(yy, cnot) == want);

  const auto cz = make_gate(GateKind::CZ, 1, 2);
  CHECK(conj(PauliOperator::x_on(2, {1}), cz) ==
        PauliOperator::x_on(2, {1}) * PauliOperator::z_on(2, {2}));
  CHECK(conj(PauliOperator::z_on(2, {1}), cz) == PauliOperator::z_on(2, {1}));
  // CZ is symmetric
  CHECK(conj(PauliOperator::x_on(2, {2}), cz) ==
        PauliOperator::x_on(2, {2}) * PauliOperator::z_on(2, {1}));
}

TEST_CASE("conjugation preserves products and commutation") {
  const auto gates = {make_gate(GateKind::H, 1), make_gate(GateKind::S, 2),
                      make_gate(GateKind::CNOT, 1, 3), make_gate(GateKind::CZ, 2, 3)};
  const auto a = PauliOperator::x_on(3, {1, 2}) * PauliOperator::z_on(3, {3});
  const auto b = PauliOperator::z_on(3, {1}) * PauliOperator::x_on(3, {3});
  for (const auto& g : gates) {
    CHECK(conj(a, g) * conj(b, g) == conj(a * b, g));
    CHECK(conj(a, g).commutes_with(conj(b, g)) == a.commutes_with(b));
  }
}

TEST_CASE("conjugate_through pushes through later gates only") {
  CliffordCircuit c;
  c.n = 2;
  c.gate(GateKind::H, 1);
  c.gate(GateKind::CNOT, 1, 2);
  // inserted after the H: X1 -> X1 X2 under the CNOT
  CHECK(conjugate_through(c, PauliOperator::x_on(2, {1}), 1) == PauliOperator::x_on(2, {1, 2}));
  // inserted at the start: X1 -H-> Z1 -CNOT-> Z1
  CHECK(conjugate_through(c, PauliOperator::x_on(2, {1}), 0) == PauliOperator::z_on(2, {1}));
}

TEST_CASE("circuit validation rejects bad references") {
  CliffordCircuit c;
  c.n = 2;
  c.gate(GateKind::H, 1);
  c.add(Measure{1, MeasureBasis::Z, "m", false});
  c.add(ConditionalClifford{2, GateKind::X, {"m"}});
  CHECK_NOTHROW(c.validate());
  c.add(ConditionalClifford{2, GateKind::X, {"nope"}});
  CHECK_THROWS(c.validate());
  CliffordCircuit bad;
  bad.n = 1;
  bad.gate(GateKind::H, 2);
  CHECK_THROWS(bad.validate());
}

#include <algorithm>

#include "doctest.h"
#include "ftnc/cupz.hpp"
#include "ftnc/verify.hpp"

using namespace ftnc;

namespace {

LayeredSystem sys(int D, int L, int layers) { return LayeredSystem{TorusLattice{D, L}, layers}; }

// Shift every vertex coordinate by `delta` along `dir` (periodic), applied to
// each variable's edge.
PhasePolynomial translate(const TorusLattice& lat, const PhasePolynomial& p, int dir, int delta) {
  PhasePolynomial out;
  for (const auto& m : p.monomials) {
    Monomial shifted;
    for (const auto& [layer, edge] : m) {
      const int v = edge % lat.num_vertices();
      const int d = edge / lat.num_vertices();
      shifted.emplace_back(layer, lat.edge_index(lat.neighbor(v, dir, delta), d));
    }
    std::sort(shifted.begin(), shifted.end());
    out.toggle(shifted);
  }
  return out;
}

}  // namespace

TEST_CASE("torus lattice indexing") {
  const TorusLattice lat{3, 4};
  CHECK(lat.num_vertices() == 64);
  CHECK(lat.num_edges() == 192);
  for (int v : {0, 17, 63}) {
    CHECK(lat.vertex_index(lat.coords(v)) == v);
  }
  const int v = lat.vertex_index({1, 2, 3});
  CHECK(lat.neighbor(lat.neighbor(v, 0, 1), 0, -1) == v);
  CHECK(lat.coords(lat.neighbor(v, 2, 1))[2] == 0);  // wraps 3 -> 0
  CHECK_THROWS(TorusLattice{1, 2}.validate());
  CHECK_THROWS(TorusLattice{2, 1}.validate());
}

TEST_CASE("toric layer codes pass invariants") {
  for (int D : {2, 3}) {
    const TorusLattice lat{D, 2};
    const auto code = build_toric_layer(lat);
    CHECK_NOTHROW(code.check_invariants());
    CHECK(code.n == lat.num_edges());
    CHECK(static_cast<int>(code.logical_x.size()) == D);
    // logical pairs: X-membrane of direction d anticommutes only with the
    // Z-string of the same direction
    for (int a = 0; a < D; ++a) {
      for (int b = 0; b < D; ++b) {
        CHECK(code.logical_x[a].commutes_with(code.logical_z[b]) == (a != b));
      }
    }
  }
}

TEST_CASE("membrane and string supports") {
  const TorusLattice lat{2, 3};
  CHECK(x_membrane(lat, 0, 1).size() == 3);
  CHECK(z_string(lat, 0).size() == 3);
  const TorusLattice lat3{3, 2};
  CHECK(x_membrane(lat3, 2, 0).size() == 4);
  CHECK(z_string(lat3, 2).size() == 2);
}

TEST_CASE("CnZ polynomial shape") {
  // D=2: two paths per face, two edges each -> one degree-2 monomial per path
  const auto cz = build_logical_CZ(sys(2, 2, 2), 1, 2);
  CHECK(cz.max_degree() == 2);
  CHECK(cz.monomials.size() == 8);  // 4 faces x 2 paths
  CHECK(cz == build_logical_CnZ(sys(2, 2, 2), {1, 2}));
  // D=3: 3! paths per cube, 8 cubes at L=2
  const auto ccz = build_logical_CnZ(sys(3, 2, 3), {1, 2, 3});
  CHECK(ccz.max_degree() == 3);
  CHECK(ccz.monomials.size() == 48);
}

TEST_CASE("CZ polynomial is translation invariant") {
  const auto s = sys(2, 3, 2);
  const auto cz = build_logical_CZ(s, 1, 2);
  for (int dir : {0, 1}) {
    CHECK(translate(s.lattice, cz, dir, 1) == cz);
  }
}

TEST_CASE("conjugate_by_flip algebra") {
  const auto s = sys(2, 2, 2);
  const auto cz = build_logical_CZ(s, 1, 2);
  const XFlip none{{{}, {}}};
  CHECK(conjugate_by_flip(cz, none).empty());
  const XFlip memb{{x_membrane(s.lattice, 1, 0), {}}};
  const auto delta = conjugate_by_flip(cz, memb);
  CHECK(!delta.empty());
  CHECK(delta.max_degree() < cz.max_degree());  // flips strictly lower the degree
  // Delta is its own inverse: conjugating the toggled polynomial again
  // returns the same difference
  CHECK(conjugate_by_flip(cz ^ delta, memb) == delta);
  // linearity over disjoint polynomials
  const auto p2 = build_logical_CZ(sys(2, 2, 2), 1, 2);
  CHECK(conjugate_by_flip(cz ^ p2, memb).empty());  // P ^ P = 0
}

TEST_CASE("residual classification") {
  const auto s = sys(2, 2, 2);
  const auto& code = build_toric_layer(s.lattice);
  // empty residual -> Exact
  CHECK(classify_residual(s, PhasePolynomial{}).classification == ResidualClass::Exact);
  // a single plaquette's Z support -> stabilizer equivalent
  PhasePolynomial plaq;
  for (std::size_t e = 0; e < code.hz[0].size(); ++e) {
    if (code.hz[0][e]) plaq.toggle({{1, static_cast<int>(e)}});
  }
  CHECK(classify_residual(s, plaq).classification == ResidualClass::StabilizerEquivalent);
  // a bare Z string is a logical, not a stabilizer -> Fail
  PhasePolynomial logical;
  for (int e : z_string(s.lattice, 0)) logical.toggle({{1, e}});
  CHECK(classify_residual(s, logical).classification == ResidualClass::Fail);
  // degree-2 leftovers are never absorbable
  PhasePolynomial quad;
  quad.toggle({{1, 0}, {2, 0}});
  CHECK(classify_residual(s, quad).classification == ResidualClass::Fail);
}

TEST_CASE("membrane conjugation identity holds in 2D and 3D") {
  CHECK(verify_conjugation_identity(sys(2, 2, 2), 2).classification != ResidualClass::Fail);
  CHECK(verify_conjugation_identity(sys(3, 2, 3), 3).classification != ResidualClass::Fail);
}

TEST_CASE("statevector codespace check on the 2D CZ") {
  const auto s = sys(2, 2, 2);
  const auto report = statevector_codespace_check(s, build_logical_CZ(s, 1, 2));
  CHECK(report.preserved);
  CHECK(report.phases.size() == 16);
  CHECK(report.inter_layer_nontrivial);
  // the empty polynomial acts as the identity
  const auto trivial = statevector_codespace_check(s, PhasePolynomial{});
  CHECK(trivial.preserved);
  CHECK(!trivial.inter_layer_nontrivial);
  for (int ph : trivial.phases) CHECK(ph == +1);
}

TEST_CASE("polynomial serialization is stable") {
  PhasePolynomial p;
  p.toggle({{2, 5}, {1, 3}});
  p.toggle({{1, 0}});
  CHECK(serialize_polynomial(p) == "1:0\n1:3 2:5\n");
}

TEST_CASE("layered cup-product verification suites pass") {
  CHECK(all_pass(verify_cupz(2)));
  CHECK(all_pass(verify_cupz(3)));
}

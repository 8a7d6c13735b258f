#pragma once

#include <array>
#include <set>
#include <string>
#include <utility>
#include <vector>

#include "ftnc/codes.hpp"

namespace ftnc {

/// Periodic D-dimensional hypercubic lattice of linear size L. One qubit per
/// edge; edge (v, d) points from vertex v in direction d (0-based directions).
struct TorusLattice {
  int D = 2;
  int L = 2;

  int num_vertices() const;
  int num_edges() const { return D * num_vertices(); }
  std::vector<int> coords(int vertex) const;
  int vertex_index(const std::vector<int>& coords) const;
  int neighbor(int vertex, int dir, int step) const;  // periodic shift
  int edge_index(int vertex, int dir) const { return dir * num_vertices() + vertex; }
  void validate() const;
};

/// k layers of the same toric code; one variable per (layer, edge).
struct LayeredSystem {
  TorusLattice lattice;
  int layers = 2;
  void validate() const;
};

/// Variable = (layer 1..k, edge index).
using PhaseVar = std::pair<int, int>;
using Monomial = std::vector<PhaseVar>;  // sorted, deduplicated

/// Multilinear F2 polynomial P; represents the diagonal unitary (-1)^P(x).
struct PhasePolynomial {
  std::set<Monomial> monomials;

  void toggle(Monomial m);  // mod-2 add a single monomial
  PhasePolynomial operator^(const PhasePolynomial& other) const;
  bool operator==(const PhasePolynomial&) const = default;
  bool empty() const { return monomials.empty(); }
  int max_degree() const;
};

/// Bit-flip support of an X-type operator, one edge subset per layer
/// (index layer-1).
struct XFlip {
  std::vector<std::vector<int>> edges_by_layer;
};

/// Vertex X-stars, face Z-plaquettes, coordinate-direction logical
/// strings/membranes (X-bar of direction d pairs with Z-bar of direction d).
StabilizerCode build_toric_layer(const TorusLattice& lattice);

/// Dir-d edges with v_d = offset: the X-membrane logical representative.
std::vector<int> x_membrane(const TorusLattice& lattice, int dir, int offset);
/// Dir-d edges with all transverse coordinates zero: the Z-string rep.
std::vector<int> z_string(const TorusLattice& lattice, int dir);

/// Two corner-to-corner paths per face; the path's first edge carries
/// layer_a's variable, its second layer_b's.
PhasePolynomial build_logical_CZ(const LayeredSystem& system, int layer_a, int layer_b);

/// D! monotone paths per D-cube; the path visiting directions (d1..dD)
/// assigns layers[i-1]'s variable to its i-th edge.
PhasePolynomial build_logical_CnZ(const LayeredSystem& system, const std::vector<int>& layers);

/// Delta P = P(x xor m) xor P(x), expanded symbolically.
PhasePolynomial conjugate_by_flip(const PhasePolynomial& p, const XFlip& flip);

enum class ResidualClass { Exact, StabilizerEquivalent, Fail };

struct ConjugationReport {
  PhasePolynomial residual;
  ResidualClass classification = ResidualClass::Fail;
  bool global_phase = false;  // residual carried a constant term
  std::string detail;
};

/// Exact if residual is empty; StabilizerEquivalent if every degree-1 part
/// lies in the F2 span of that layer's plaquette supports (constants become
/// a global phase) and nothing of degree >= 2 remains; Fail otherwise.
ConjugationReport classify_residual(const LayeredSystem& system, const PhasePolynomial& residual);

/// Conjugates the C^{D-1}Z polynomial on layers 1..D by the layer-D
/// X-membrane and compares against the C^{D-2}Z polynomial on layers
/// 1..D-1 over the fixed-coordinate sub-tessellation.
ConjugationReport verify_conjugation_identity(const LayeredSystem& system, int D);

struct CodespaceReport {
  bool preserved = false;
  std::vector<int> phases;  // +1/-1 per layered logical basis state
  bool inter_layer_nontrivial = false;
  std::string detail;
};

/// D=2, L=2 statevector check: applies (-1)^P to each of the 16 layered
/// logical basis states, verifies codespace preservation, extracts phases.
CodespaceReport statevector_codespace_check(const LayeredSystem& system,
                                            const PhasePolynomial& p);

/// One monomial per line, as sorted "layer:edge" tuples.
std::string serialize_polynomial(const PhasePolynomial& p);

}  // namespace ftnc

#include "ftnc/cupz.hpp"

#include <fmt/format.h>

#include <algorithm>
#include <stdexcept>

#include "ftnc/statevec.hpp"

namespace ftnc {

int TorusLattice::num_vertices() const {
  int n = 1;
  for (int i = 0; i < D; ++i) n *= L;
  return n;
}

std::vector<int> TorusLattice::coords(int vertex) const {
  std::vector<int> c(D);
  for (int i = 0; i < D; ++i) {
    c[i] = vertex % L;
    vertex /= L;
  }
  return c;
}

int TorusLattice::vertex_index(const std::vector<int>& c) const {
  int v = 0;
  for (int i = D - 1; i >= 0; --i) v = v * L + ((c[i] % L) + L) % L;
  return v;
}

int TorusLattice::neighbor(int vertex, int dir, int step) const {
  auto c = coords(vertex);
  c[dir] = ((c[dir] + step) % L + L) % L;
  return vertex_index(c);
}

void TorusLattice::validate() const {
  if (D < 2) throw std::invalid_argument("lattice dimension must be >= 2");
  if (L < 2) throw std::invalid_argument("lattice size must be >= 2");
}

void LayeredSystem::validate() const {
  lattice.validate();
  if (layers < 2) throw std::invalid_argument("need at least 2 layers");
}

void PhasePolynomial::toggle(Monomial m) {
  std::sort(m.begin(), m.end());
  m.erase(std::unique(m.begin(), m.end()), m.end());
  auto it = monomials.find(m);
  if (it == monomials.end()) {
    monomials.insert(std::move(m));
  } else {
    monomials.erase(it);
  }
}

PhasePolynomial PhasePolynomial::operator^(const PhasePolynomial& other) const {
  PhasePolynomial r = *this;
  for (const auto& m : other.monomials) r.toggle(m);
  return r;
}

int PhasePolynomial::max_degree() const {
  int d = 0;
  for (const auto& m : monomials) d = std::max<int>(d, m.size());
  return d;
}

StabilizerCode build_toric_layer(const TorusLattice& lat) {
  lat.validate();
  StabilizerCode code;
  const int nv = lat.num_vertices();
  code.n = lat.num_edges();

  // One X-star per vertex: the 2D incident edges.
  for (int v = 0; v < nv; ++v) {
    std::vector<uint8_t> row(code.n, 0);
    for (int d = 0; d < lat.D; ++d) {
      row[lat.edge_index(v, d)] ^= 1;
      row[lat.edge_index(lat.neighbor(v, d, -1), d)] ^= 1;
    }
    code.hx.push_back(std::move(row));
  }
  // One Z-plaquette per face (v, {d1 < d2}).
  for (int v = 0; v < nv; ++v) {
    for (int d1 = 0; d1 < lat.D; ++d1) {
      for (int d2 = d1 + 1; d2 < lat.D; ++d2) {
        std::vector<uint8_t> row(code.n, 0);
        row[lat.edge_index(v, d1)] ^= 1;
        row[lat.edge_index(lat.neighbor(v, d1, 1), d2)] ^= 1;
        row[lat.edge_index(lat.neighbor(v, d2, 1), d1)] ^= 1;
        row[lat.edge_index(v, d2)] ^= 1;
        code.hz.push_back(std::move(row));
      }
    }
  }
  for (int d = 0; d < lat.D; ++d) {
    std::vector<int> xq, zq;
    for (int e : x_membrane(lat, d, 0)) xq.push_back(e + 1);
    for (int e : z_string(lat, d)) zq.push_back(e + 1);
    code.logical_x.push_back(PauliOperator::x_on(code.n, xq));
    code.logical_z.push_back(PauliOperator::z_on(code.n, zq));
  }
  code.check_invariants();
  return code;
}

std::vector<int> x_membrane(const TorusLattice& lat, int dir, int offset) {
  std::vector<int> edges;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    if (lat.coords(v)[dir] == offset) edges.push_back(lat.edge_index(v, dir));
  }
  return edges;
}

std::vector<int> z_string(const TorusLattice& lat, int dir) {
  std::vector<int> edges;
  for (int v = 0; v < lat.num_vertices(); ++v) {
    auto c = lat.coords(v);
    bool on = true;
    for (int i = 0; i < lat.D; ++i) {
      if (i != dir && c[i] != 0) on = false;
    }
    if (on) edges.push_back(lat.edge_index(v, dir));
  }
  return edges;
}

namespace {

// C^{m-1}Z polynomial over the m-cubes spanned by `dirs` within the slice
// fixed by the caller's vertex set. For each cube and each ordering of the
// directions, layer i's variable rides the path's i-th edge.
PhasePolynomial cube_path_polynomial(const TorusLattice& lat, const std::vector<int>& base_vertices,
                                     std::vector<int> dirs, const std::vector<int>& layers) {
  PhasePolynomial p;
  std::sort(dirs.begin(), dirs.end());
  for (int v : base_vertices) {
    std::vector<int> perm = dirs;
    do {
      Monomial m;
      int cur = v;
      for (std::size_t i = 0; i < perm.size(); ++i) {
        m.emplace_back(layers[i], lat.edge_index(cur, perm[i]));
        cur = lat.neighbor(cur, perm[i], 1);
      }
      p.toggle(std::move(m));
    } while (std::next_permutation(perm.begin(), perm.end()));
  }
  return p;
}

std::vector<int> all_vertices(const TorusLattice& lat) {
  std::vector<int> v(lat.num_vertices());
  for (int i = 0; i < lat.num_vertices(); ++i) v[i] = i;
  return v;
}

}  // namespace

PhasePolynomial build_logical_CZ(const LayeredSystem& sys, int layer_a, int layer_b) {
  sys.validate();
  if (layer_a < 1 || layer_a > sys.layers || layer_b < 1 || layer_b > sys.layers ||
      layer_a == layer_b)
    throw std::invalid_argument("invalid layer pair");
  PhasePolynomial p;
  for (int d1 = 0; d1 < sys.lattice.D; ++d1) {
    for (int d2 = d1 + 1; d2 < sys.lattice.D; ++d2) {
      p = p ^ cube_path_polynomial(sys.lattice, all_vertices(sys.lattice), {d1, d2},
                                   {layer_a, layer_b});
    }
  }
  return p;
}

PhasePolynomial build_logical_CnZ(const LayeredSystem& sys, const std::vector<int>& layers) {
  sys.validate();
  if (static_cast<int>(layers.size()) != sys.lattice.D)
    throw std::invalid_argument("need one layer per lattice direction");
  for (int l : layers) {
    if (l < 1 || l > sys.layers) throw std::invalid_argument("layer index out of range");
  }
  std::vector<int> dirs(sys.lattice.D);
  for (int d = 0; d < sys.lattice.D; ++d) dirs[d] = d;
  return cube_path_polynomial(sys.lattice, all_vertices(sys.lattice), dirs, layers);
}

PhasePolynomial conjugate_by_flip(const PhasePolynomial& p, const XFlip& flip) {
  auto in_flip = [&](const PhaseVar& v) {
    const int li = v.first - 1;
    if (li < 0 || li >= static_cast<int>(flip.edges_by_layer.size())) return false;
    const auto& es = flip.edges_by_layer[li];
    return std::find(es.begin(), es.end(), v.second) != es.end();
  };
  PhasePolynomial delta;
  for (const auto& m : p.monomials) {
    std::vector<PhaseVar> hit, rest;
    for (const auto& v : m) (in_flip(v) ? hit : rest).push_back(v);
    // (x+m) expansion: every nonempty subset of the hit variables drops out.
    const std::size_t subsets = std::size_t{1} << hit.size();
    for (std::size_t mask = 1; mask < subsets; ++mask) {
      Monomial reduced = rest;
      for (std::size_t i = 0; i < hit.size(); ++i) {
        if (!(mask & (std::size_t{1} << i))) reduced.push_back(hit[i]);
      }
      delta.toggle(std::move(reduced));
    }
  }
  return delta;
}

ConjugationReport classify_residual(const LayeredSystem& sys, const PhasePolynomial& residual) {
  ConjugationReport rep;
  rep.residual = residual;
  if (residual.empty()) {
    rep.classification = ResidualClass::Exact;
    rep.detail = "residual is zero";
    return rep;
  }
  const StabilizerCode layer_code = build_toric_layer(sys.lattice);
  std::vector<std::vector<uint8_t>> linear(sys.layers,
                                           std::vector<uint8_t>(sys.lattice.num_edges(), 0));
  for (const auto& m : residual.monomials) {
    if (m.empty()) {
      rep.global_phase = true;
    } else if (m.size() == 1) {
      linear[m[0].first - 1][m[0].second] ^= 1;
    } else {
      rep.classification = ResidualClass::Fail;
      rep.detail = fmt::format("degree-{} monomial in residual", m.size());
      return rep;
    }
  }
  for (int l = 0; l < sys.layers; ++l) {
    bool any = false;
    for (uint8_t b : linear[l]) any |= (b != 0);
    if (any && !in_f2_span(layer_code.hz, linear[l])) {
      rep.classification = ResidualClass::Fail;
      rep.detail = fmt::format("layer-{} linear part outside the plaquette span", l + 1);
      return rep;
    }
  }
  rep.classification = ResidualClass::StabilizerEquivalent;
  rep.detail = "linear residual inside the plaquette span";
  return rep;
}

ConjugationReport verify_conjugation_identity(const LayeredSystem& sys, int D) {
  sys.validate();
  if (D != sys.lattice.D) throw std::invalid_argument("D must match the lattice dimension");
  if (sys.layers < D) throw std::invalid_argument("need at least D layers");

  std::vector<int> layers(D);
  for (int i = 0; i < D; ++i) layers[i] = i + 1;
  const PhasePolynomial p = build_logical_CnZ(sys, layers);

  XFlip flip;
  flip.edges_by_layer.assign(sys.layers, {});
  flip.edges_by_layer[D - 1] = x_membrane(sys.lattice, D - 1, 0);

  // Expected remainder: C^{D-2}Z on layers 1..D-1 over the cubes of the
  // sub-tessellation with the last coordinate fixed at the membrane offset.
  PhasePolynomial expected;
  if (D == 2) {
    for (int e : z_string(sys.lattice, 0)) expected.toggle({{1, e}});
  } else {
    std::vector<int> slice;
    for (int v = 0; v < sys.lattice.num_vertices(); ++v) {
      if (sys.lattice.coords(v)[D - 1] == 0) slice.push_back(v);
    }
    std::vector<int> dirs(D - 1);
    std::vector<int> sub_layers(D - 1);
    for (int i = 0; i < D - 1; ++i) {
      dirs[i] = i;
      sub_layers[i] = i + 1;
    }
    expected = cube_path_polynomial(sys.lattice, slice, dirs, sub_layers);
  }

  const PhasePolynomial residual = conjugate_by_flip(p, flip) ^ expected;
  return classify_residual(sys, residual);
}

CodespaceReport statevector_codespace_check(const LayeredSystem& sys, const PhasePolynomial& p) {
  sys.validate();
  CodespaceReport rep;
  const int ne = sys.lattice.num_edges();
  const int nq = sys.layers * ne;
  if (nq > 20) throw std::invalid_argument("qubit budget exceeded");

  const StabilizerCode code = build_toric_layer(sys.lattice);
  const int k = static_cast<int>(code.logical_x.size());

  // Star-span codewords of one layer.
  std::vector<std::vector<uint8_t>> span = {std::vector<uint8_t>(ne, 0)};
  for (const auto& row : code.hx) {
    std::vector<std::vector<uint8_t>> next = span;
    for (auto w : span) {
      for (int i = 0; i < ne; ++i) w[i] ^= row[i];
      next.push_back(w);
    }
    std::sort(next.begin(), next.end());
    next.erase(std::unique(next.begin(), next.end()), next.end());
    span = std::move(next);
  }

  auto layer_words = [&](int logical_bits) {
    std::vector<std::vector<uint8_t>> words = span;
    for (int j = 0; j < k; ++j) {
      if (!(logical_bits & (1 << j))) continue;
      for (auto& w : words) {
        for (int q : code.logical_x[j].x_support()) w[q - 1] ^= 1;
      }
    }
    return words;
  };

  std::vector<int> labels(nq);
  for (int i = 0; i < nq; ++i) labels[i] = i + 1;
  const int total_basis = 1 << (sys.layers * k);
  rep.preserved = true;

  std::vector<int> phase_table;
  for (int bits = 0; bits < total_basis; ++bits) {
    // Uniform superposition over the product coset for these logical bits.
    std::vector<cd> amps(std::size_t{1} << nq, cd(0, 0));
    std::vector<std::vector<std::vector<uint8_t>>> per_layer;
    for (int l = 0; l < sys.layers; ++l) {
      per_layer.push_back(layer_words((bits >> (l * k)) & ((1 << k) - 1)));
    }
    std::vector<std::size_t> idx(sys.layers, 0);
    for (;;) {
      std::size_t pos = 0;
      for (int l = 0; l < sys.layers; ++l) {
        for (int e = 0; e < ne; ++e) {
          // label l*ne+e+1 sits at bit nq-1-(l*ne+e) (addition order)
          if (per_layer[l][idx[l]][e]) pos |= std::size_t{1} << (nq - 1 - (l * ne + e));
        }
      }
      amps[pos] += 1.0;
      int l = sys.layers - 1;
      while (l >= 0 && ++idx[l] == per_layer[l].size()) idx[l--] = 0;
      if (l < 0) break;
    }
    StateVector sv = StateVector::from_amplitudes(labels, amps, nq);
    const std::vector<cd> before = sv.amplitudes();
    for (const auto& m : p.monomials) {
      if (m.empty()) continue;  // constant: global phase, irrelevant here
      std::vector<int> qs;
      for (const auto& v : m) qs.push_back((v.first - 1) * ne + v.second + 1);
      sv.apply_cmz(qs);
    }
    const auto& after = sv.amplitudes();
    int phase = 0;
    bool ok = true;
    for (std::size_t i = 0; i < after.size() && ok; ++i) {
      if (std::abs(before[i]) < 1e-12) {
        ok = std::abs(after[i]) < 1e-12;
        continue;
      }
      const double r = std::real(after[i] / before[i]);
      const int s = r > 0 ? 1 : -1;
      if (std::abs(r - s) > 1e-9) ok = false;
      if (phase == 0) {
        phase = s;
      } else if (phase != s) {
        ok = false;
      }
    }
    if (!ok) {
      rep.preserved = false;
      rep.detail = fmt::format("codespace not preserved on logical basis state {}", bits);
      return rep;
    }
    phase_table.push_back(phase);
  }
  rep.phases = phase_table;

  // Nontrivial inter-layer action: the phase table is not a product of
  // per-layer functions.
  const int per = 1 << k;
  if (sys.layers != 2) {
    rep.detail = "codespace preserved";
    return rep;
  }
  for (int a = 0; a < per && !rep.inter_layer_nontrivial; ++a) {
    for (int a2 = 0; a2 < per && !rep.inter_layer_nontrivial; ++a2) {
      for (int b = 0; b < per; ++b) {
        for (int b2 = 0; b2 < per; ++b2) {
          const int p00 = phase_table[(b << k) | a];
          const int p01 = phase_table[(b2 << k) | a];
          const int p10 = phase_table[(b << k) | a2];
          const int p11 = phase_table[(b2 << k) | a2];
          if (p00 * p01 * p10 * p11 == -1) {
            rep.inter_layer_nontrivial = true;
            break;
          }
        }
        if (rep.inter_layer_nontrivial) break;
      }
    }
  }
  rep.detail = "codespace preserved";
  return rep;
}

std::string serialize_polynomial(const PhasePolynomial& p) {
  std::string out;
  for (const auto& m : p.monomials) {
    std::string line;
    for (const auto& v : m) {
      if (!line.empty()) line += ' ';
      line += fmt::format("{}:{}", v.first, v.second);
    }
    if (line.empty()) line = "1";
    out += line + "\n";
  }
  return out;
}

}  // namespace ftnc

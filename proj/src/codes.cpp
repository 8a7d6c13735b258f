#include "ftnc/codes.hpp"

#include <fmt/format.h>

#include <sstream>
#include <stdexcept>

namespace ftnc {

namespace {

PauliOperator row_to_pauli(std::size_t n, const std::vector<uint8_t>& row, bool x_type) {
  std::vector<uint8_t> x(n, 0), z(n, 0);
  (x_type ? x : z) = row;
  return PauliOperator::from_bits(std::move(x), std::move(z));
}

BitMatrix parse_rows(const std::vector<std::string>& lines) {
  BitMatrix m;
  for (const auto& line : lines) {
    std::vector<uint8_t> row;
    row.reserve(line.size());
    for (char c : line) {
      if (c == '0' || c == '1') row.push_back(c == '1');
      else if (c != ' ') throw std::invalid_argument("check matrix rows must be 0/1");
    }
    m.push_back(std::move(row));
  }
  return m;
}

}  // namespace

PauliOperator StabilizerCode::x_stabilizer(std::size_t row) const {
  return row_to_pauli(n, hx.at(row), true);
}

PauliOperator StabilizerCode::z_stabilizer(std::size_t row) const {
  return row_to_pauli(n, hz.at(row), false);
}

void StabilizerCode::check_invariants() const {
  for (const auto& rx : hx) {
    if (rx.size() != n) throw std::runtime_error("hx row length != n");
    for (const auto& rz : hz) {
      int overlap = 0;
      for (std::size_t i = 0; i < n; ++i) overlap ^= rx[i] & rz[i];
      if (overlap) throw std::runtime_error("hx/hz rows with odd overlap (CSS commutation)");
    }
  }
  for (const auto& rz : hz) {
    if (rz.size() != n) throw std::runtime_error("hz row length != n");
  }
  if (logical_x.size() != logical_z.size())
    throw std::runtime_error("unpaired logical representatives");
  for (std::size_t k = 0; k < logical_x.size(); ++k) {
    for (std::size_t i = 0; i < hx.size(); ++i) {
      if (!logical_z[k].commutes_with(x_stabilizer(i)))
        throw std::runtime_error("logical Z anticommutes with an X stabilizer");
      if (!logical_x[k].commutes_with(x_stabilizer(i)))
        throw std::runtime_error("logical X anticommutes with an X stabilizer");
    }
    for (std::size_t i = 0; i < hz.size(); ++i) {
      if (!logical_x[k].commutes_with(z_stabilizer(i)))
        throw std::runtime_error("logical X anticommutes with a Z stabilizer");
      if (!logical_z[k].commutes_with(z_stabilizer(i)))
        throw std::runtime_error("logical Z anticommutes with a Z stabilizer");
    }
    for (std::size_t j = 0; j < logical_x.size(); ++j) {
      bool expect_commute = (j != k);
      if (logical_x[k].commutes_with(logical_z[j]) != expect_commute)
        throw std::runtime_error("logical X/Z pairing violated");
    }
  }
}

const StabilizerCode& qrm15() {
  static const StabilizerCode code = [] {
    StabilizerCode c;
    c.n = 15;
    c.hx = parse_rows({
        "101010101010101",
        "011001100110011",
        "000111100001111",
        "000000011111111",
    });
    c.hz = parse_rows({
        "101010101010101",
        "011001100110011",
        "000111100001111",
        "000000011111111",
        "001000100010001",
        "000010100000101",
        "000000001010101",
        "000001100000011",
        "000000000110011",
        "000000000001111",
    });
    c.logical_x = {PauliOperator::x_on(15, {1, 2, 3, 12, 13, 14, 15})};
    c.logical_z = {PauliOperator::z_on(15, {1, 5, 7, 8, 11})};
    c.check_invariants();
    return c;
  }();
  return code;
}

const StabilizerCode& steane7() {
  static const StabilizerCode code = [] {
    StabilizerCode c;
    c.n = 7;
    c.hx = parse_rows({
        "1010101",
        "0110011",
        "0001111",
    });
    c.hz = c.hx;
    c.logical_x = {PauliOperator::x_on(7, {1, 2, 3, 4, 5, 6, 7})};
    c.logical_z = {PauliOperator::z_on(7, {1, 2, 3, 4, 5, 6, 7})};
    c.check_invariants();
    return c;
  }();
  return code;
}

std::pair<std::vector<uint8_t>, std::vector<uint8_t>> syndrome(const StabilizerCode& code,
                                                               const PauliOperator& error) {
  if (error.num_qubits() != code.n) throw std::invalid_argument("error/code size mismatch");
  std::vector<uint8_t> sx(code.hx.size(), 0), sz(code.hz.size(), 0);
  for (std::size_t i = 0; i < code.hx.size(); ++i) {
    sx[i] = error.commutes_with(code.x_stabilizer(i)) ? 0 : 1;
  }
  for (std::size_t i = 0; i < code.hz.size(); ++i) {
    sz[i] = error.commutes_with(code.z_stabilizer(i)) ? 0 : 1;
  }
  return {sx, sz};
}

bool in_f2_span(const BitMatrix& rows, const std::vector<uint8_t>& v) {
  // Incremental elimination of v against a row-echelon basis of `rows`.
  BitMatrix basis;
  for (auto row : rows) {
    for (const auto& b : basis) {
      std::size_t pivot = 0;
      while (pivot < b.size() && !b[pivot]) ++pivot;
      if (pivot < b.size() && row[pivot]) {
        for (std::size_t i = 0; i < row.size(); ++i) row[i] ^= b[i];
      }
    }
    bool nonzero = false;
    for (auto bit : row) nonzero |= (bit != 0);
    if (nonzero) basis.push_back(std::move(row));
  }
  std::vector<uint8_t> r = v;
  for (const auto& b : basis) {
    std::size_t pivot = 0;
    while (pivot < b.size() && !b[pivot]) ++pivot;
    if (pivot < b.size() && r[pivot]) {
      for (std::size_t i = 0; i < r.size(); ++i) r[i] ^= b[i];
    }
  }
  for (auto bit : r) {
    if (bit) return false;
  }
  return true;
}

bool in_stabilizer_group(const StabilizerCode& code, const PauliOperator& p) {
  // Symplectic (x|z) vectors; X rows contribute (row|0), Z rows (0|row).
  BitMatrix gens;
  for (const auto& row : code.hx) {
    std::vector<uint8_t> v(2 * code.n, 0);
    for (std::size_t i = 0; i < code.n; ++i) v[i] = row[i];
    gens.push_back(std::move(v));
  }
  for (const auto& row : code.hz) {
    std::vector<uint8_t> v(2 * code.n, 0);
    for (std::size_t i = 0; i < code.n; ++i) v[code.n + i] = row[i];
    gens.push_back(std::move(v));
  }
  std::vector<uint8_t> v(2 * code.n, 0);
  for (std::size_t i = 0; i < code.n; ++i) {
    v[i] = p.x_bits()[i];
    v[code.n + i] = p.z_bits()[i];
  }
  return in_f2_span(gens, v);
}

namespace {

bool commutes_with_all(const StabilizerCode& code, const PauliOperator& p) {
  for (std::size_t i = 0; i < code.hx.size(); ++i) {
    if (!p.commutes_with(code.x_stabilizer(i))) return false;
  }
  for (std::size_t i = 0; i < code.hz.size(); ++i) {
    if (!p.commutes_with(code.z_stabilizer(i))) return false;
  }
  return true;
}

}  // namespace

bool min_weight_logical_at_most(const StabilizerCode& code, int w, std::size_t cap) {
  const int n = static_cast<int>(code.n);
  // Count candidates: sum over supports of size 1..w times 3^size.
  double count = 0;
  double binom = 1;
  double pow3 = 1;
  for (int k = 1; k <= w; ++k) {
    binom = binom * (n - k + 1) / k;
    pow3 *= 3;
    count += binom * pow3;
  }
  if (count > static_cast<double>(cap)) throw std::invalid_argument("enumeration bound exceeded");

  // Iterate supports of exactly k qubits, all 3^k letter assignments.
  for (int k = 1; k <= w; ++k) {
    std::vector<int> idx(k);
    for (int i = 0; i < k; ++i) idx[i] = i;
    while (true) {
      std::vector<int> letters(k, 0);
      while (true) {
        PauliOperator p(code.n);
        for (int i = 0; i < k; ++i) {
          int q = idx[i] + 1;
          if (letters[i] == 0 || letters[i] == 2) p.set_x(q, true);
          if (letters[i] == 1 || letters[i] == 2) p.set_z(q, true);
        }
        if (commutes_with_all(code, p) && !in_stabilizer_group(code, p)) return true;
        int pos = k - 1;
        while (pos >= 0 && letters[pos] == 2) {
          letters[pos] = 0;
          --pos;
        }
        if (pos < 0) break;
        ++letters[pos];
      }
      int pos = k - 1;
      while (pos >= 0 && idx[pos] == n - k + pos) --pos;
      if (pos < 0) break;
      ++idx[pos];
      for (int i = pos + 1; i < k; ++i) idx[i] = idx[i - 1] + 1;
    }
  }
  return false;
}

std::string export_check_matrices(const StabilizerCode& code) {
  std::string out = "HX\n";
  for (const auto& row : code.hx) {
    for (auto b : row) out += (b ? '1' : '0');
    out += '\n';
  }
  out += "HZ\n";
  for (const auto& row : code.hz) {
    for (auto b : row) out += (b ? '1' : '0');
    out += '\n';
  }
  return out;
}

StabilizerCode load_check_matrices(const std::string& text) {
  std::istringstream in(text);
  std::string line;
  std::vector<std::string> hx_lines, hz_lines;
  std::vector<std::string>* current = nullptr;
  while (std::getline(in, line)) {
    if (!line.empty() && line.back() == '\r') line.pop_back();
    if (line.empty()) continue;
    if (line == "HX") {
      current = &hx_lines;
    } else if (line == "HZ") {
      current = &hz_lines;
    } else {
      if (!current) throw std::invalid_argument("row before HX/HZ section header");
      current->push_back(line);
    }
  }
  StabilizerCode code;
  code.hx = parse_rows(hx_lines);
  code.hz = parse_rows(hz_lines);
  if (code.hx.empty() && code.hz.empty()) throw std::invalid_argument("empty check matrix text");
  code.n = code.hx.empty() ? code.hz[0].size() : code.hx[0].size();
  for (const auto& row : code.hx) {
    if (row.size() != code.n) throw std::invalid_argument("ragged HX rows");
  }
  for (const auto& row : code.hz) {
    if (row.size() != code.n) throw std::invalid_argument("ragged HZ rows");
  }
  return code;
}

}  // namespace ftnc

#pragma once

#include <string>
#include <utility>
#include <vector>

#include "ftnc/pauli.hpp"

namespace ftnc {

using BitMatrix = std::vector<std::vector<uint8_t>>;

/// CSS stabilizer code: X/Z check matrices plus logical representatives.
struct StabilizerCode {
  std::size_t n = 0;
  BitMatrix hx;  // rows are X stabilizers
  BitMatrix hz;  // rows are Z stabilizers
  std::vector<PauliOperator> logical_x;
  std::vector<PauliOperator> logical_z;

  PauliOperator x_stabilizer(std::size_t row) const;
  PauliOperator z_stabilizer(std::size_t row) const;

  /// Throws if CSS commutation or logical pairing invariants fail.
  void check_invariants() const;
};

/// The 15-qubit distance-3 quantum Reed-Muller code (punctured RM(1,4) CSS).
const StabilizerCode& qrm15();

/// The 7-qubit Steane code (Hamming [7,4] CSS), weight-7 logical reps.
const StabilizerCode& steane7();

/// b_i = 1 iff the error anticommutes with stabilizer row i.
/// Returns (x_syndrome from hx rows, z_syndrome from hz rows).
std::pair<std::vector<uint8_t>, std::vector<uint8_t>> syndrome(const StabilizerCode& code,
                                                               const PauliOperator& error);

/// True iff the symplectic vector of p lies in the group generated by the
/// code's stabilizer rows (sign ignored). Decided by F2 elimination.
bool in_stabilizer_group(const StabilizerCode& code, const PauliOperator& p);

/// True iff some Pauli of weight <= w commutes with all stabilizers but is
/// not in the stabilizer group. Exhaustive; throws when the enumeration
/// would exceed `cap` candidates (default suits n=15, w<=3).
bool min_weight_logical_at_most(const StabilizerCode& code, int w, std::size_t cap = 50'000'000);

/// Plain-text check-matrix format: "HX" header, one 0/1 row per line, then
/// "HZ" and its rows. Loaded codes carry no logical representatives.
std::string export_check_matrices(const StabilizerCode& code);
StabilizerCode load_check_matrices(const std::string& text);

/// F2 row space helper: can `v` be written as a combination of `rows`?
bool in_f2_span(const BitMatrix& rows, const std::vector<uint8_t>& v);

}  // namespace ftnc

#pragma once

#include <string>
#include <vector>

#include "ftnc/codes.hpp"
#include "ftnc/statevec.hpp"

namespace ftnc {

struct CheckReport {
  std::string name;
  bool pass = false;
  std::string detail;
};

bool all_pass(const std::vector<CheckReport>& checks);

/// Uniform superposition over the X-stabilizer coset selected by
/// `logical_bits` (bit j toggles logical_x[j]); labels are 1..n.
StateVector logical_basis_state(const StabilizerCode& code, unsigned logical_bits);

/// <a|b> for two states over the same label set.
cd state_overlap(const StateVector& a, const StateVector& b);

std::vector<CheckReport> verify_qrm();
std::vector<CheckReport> verify_encoder();
std::vector<CheckReport> verify_gadget();
std::vector<CheckReport> verify_oracle();
std::vector<CheckReport> verify_transversal_claims();
std::vector<CheckReport> verify_concat();
std::vector<CheckReport> verify_cupz(int D);

}  // namespace ftnc

#pragma once

#include <string>
#include <variant>
#include <vector>

namespace ftnc {

/// 7x15 physical layout of the concatenated block (Steane rows x QRM columns).
struct ConcatLayout {
  int rows = 7;
  int cols = 15;
  double atom_pitch_um = 10.0;
  double handoff_offset_um = 2.0;
  void validate() const;
};

struct CostModel {
  double move_speed_um_per_us = 0.5;  // 0.5 m/s
  double cz_pulse_us = 0.2;           // 200 ns
  double transfer_us = 150.0;         // valid range 100..200 (0 allowed as explicit override)
  double accel_overhead_us = 0.0;
  void validate() const;
};

struct MotionGroup {
  enum Kind { Row, Column } kind = Row;
  int index = 0;
  bool operator==(const MotionGroup&) const = default;
};

/// Hand a group of atoms between the static and mobile tweezer systems.
struct TransferStep {
  MotionGroup group;
  bool to_mobile = true;  // true: static->mobile ("OUT"), false: back ("IN")
};

/// Move a mobile group between grid positions (fractional positions allowed;
/// distance = |to - from| * atom_pitch).
struct MoveStep {
  MotionGroup group;
  double from_pos = 0;
  double to_pos = 0;
};

struct PulseStep {
  enum Kind { CZ, Local1Q } kind = CZ;
};

using MotionStep = std::variant<TransferStep, MoveStep, PulseStep>;

struct MotionPlan {
  std::vector<MotionStep> steps;
};

struct GateSchedule {
  std::string gate;
  int entangling_cycles = 0;
};

/// Itemized plan cost. total() deliberately excludes the (sub-µs) pulse
/// time: the motion/transfer sum is the quantity the timing estimates quote.
struct CostBreakdown {
  double move_us = 0;
  double transfer_us = 0;
  double pulse_us = 0;
  double accel_us = 0;
  double total() const { return move_us + transfer_us + accel_us; }
  double total_with_pulses() const { return total() + pulse_us; }
};

/// Checks per-group step consistency: moves only while the group is held by
/// the mobile system, transfers alternate out/in, every group ends returned.
/// Throws std::invalid_argument on violation.
void validate_plan(const MotionPlan& plan);

CostBreakdown cost_breakdown(const MotionPlan& plan, const ConcatLayout& layout,
                             const CostModel& model);
double cost(const MotionPlan& plan, const ConcatLayout& layout, const CostModel& model);

GateSchedule schedule_for(const std::string& gate);

/// Row-motion plan for the inner-code logical T: R7(7->6), R6(6->1),
/// R6(1->6), R7(6->7) with four transfers and four entangling pulses.
MotionPlan plan_logical_T(const ConcatLayout& layout, const CostModel& model);

/// 8-cycle plan for the inner-code logical H. The worst-case template prices
/// each cycle as transfer-out + 170 us round-trip move + transfer-in.
MotionPlan plan_logical_H(const ConcatLayout& layout, const CostModel& model, bool worst_case);

/// Bring group a adjacent to group b (same kind), pulse, return.
MotionPlan plan_transversal_pair(const ConcatLayout& layout, const CostModel& model,
                                 MotionGroup::Kind kind, int a, int b);

/// One step per line, e.g. "MOVE ROW 6 FROM 6 TO 1", "XFER ROW 6 OUT",
/// "PULSE CZ".
std::string serialize_plan(const MotionPlan& plan);

}  // namespace ftnc

#include "ftnc/concat.hpp"

#include <fmt/format.h>

#include <cmath>
#include <map>
#include <stdexcept>

namespace ftnc {

void ConcatLayout::validate() const {
  if (rows < 1 || cols < 1) throw std::invalid_argument("layout dimensions must be positive");
  if (atom_pitch_um <= 0) throw std::invalid_argument("atom pitch must be positive");
  if (handoff_offset_um < 0 || handoff_offset_um >= atom_pitch_um)
    throw std::invalid_argument("handoff offset must be in [0, pitch)");
}

void CostModel::validate() const {
  if (move_speed_um_per_us <= 0) throw std::invalid_argument("move speed must be positive");
  if (cz_pulse_us <= 0) throw std::invalid_argument("pulse duration must be positive");
  if (accel_overhead_us < 0) throw std::invalid_argument("acceleration overhead must be >= 0");
  // 0 is the explicit moving-only override; otherwise the documented range.
  if (transfer_us != 0 && (transfer_us < 100 || transfer_us > 200))
    throw std::invalid_argument("transfer time outside 100-200 us");
}

namespace {

std::string group_str(const MotionGroup& g) {
  return fmt::format("{} {}", g.kind == MotionGroup::Row ? "ROW" : "COL", g.index);
}

}  // namespace

void validate_plan(const MotionPlan& plan) {
  std::map<std::pair<int, int>, bool> mobile;  // (kind, index) -> currently mobile
  auto key = [](const MotionGroup& g) { return std::make_pair(static_cast<int>(g.kind), g.index); };
  for (const auto& step : plan.steps) {
    if (const auto* t = std::get_if<TransferStep>(&step)) {
      bool& m = mobile[key(t->group)];
      if (m == t->to_mobile)
        throw std::invalid_argument(fmt::format("redundant transfer of {}", group_str(t->group)));
      m = t->to_mobile;
    } else if (const auto* mv = std::get_if<MoveStep>(&step)) {
      auto it = mobile.find(key(mv->group));
      if (it == mobile.end() || !it->second)
        throw std::invalid_argument(
            fmt::format("move of {} while not mobile", group_str(mv->group)));
    }
  }
  for (const auto& [k, m] : mobile) {
    if (m)
      throw std::invalid_argument(
          fmt::format("group ({},{}) not returned to static traps", k.first, k.second));
  }
}

CostBreakdown cost_breakdown(const MotionPlan& plan, const ConcatLayout& layout,
                             const CostModel& model) {
  layout.validate();
  model.validate();
  validate_plan(plan);
  CostBreakdown b;
  for (const auto& step : plan.steps) {
    if (std::get_if<TransferStep>(&step)) {
      b.transfer_us += model.transfer_us;
    } else if (const auto* mv = std::get_if<MoveStep>(&step)) {
      b.move_us += std::abs(mv->to_pos - mv->from_pos) * layout.atom_pitch_um /
                   model.move_speed_um_per_us;
      b.accel_us += model.accel_overhead_us;
    } else {
      b.pulse_us += model.cz_pulse_us;
    }
  }
  return b;
}

double cost(const MotionPlan& plan, const ConcatLayout& layout, const CostModel& model) {
  return cost_breakdown(plan, layout, model).total();
}

GateSchedule schedule_for(const std::string& gate) {
  if (gate == "T") return {"T", 4};
  if (gate == "H") return {"H", 8};
  throw std::invalid_argument(fmt::format("no schedule for gate '{}'", gate));
}

MotionPlan plan_logical_T(const ConcatLayout& layout, const CostModel& model) {
  layout.validate();
  model.validate();
  const MotionGroup r7{MotionGroup::Row, 7};
  const MotionGroup r6{MotionGroup::Row, 6};
  MotionPlan p;
  p.steps = {
      TransferStep{r7, true},  MoveStep{r7, 7, 6}, PulseStep{PulseStep::CZ},
      TransferStep{r6, true},  MoveStep{r6, 6, 1}, PulseStep{PulseStep::CZ},
      MoveStep{r6, 1, 6},      PulseStep{PulseStep::CZ},
      TransferStep{r6, false}, MoveStep{r7, 6, 7}, PulseStep{PulseStep::CZ},
      TransferStep{r7, false},
  };
  validate_plan(p);
  return p;
}

MotionPlan plan_logical_H(const ConcatLayout& layout, const CostModel& model, bool worst_case) {
  layout.validate();
  model.validate();
  // Round-trip distance per cycle: worst case is fixed by the documented
  // 170 us per-cycle move budget; otherwise a single-pitch shuttle.
  const double half_us = worst_case ? 85.0 : layout.atom_pitch_um / model.move_speed_um_per_us;
  const double span = half_us * model.move_speed_um_per_us / layout.atom_pitch_um;
  MotionPlan p;
  const int cycles = schedule_for("H").entangling_cycles;
  for (int c = 1; c <= cycles; ++c) {
    const MotionGroup g{MotionGroup::Column, c};
    p.steps.push_back(TransferStep{g, true});
    p.steps.push_back(MoveStep{g, static_cast<double>(c), c + span});
    p.steps.push_back(PulseStep{PulseStep::CZ});
    p.steps.push_back(MoveStep{g, c + span, static_cast<double>(c)});
    p.steps.push_back(TransferStep{g, false});
  }
  validate_plan(p);
  return p;
}

MotionPlan plan_transversal_pair(const ConcatLayout& layout, const CostModel& model,
                                 MotionGroup::Kind kind, int a, int b) {
  layout.validate();
  model.validate();
  const int limit = kind == MotionGroup::Row ? layout.rows : layout.cols;
  if (a < 1 || a > limit || b < 1 || b > limit)
    throw std::out_of_range("group index out of range");
  if (a == b) throw std::invalid_argument("cannot pair a group with itself");
  const MotionGroup g{kind, a};
  // The sub-pitch handoff offset is below the pricing resolution; the move is
  // priced over the full |a-b| pitch span.
  MotionPlan p;
  p.steps = {
      TransferStep{g, true},
      MoveStep{g, static_cast<double>(a), static_cast<double>(b)},
      PulseStep{PulseStep::Local1Q},
      PulseStep{PulseStep::CZ},
      PulseStep{PulseStep::Local1Q},
      MoveStep{g, static_cast<double>(b), static_cast<double>(a)},
      TransferStep{g, false},
  };
  validate_plan(p);
  return p;
}

std::string serialize_plan(const MotionPlan& plan) {
  std::string out;
  for (const auto& step : plan.steps) {
    if (const auto* t = std::get_if<TransferStep>(&step)) {
      out += fmt::format("XFER {} {}\n", group_str(t->group), t->to_mobile ? "OUT" : "IN");
    } else if (const auto* mv = std::get_if<MoveStep>(&step)) {
      out += fmt::format("MOVE {} FROM {:g} TO {:g}\n", group_str(mv->group), mv->from_pos,
                         mv->to_pos);
    } else if (const auto* pl = std::get_if<PulseStep>(&step)) {
      out += fmt::format("PULSE {}\n", pl->kind == PulseStep::CZ ? "CZ" : "1Q");
    }
  }
  return out;
}

}  // namespace ftnc

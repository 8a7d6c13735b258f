#include "doctest.h"
#include "ftnc/concat.hpp"
#include "ftnc/verify.hpp"

using namespace ftnc;

namespace {

const ConcatLayout kLayout{};
const CostModel kModel{};

}  // namespace

TEST_CASE("parameter validation") {
  CHECK_NOTHROW(kLayout.validate());
  CHECK_NOTHROW(kModel.validate());
  CHECK_NOTHROW(CostModel{0.5, 0.2, 0.0, 0.0}.validate());    // moving-only override
  CHECK_THROWS(CostModel{0.5, 0.2, 50.0, 0.0}.validate());    // below documented range
  CHECK_THROWS(CostModel{0.5, 0.2, 250.0, 0.0}.validate());   // above documented range
  CHECK_THROWS(CostModel{-1.0, 0.2, 150.0, 0.0}.validate());  // bad speed
  CHECK_THROWS(ConcatLayout{7, 15, 10.0, 12.0}.validate());   // offset >= pitch
}

TEST_CASE("logical T plan: structure, golden serialization, cost") {
  const auto plan = plan_logical_T(kLayout, kModel);
  CHECK_NOTHROW(validate_plan(plan));
  CHECK(serialize_plan(plan) ==
        "XFER ROW 7 OUT\n"
        "MOVE ROW 7 FROM 7 TO 6\n"
        "PULSE CZ\n"
        "XFER ROW 6 OUT\n"
        "MOVE ROW 6 FROM 6 TO 1\n"
        "PULSE CZ\n"
        "MOVE ROW 6 FROM 1 TO 6\n"
        "PULSE CZ\n"
        "XFER ROW 6 IN\n"
        "MOVE ROW 7 FROM 6 TO 7\n"
        "PULSE CZ\n"
        "XFER ROW 7 IN\n");
  const auto b = cost_breakdown(plan, kLayout, kModel);
  CHECK(b.move_us == doctest::Approx(240.0));
  CHECK(b.transfer_us == doctest::Approx(600.0));
  CHECK(b.pulse_us == doctest::Approx(0.8));
  CHECK(b.total() == doctest::Approx(840.0));
  CHECK(b.total_with_pulses() == doctest::Approx(840.8));
  // moving-only override: transfers become free
  CHECK(cost(plan, kLayout, CostModel{0.5, 0.2, 0.0, 0.0}) == doctest::Approx(240.0));
  // cost is affine in the transfer time with slope 4
  const double c100 = cost(plan, kLayout, CostModel{0.5, 0.2, 100.0, 0.0});
  const double c200 = cost(plan, kLayout, CostModel{0.5, 0.2, 200.0, 0.0});
  CHECK(c200 - c100 == doctest::Approx(400.0));
}

TEST_CASE("logical H plan cost") {
  CHECK(schedule_for("H").entangling_cycles == 8);
  CHECK(schedule_for("T").entangling_cycles == 4);
  CHECK_THROWS(schedule_for("CZ"));
  const auto worst = plan_logical_H(kLayout, kModel, true);
  const auto b = cost_breakdown(worst, kLayout, kModel);
  CHECK(b.move_us == doctest::Approx(8 * 170.0));
  CHECK(b.transfer_us == doctest::Approx(16 * 150.0));
  CHECK(b.total() == doctest::Approx(3760.0));
  const auto best = plan_logical_H(kLayout, kModel, false);
  CHECK(cost(best, kLayout, kModel) < cost(worst, kLayout, kModel));
}

TEST_CASE("transversal pair plan") {
  const auto plan = plan_transversal_pair(kLayout, kModel, MotionGroup::Column, 5, 9);
  const auto b = cost_breakdown(plan, kLayout, kModel);
  CHECK(b.move_us == doctest::Approx(160.0));  // 2 * 4 pitches at 20 us each
  CHECK(b.transfer_us == doctest::Approx(300.0));
  CHECK_THROWS(plan_transversal_pair(kLayout, kModel, MotionGroup::Row, 3, 3));
  CHECK_THROWS(plan_transversal_pair(kLayout, kModel, MotionGroup::Row, 1, 9));   // rows go to 7
  CHECK_THROWS(plan_transversal_pair(kLayout, kModel, MotionGroup::Column, 0, 4));
}

TEST_CASE("plan validator rejects inconsistent step sequences") {
  const MotionGroup g{MotionGroup::Row, 2};
  {
    MotionPlan p;  // move while static
    p.steps = {MoveStep{g, 2, 3}};
    CHECK_THROWS(validate_plan(p));
  }
  {
    MotionPlan p;  // double pick-up of the same group
    p.steps = {TransferStep{g, true}, TransferStep{g, true}};
    CHECK_THROWS(validate_plan(p));
  }
  {
    MotionPlan p;  // never returned
    p.steps = {TransferStep{g, true}, MoveStep{g, 2, 3}};
    CHECK_THROWS(validate_plan(p));
  }
  {
    MotionPlan p;  // independent groups may be held simultaneously
    const MotionGroup h{MotionGroup::Row, 5};
    p.steps = {TransferStep{g, true},  TransferStep{h, true}, MoveStep{g, 2, 3},
               MoveStep{h, 5, 4},      TransferStep{h, false}, MoveStep{g, 3, 2},
               TransferStep{g, false}};
    CHECK_NOTHROW(validate_plan(p));
  }
}

TEST_CASE("concatenation verification suite passes") {
  CHECK(all_pass(verify_concat()));
}

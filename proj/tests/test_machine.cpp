#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "coniq/machine.hpp"
#include "doctest.h"

using namespace coniq;

namespace {

Schedule sched(std::vector<std::vector<Instruction>> layers) {
  Schedule s;
  s.level = 0;
  s.layers = std::move(layers);
  return s;
}

}  // namespace

TEST_CASE("from_placement and basic queries") {
  MachineState st = MachineState::from_placement({{7, {0, 0}}, {8, {2, 1}}});
  CHECK(st.atom_count() == 2);
  CHECK(st.aod_empty());
  CHECK(st.S.at({0, 0}) == 7);
  CHECK(st.S.at({2, 1}) == 8);
  CHECK_THROWS_AS(MachineState::from_placement({{1, {0.5, 0}}}),
                  std::invalid_argument);
  CHECK_THROWS_AS(MachineState::from_placement({{1, {0, 0}}, {2, {0, 0}}}),
                  std::invalid_argument);
}

TEST_CASE("pick, move, drop relocates an atom") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}, {2, {1, 0}}});
  Schedule s = sched({
      {Instruction::move({0}, {0})},
      {Instruction::transfer(true, {0}, {0})},
      {Instruction::move({3}, {0})},
      {Instruction::transfer(false, {3}, {0})},
  });
  EventTrace tr = execute(st, s);
  CHECK(st.aod_empty());
  auto place = st.placement();
  CHECK(place.at(1) == GridPoint{3, 0});
  CHECK(place.at(2) == GridPoint{1, 0});
  // Transfer events recorded; empty-AOD move between them not recorded.
  REQUIRE(tr.events.size() == 3);
  CHECK(tr.events[0].kind == EventKind::Transfer);
  CHECK(tr.events[1].kind == EventKind::Move);
  CHECK(tr.events[1].atoms == std::vector<int>{1});
  CHECK(tr.events[2].kind == EventKind::Transfer);
}

TEST_CASE("transfer skips cells without the required configuration") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}});
  // Trap grid covers (0,0) and (5,0); only (0,0) holds an SLM atom.
  apply_move(st, {0, 5}, {0});
  auto moved = apply_transfer(st, true, {0, 5}, {0});
  CHECK(moved == std::vector<int>{1});
  CHECK(st.A.size() == 1);
  // Dropping onto an occupied cell is skipped.
  MachineState st2 = MachineState::from_placement({{1, {0, 0}}, {2, {1, 0}}});
  apply_move(st2, {0}, {0});
  apply_transfer(st2, true, {0}, {0});
  apply_move(st2, {1}, {0});
  auto dropped = apply_transfer(st2, false, {1}, {0});
  CHECK(dropped.empty());
  CHECK(st2.A.size() == 1);
}

TEST_CASE("move ordering violations") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}});
  Schedule s = sched({{Instruction::move({1, 0}, {0})}});
  try {
    execute(st, s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violation.kind == "OrderViolation");
    CHECK(e.cycle == 0);
  }
  Schedule s2 = sched({{Instruction::move({0}, {2, 2})}});
  MachineState st2 = MachineState::from_placement({{1, {0, 0}}});
  CHECK_THROWS_AS(execute(st2, s2), ValidationError);
}

TEST_CASE("move may resize the AOD grid only when it is empty") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}});
  apply_move(st, {0}, {0});
  apply_move(st, {0, 1}, {0, 2});  // empty: resize fine
  apply_move(st, {0}, {0});
  apply_transfer(st, true, {0}, {0});
  CHECK(validate_move(st, {0, 1}, {0}).has_value());
  CHECK(validate_move(st, {4}, {9}) == std::nullopt);
  try {
    apply_move(st, {0, 1}, {0});
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violation.kind == "SizeMismatch");
  }
}

TEST_CASE("cz pairs AOD traps with SLM atoms at shared cells") {
  MachineState st =
      MachineState::from_placement({{1, {0, 0}}, {2, {1, 0}}, {3, {2, 0}}});
  Schedule s = sched({
      {Instruction::move({0}, {0})},
      {Instruction::transfer(true, {0}, {0})},
      {Instruction::move({1}, {0})},
      {Instruction::gadget2("cz", {1}, {0})},
      {Instruction::move({0}, {0})},
      {Instruction::transfer(false, {0}, {0})},
  });
  EventTrace tr = execute(st, s);
  bool saw_cz = false;
  for (const auto& ev : tr.events)
    if (ev.kind == EventKind::CZ) {
      saw_cz = true;
      REQUIRE(ev.pairs.size() == 1);
      CHECK(ev.pairs[0] == std::pair<int, int>{1, 2});
    }
  CHECK(saw_cz);
  // A hovering (non-integer) column produces no pairs.
  MachineState st2 = MachineState::from_placement({{1, {0, 0}}, {2, {1, 0}}});
  apply_move(st2, {0}, {0});
  apply_transfer(st2, true, {0}, {0});
  apply_move(st2, {0.5}, {0});
  CHECK(apply_cz(st2, {0.5}, {0}).empty());
}

TEST_CASE("gate1, measure, reset events carry atoms and positions") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}, {2, {1, 0}}});
  Schedule s = sched({
      {Instruction::gadget1("h", {0, 1}, {0})},
      {Instruction::gadget1("measure_z", {0}, {0})},
      {Instruction::gadget1("reset", {1}, {0})},
  });
  EventTrace tr = execute(st, s);
  REQUIRE(tr.events.size() == 3);
  CHECK(tr.events[0].kind == EventKind::Gate1);
  CHECK(tr.events[0].gate == "h");
  CHECK(tr.events[0].atoms == std::vector<int>{1, 2});
  CHECK(tr.events[1].kind == EventKind::Measure);
  CHECK(tr.events[1].atoms == std::vector<int>{1});
  CHECK(tr.events[1].positions[0] == GridPoint{0, 0});
  CHECK(tr.events[2].kind == EventKind::Reset);
  CHECK(tr.events[2].atoms == std::vector<int>{2});
}

TEST_CASE("unknown primitives are selector errors with the right cycle") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}});
  Schedule s = sched({
      {Instruction::gadget1("h", {0}, {0})},
      {Instruction::gadget1("frobnicate", {0}, {0})},
  });
  try {
    execute(st, s);
    FAIL("expected ValidationError");
  } catch (const ValidationError& e) {
    CHECK(e.violation.kind == "SelectorError");
    CHECK(e.cycle == 1);
  }
  MachineState st2 = MachineState::from_placement({{1, {0, 0}}});
  Schedule s2 = sched({{Instruction::gadget2("cnot", {0}, {0})}});
  CHECK_THROWS_AS(execute(st2, s2), ValidationError);
}

TEST_CASE("one layer is one cycle") {
  MachineState st = MachineState::from_placement({{1, {0, 0}}, {2, {3, 0}}});
  Schedule s = sched({
      {Instruction::gadget1("h", {0}, {0}), Instruction::gadget1("h", {3}, {0})},
      {},
      {Instruction::gadget1("h", {0, 3}, {0})},
  });
  EventTrace tr = execute(st, s);
  REQUIRE(tr.events.size() == 3);
  CHECK(tr.events[0].cycle == 0);
  CHECK(tr.events[1].cycle == 0);
  CHECK(tr.events[2].cycle == 2);
}

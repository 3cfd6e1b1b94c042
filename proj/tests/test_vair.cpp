#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "coniq/gadgets.hpp"
#include "coniq/machine.hpp"
#include "coniq/vair.hpp"
#include "doctest.h"

using namespace coniq;

namespace {

MachineState register_state(const std::vector<GridPoint>& origins) {
  std::vector<std::pair<int, GridPoint>> regs;
  int id = 0;
  for (const auto& o : origins) regs.push_back({id++, o});
  return MachineState::from_placement(regs);
}

}  // namespace

TEST_CASE("tensor_expand values and collision") {
  CHECK(tensor_expand({0, 1}, {0, 2}, 4) == std::vector<double>{0, 2, 4, 6});
  CHECK(tensor_expand({1}, {0.5}, 9) == std::vector<double>{9.5});
  CHECK_THROWS_AS(tensor_expand({0, 1}, {0, 4}, 4), CollisionError);
}

TEST_CASE("lower_move and lower_transfer expand by the level map") {
  ConcatProfile p = parse_profile("4,4");
  auto layout = workspace_layout(p);
  // Level-1 map: offs_x = 0..3 (stride 9), offs_y = {0} (stride 1).
  Instruction mv = Instruction::move({0, 1}, {0});
  Instruction low = lower_move(mv, layout[0]);
  CHECK(low.cols == std::vector<double>{0, 1, 2, 3, 9, 10, 11, 12});
  CHECK(low.rows == std::vector<double>{0});
  Instruction tr = Instruction::transfer(true, {2}, {0});
  Instruction lt = lower_transfer(tr, layout[0]);
  CHECK(lt.kind == InstrKind::TransferStoA);
  CHECK(lt.cols == std::vector<double>{18, 19, 20, 21});
}

TEST_CASE("unit-gap rule at level >= 1") {
  LevelState st;
  st.level = 1;
  st.state = register_state({{0, 0}});
  CHECK(validate_level(st, Instruction::move({0, 1}, {0})) == std::nullopt);
  auto v = validate_level(st, Instruction::move({0, 0.5}, {0}));
  REQUIRE(v.has_value());
  CHECK(v->kind == "OrderViolation");
  // Level 0 allows sub-unit gaps (plain strict ordering only).
  st.level = 0;
  CHECK(validate_level(st, Instruction::move({0, 0.5}, {0})) == std::nullopt);
}

TEST_CASE("run_level_schedule moves registers like atoms") {
  LevelState st;
  st.level = 2;
  st.state = register_state({{0, 0}, {1, 0}});
  Schedule s;
  s.level = 2;
  s.layers = {
      {Instruction::move({0}, {0})},
      {Instruction::transfer(true, {0}, {0})},
      {Instruction::move({5}, {0})},
      {Instruction::transfer(false, {5}, {0})},
  };
  run_level_schedule(st, s);
  auto place = st.state.placement();
  CHECK(place.at(0) == GridPoint{5, 0});
  CHECK(place.at(1) == GridPoint{1, 0});
  // Level mismatch rejected.
  Schedule bad;
  bad.level = 1;
  CHECK_THROWS_AS(run_level_schedule(st, bad), std::invalid_argument);
}

TEST_CASE("missing template raises MissingTemplate") {
  ConcatProfile p = parse_profile("4");
  auto layout = workspace_layout(p);
  TemplateLibrary lib = build_templates(p, layout, {});
  Schedule s;
  s.level = 1;
  s.layers = {{Instruction::gadget1("nonesuch", {0}, {0})}};
  CHECK_THROWS_AS(lower_to_physical(s, layout, lib), MissingTemplate);
}

TEST_CASE("lower_gadget tensor-expands template bodies over selections") {
  ConcatProfile p = parse_profile("4");
  auto layout = workspace_layout(p);
  TemplateLibrary lib = build_templates(p, layout, {});
  const GadgetTemplate& hh = lib.at({"h_trans", 1});
  Instruction g = Instruction::gadget1("h_trans", {0, 1}, {0});
  Schedule low = lower_gadget(g, hh, layout[0]);
  CHECK(low.level == 0);
  CHECK(static_cast<int>(low.layers.size()) == hh.cycles);
  // One physical h over both blocks' data cells.
  bool found = false;
  for (const auto& layer : low.layers)
    for (const auto& in : layer)
      if (in.kind == InstrKind::Gadget1 && in.name == "h") {
        CHECK(in.cols == std::vector<double>{0, 1, 2, 3, 9, 10, 11, 12});
        found = true;
      }
  CHECK(found);
}

TEST_CASE("template cycle declarations match actual lowering") {
  for (const char* s : {"4,4", "4,4,4"}) {
    ConcatProfile p = parse_profile(s);
    auto layout = workspace_layout(p);
    TemplateLibrary lib = build_templates(p, layout, {});
    int depth = p.depth();
    for (const auto& [key, tmpl] : lib) {
      if (key.second != depth) continue;
      Schedule top;
      top.level = depth;
      top.layers = {{key.first == "cnot"
                         ? Instruction::gadget2(key.first, {0}, {0})
                         : Instruction::gadget1(key.first, {0}, {0})}};
      Schedule phys = lower_to_physical(top, layout, lib);
      auto cycles = template_cycles_per_level(key.first, depth, lib);
      REQUIRE(static_cast<int>(cycles.size()) == depth);
      CHECK(static_cast<long>(phys.layers.size()) == cycles[0]);
      CHECK(cycles[depth - 1] == tmpl.cycles);
    }
  }
}

TEST_CASE("lowered preparation executes without violations") {
  for (const char* s : {"4", "4,4", "4,4,4"}) {
    ConcatProfile p = parse_profile(s);
    auto layout = workspace_layout(p);
    TemplateLibrary lib = build_templates(p, layout, {});
    Schedule top;
    top.level = p.depth();
    top.layers = {{Instruction::gadget1("prep", {0}, {0})}};
    Schedule phys = lower_to_physical(top, layout, lib);
    int id = 0;
    auto atoms = register_atoms(p, layout, {0, 0}, id);
    MachineState st = MachineState::from_placement(atoms);
    CHECK_NOTHROW(execute(st, phys));
    CHECK(st.aod_empty());
    CHECK(st.atom_count() == atoms.size());
  }
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <set>

#include "coniq/gadgets.hpp"
#include "coniq/oracle.hpp"
#include "coniq/scheduler.hpp"
#include "doctest.h"

using namespace coniq;

namespace {

struct Built {
  ConcatProfile profile;
  std::vector<CoordMap> layout;
  TemplateLibrary lib;
};

Built build(const std::string& s) {
  Built b;
  b.profile = parse_profile(s);
  b.layout = workspace_layout(b.profile);
  b.lib = build_templates(b.profile, b.layout, {});
  return b;
}

// Places the data register plus the emitter's pool registers and lowers the
// emitted top-level instructions serially.
struct Lowered {
  std::vector<std::pair<int, GridPoint>> placement;
  Schedule physical;
};

Lowered lower_emitter(const Built& b, const TopEmitter& em) {
  Lowered out;
  Schedule top = schedule_serial(em.instructions(), b.profile.depth());
  out.physical = lower_to_physical(top, b.layout, b.lib);
  int id = 0;
  for (auto& a : register_atoms(b.profile, b.layout, {0, 0}, id))
    out.placement.push_back(a);
  for (int i = 0; i < em.pool_size(); ++i)
    for (auto& a :
         register_atoms(b.profile, b.layout, em.pool_position(i), id))
      out.placement.push_back(a);
  return out;
}

}  // namespace

TEST_CASE("template library covers every level") {
  Built b = build("4,6,4");
  for (int l = 1; l <= 3; ++l) {
    for (const char* name : {"prep", "prep_raw", "h_trans", "measure_z",
                             "measure_x", "reset", "cnot"}) {
      REQUIRE(b.lib.count({name, l}) == 1);
      CHECK(b.lib.at({name, l}).cycles > 0);
      CHECK(b.lib.at({name, l}).level == l);
    }
    for (int d = 1; d <= l; ++d)
      for (const char* base : {"swap", "cnotf", "cnotr"})
        CHECK(b.lib.count({std::string(base) + "@" + std::to_string(d), l}) ==
              1);
  }
  // Verified prep is strictly more work than the raw encoding.
  auto raw = template_cycles_per_level("prep_raw", 3, b.lib);
  auto ver = template_cycles_per_level("prep", 3, b.lib);
  CHECK(ver[0] > raw[0]);
}

TEST_CASE("register atoms: counts, uniqueness, integer cells") {
  for (auto [s, n] : std::vector<std::pair<const char*, int>>{
           {"4", 4}, {"6", 6}, {"4,4", 32}, {"4,6", 48}, {"4,4,4", 128}}) {
    ConcatProfile p = parse_profile(s);
    auto layout = workspace_layout(p);
    int id = 5;
    auto atoms = register_atoms(p, layout, {0, 0}, id);
    CHECK(static_cast<int>(atoms.size()) == n);
    CHECK(id == 5 + n);
    std::set<std::pair<double, double>> uniq;
    for (auto& [aid, pt] : atoms) {
      uniq.insert({pt.x, pt.y});
      CHECK(pt.x == static_cast<long>(pt.x));
      CHECK(pt.y == static_cast<long>(pt.y));
    }
    CHECK(uniq.size() == atoms.size());
  }
}

TEST_CASE("prep verification blocks: one full-profile reference per register") {
  ConcatProfile p1 = parse_profile("4");
  CHECK(prep_check_blocks(p1, workspace_layout(p1), {0, 0}).empty());

  ConcatProfile p = parse_profile("4,4");
  auto layout = workspace_layout(p);
  auto blocks = prep_check_blocks(p, layout, {0, 0});
  REQUIRE(blocks.size() == 1);
  CHECK(blocks[0].profile.str() == "4,4");
  CHECK(blocks[0].cells.size() == 16);
  // Reference cells are disjoint from the data cells but all appear among
  // the register's atoms.
  int id = 0;
  auto atoms = register_atoms(p, layout, {0, 0}, id);
  std::set<std::pair<double, double>> atom_cells;
  for (auto& [aid, pt] : atoms) atom_cells.insert({pt.x, pt.y});
  std::set<std::pair<double, double>> data_cells;
  for (auto& c : register_cells(p, layout, {0, 0}))
    data_cells.insert({c.x, c.y});
  for (auto& c : blocks[0].cells) {
    CHECK(atom_cells.count({c.x, c.y}) == 1);
    CHECK(data_cells.count({c.x, c.y}) == 0);
  }
}

TEST_CASE("declared automorphism actions are symplectic and correct for D4") {
  ConcatProfile p = parse_profile("4");
  auto swap = automorphism_action(p, "swap@1");
  auto expected = symplectic_identity(2);
  symplectic_apply_swap(expected, 0, 1);
  CHECK(swap == expected);
  auto cf = automorphism_action(p, "cnotf@1");
  expected = symplectic_identity(2);
  symplectic_apply_cnot(expected, 0, 1);
  CHECK(cf == expected);
  auto cr = automorphism_action(p, "cnotr@1");
  expected = symplectic_identity(2);
  symplectic_apply_cnot(expected, 1, 0);
  CHECK(cr == expected);
  CHECK_THROWS(automorphism_action(p, "h_trans"));
  CHECK_THROWS_AS(automorphism_action(parse_profile("6"), "swap@1"),
                  UnsupportedGate);
}

TEST_CASE("oracle: D4 transposition gadgets act as declared") {
  Built b = build("4");
  for (const char* name : {"swap@1", "cnotf@1", "cnotr@1"}) {
    TopEmitter em(b.profile, b.layout);
    em.automorphism({0, 0}, name);
    Lowered low = lower_emitter(b, em);
    CodeRegion region{b.profile, b.layout, {0, 0}};
    auto res =
        logical_action(low.placement, {region}, {region}, low.physical, 1);
    REQUIRE(res.is_logical);
    CHECK(res.matrix == automorphism_action(b.profile, name));
  }
}

TEST_CASE("oracle: transversal CNOT between two registers") {
  Built b = build("4");
  TopEmitter em(b.profile, b.layout);
  // Second register placed manually at the first pool slot.
  GridPoint r0{0, 0}, r1{1, 0};
  em.transversal_cnot(r0, r1);
  Schedule top = schedule_serial(em.instructions(), 1);
  Schedule phys = lower_to_physical(top, b.layout, b.lib);
  int id = 0;
  std::vector<std::pair<int, GridPoint>> placement;
  for (auto& a : register_atoms(b.profile, b.layout, r0, id))
    placement.push_back(a);
  for (auto& a : register_atoms(b.profile, b.layout, r1, id))
    placement.push_back(a);
  CodeRegion c0{b.profile, b.layout, r0};
  CodeRegion c1{b.profile, b.layout, r1};
  auto res = logical_action(placement, {c0, c1}, {c0, c1}, phys, 3);
  REQUIRE(res.is_logical);
  auto expected = symplectic_identity(4);
  symplectic_apply_cnot(expected, 0, 2);
  symplectic_apply_cnot(expected, 1, 3);
  CHECK(res.matrix == expected);
}

TEST_CASE("verified preparation fixes the code stabilizers (D4)") {
  Built b = build("4");
  TopEmitter em(b.profile, b.layout);
  em.prep({0, 0});
  Lowered low = lower_emitter(b, em);
  MachineState st = MachineState::from_placement(low.placement);
  EventTrace trace = execute(st, low.physical);

  StabilizerTableau tab(static_cast<int>(low.placement.size()));
  std::map<int, int> a2q;
  std::map<std::pair<double, double>, int> cell2q;
  for (std::size_t i = 0; i < low.placement.size(); ++i) {
    a2q[low.placement[i].first] = static_cast<int>(i);
    cell2q[{low.placement[i].second.x, low.placement[i].second.y}] =
        static_cast<int>(i);
  }
  std::mt19937_64 rng(17);
  replay_trace(tab, trace, a2q, rng);

  int n = static_cast<int>(low.placement.size());
  auto sup = code_stabilizer_supports(b.profile, b.layout, {0, 0});
  for (auto& [type, pts] : sup.generators) {
    std::vector<int> qs;
    for (auto& pt : pts) qs.push_back(cell2q.at({pt.x, pt.y}));
    CHECK(tab.expectation(PauliOperator::from_support(n, type, qs)) == 1);
  }
  // Logical all-zeros: every logical Z has expectation +1.
  for (auto& addr : all_addresses(b.profile)) {
    auto ls = address_to_physical(b.profile, {0, 0}, addr, b.layout);
    std::vector<int> qs;
    for (auto& pt : ls.z_support) qs.push_back(cell2q.at({pt.x, pt.y}));
    CHECK(tab.expectation(PauliOperator::from_support(n, 'Z', qs)) == 1);
  }
}

TEST_CASE("addressable gates reject non-D4 dimensions") {
  Built b = build("4,6");
  TopEmitter em(b.profile, b.layout);
  RegisterAddress a = parse_address("0.0"), c = parse_address("1.1");
  CHECK_THROWS_AS(em.addressable_cnot({0, 0}, a, {0, 0}, c), UnsupportedGate);
  CHECK_THROWS_AS(em.addressable_h({0, 0}, a), UnsupportedGate);
}

TEST_CASE("addressable cnot rejects coinciding operands and bad addresses") {
  Built b = build("4,4");
  TopEmitter em(b.profile, b.layout);
  RegisterAddress a = parse_address("0.0");
  CHECK_THROWS_AS(em.addressable_cnot({0, 0}, a, {0, 0}, a),
                  std::invalid_argument);
  RegisterAddress bad;
  bad.indices = {3, 0};
  CHECK_THROWS_AS(em.addressable_cnot({0, 0}, bad, {0, 0}, a),
                  std::out_of_range);
}

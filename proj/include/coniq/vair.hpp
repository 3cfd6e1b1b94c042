#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "coniq/codes.hpp"
#include "coniq/instr.hpp"
#include "coniq/machine.hpp"

namespace coniq {

// Level-l program state: registers at this level behave exactly like atoms
// (same four-tuple, same constraints).
struct LevelState {
  int level = 0;
  MachineState state;
};

// A reusable gadget body: level-(l-1) instructions with coordinates relative
// to a register block at position 0 (coordinates in units of the level-(l-1)
// grid). Instantiation tensor-expands every coordinate by the level-l map.
struct GadgetTemplate {
  std::string name;
  int level = 0;
  Schedule body;        // schedule at level-1, relative coordinates
  int cycles = 0;       // |body.layers|
  std::string summary;  // human-readable note for the catalog
};

using TemplateLibrary = std::map<std::pair<std::string, int>, GadgetTemplate>;

struct MissingTemplate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Instruction-level constraint check at level `state.level`. Beyond the
// machine rules, levels >= 1 require AOD coordinate gaps >= 1 (unit-cell
// spacing), which is what makes tensor-expanded moves provably legal below.
std::optional<Violation> validate_level(const LevelState& state,
                                        const Instruction& instr);

// Replays a schedule at its level, validating and applying moves/transfers
// (gadgets do not change register placement at their own level). Throws
// ValidationError on the first violation.
void run_level_schedule(LevelState& state, const Schedule& schedule);

// {p*stride + r | p in positions, r in rel}, sorted; throws CollisionError on
// duplicates.
std::vector<double> tensor_expand(const std::vector<double>& positions,
                                  const std::vector<double>& rel, int stride);

Instruction lower_move(const Instruction& instr, const CoordMap& map);
Instruction lower_transfer(const Instruction& instr, const CoordMap& map);

// Expands one gadget instruction at level l into the template body's layers
// at level l-1, tensor-expanding selectors over all selected registers.
Schedule lower_gadget(const Instruction& instr, const GadgetTemplate& tmpl,
                      const CoordMap& map);

// One level of lowering: level-l schedule -> level-(l-1) schedule, using the
// level-l CoordMap. Instructions sharing a layer must expand to equal cycle
// counts (guaranteed for same-variant layers); their layers are merged
// position-wise.
Schedule lower_schedule(const Schedule& schedule, const CoordMap& map,
                        const TemplateLibrary& templates);

// Recursive lowering to level 0. `layout` is indexed by level-1 (layout[0] =
// level-1 map); schedule.level must be <= layout.size().
Schedule lower_to_physical(const Schedule& schedule,
                           const std::vector<CoordMap>& layout,
                           const TemplateLibrary& templates);

// Declared cycle count of a gadget at every level below it: element 0 is the
// physical cycle count, element i the count at level i, up to level-1.
std::vector<long> template_cycles_per_level(const std::string& name, int level,
                                            const TemplateLibrary& templates);

}  // namespace coniq

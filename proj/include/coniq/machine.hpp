#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "coniq/codes.hpp"
#include "coniq/instr.hpp"

namespace coniq {

// Level-0 machine state: the four-tuple (I, J, A, S). The grid is unbounded
// and sparse; SLM cells live on the integer grid, AOD coordinates are reals.
// One extension over the basic model: a Move may change |I| or |J| when every
// AOD trap is empty (re-tuning the deflector between gadgets).
struct MachineState {
  std::vector<double> I;  // AOD column x-coordinates, strictly increasing
  std::vector<double> J;  // AOD row y-coordinates, strictly increasing
  std::map<std::pair<int, int>, int> A;        // (col idx, row idx) -> atom
  std::map<std::pair<long, long>, int> S;      // (x, y) -> atom

  static MachineState from_placement(
      const std::vector<std::pair<int, GridPoint>>& atoms);

  bool aod_empty() const { return A.empty(); }
  std::size_t atom_count() const { return A.size() + S.size(); }
  std::optional<int> column_index(double x) const;
  std::optional<int> row_index(double y) const;
  // Current position of every atom (AOD atoms at trap coordinates).
  std::map<int, GridPoint> placement() const;
};

enum class EventKind { Gate1, CZ, Measure, Reset, Move, Transfer };

struct Event {
  int cycle = 0;
  EventKind kind = EventKind::Gate1;
  std::string gate;                          // Gate1 label
  std::vector<int> atoms;                    // Gate1/Measure/Reset/Move/Transfer
  std::vector<std::pair<int, int>> pairs;    // CZ: (AOD atom, SLM atom)
  std::vector<GridPoint> positions;          // Gate1/Measure/Reset: atom cells
};

struct EventTrace {
  std::vector<Event> events;
};

std::optional<Violation> validate_move(const MachineState& state,
                                       const std::vector<double>& new_cols,
                                       const std::vector<double>& new_rows);

// Mutating instruction appliers; each returns what happened for the trace.
// Transfers silently skip selector intersections without the required
// SLM-atom/empty-trap (or reverse) configuration.
std::vector<int> apply_transfer(MachineState& state, bool to_aod,
                                const std::vector<double>& cols,
                                const std::vector<double>& rows);
std::vector<std::pair<int, int>> apply_cz(const MachineState& state,
                                          const std::vector<double>& cols,
                                          const std::vector<double>& rows);
std::vector<int> apply_gate1(const MachineState& state,
                             const std::vector<double>& cols,
                             const std::vector<double>& rows);
void apply_move(MachineState& state, const std::vector<double>& new_cols,
                const std::vector<double>& new_rows);

// Executes a level-0 schedule layer by layer (one layer = one cycle).
// Throws ValidationError with the offending cycle on the first violation.
EventTrace execute(MachineState& state, const Schedule& schedule);

}  // namespace coniq

#pragma once

#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include "coniq/instr.hpp"

namespace coniq {

// Cell keys on a quarter-unit grid so fractional hover coordinates compare
// exactly.
using CellKey = std::pair<long long, long long>;
CellKey cell_key(double x, double y);
std::set<CellKey> instruction_cells(const Instruction& in);

// Order dependencies between instructions sharing cells; Move instructions
// are global barriers (they relocate the whole AOD grid).
struct DependencyDag {
  std::vector<Instruction> nodes;
  std::vector<std::vector<int>> preds;
};

DependencyDag build_dag(const std::vector<Instruction>& instrs);

// Indices of remaining instructions with no remaining predecessor.
std::vector<int> front_layer(const DependencyDag& dag,
                             const std::vector<char>& remaining);

// Greedy maximal batch of front instructions with the given kind+name whose
// combined row-column closure covers no unintended occupied cell. Candidates
// are tried in increasing instruction index (lowest index first tie-break).
std::vector<int> maximal_addressable_set(const DependencyDag& dag,
                                         const std::vector<int>& front,
                                         InstrKind kind,
                                         const std::string& name,
                                         const std::set<CellKey>& occupied);

// Merge a batch into one broadcast instruction (union selectors).
Instruction merge_batch(const DependencyDag& dag, const std::vector<int>& batch);

// Greedy scheduling: front layer -> seeded random type pick -> maximal batch
// -> one layer per batch. `occupied` lists cells that may hold a register at
// any time during the program (conservative superset).
Schedule schedule_greedy(const std::vector<Instruction>& instrs, int level,
                         const std::set<CellKey>& occupied, uint64_t seed);

// Runs `trials` seeds (seed, seed+1, ...) and keeps the fewest-layer result;
// ties keep the earliest seed.
Schedule schedule_best(const std::vector<Instruction>& instrs, int level,
                       const std::set<CellKey>& occupied, uint64_t seed,
                       int trials);

// One instruction per layer, no batching (used by the sequential baseline).
Schedule schedule_serial(const std::vector<Instruction>& instrs, int level);

}  // namespace coniq

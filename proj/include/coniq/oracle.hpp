#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coniq/codes.hpp"
#include "coniq/machine.hpp"
#include "coniq/tableau.hpp"

namespace coniq {

// One encoded register: a concatenated-code block at a grid origin.
struct CodeRegion {
  ConcatProfile profile;
  std::vector<CoordMap> layout;
  GridPoint origin;
};

// Result of the logical-action oracle: the induced symplectic matrix over
// the logical operators of all declared regions. Row i (< k) is the image of
// logical X_i, row k+i the image of logical Z_i; columns use the same order
// (X coefficients first).
struct LogicalActionResult {
  bool is_logical = false;
  int k = 0;
  std::vector<std::vector<uint8_t>> matrix;
  std::string offender;
};

// Applies the generic recursive encoding circuit (lower-level encodings,
// transversal H on sub-block 0, transversal CNOT fan-out) mapping |0...0> to
// the logical all-zeros codeword on the listed tableau qubits (hierarchical
// cell order as produced by register_cells).
void encode_zeros(StabilizerTableau& tab, const ConcatProfile& profile,
                  const std::vector<int>& qubits);

// Replays a level-0 event trace onto a tableau through an atom->qubit map.
void replay_trace(StabilizerTableau& tab, const EventTrace& trace,
                  const std::map<int, int>& atom_to_qubit,
                  std::mt19937_64& rng);

// Computes the logical Clifford action of a physical schedule on the given
// regions: data registers start in logical zeros maximally entangled with
// reference qubits, the schedule runs on the tableau, and the symplectic
// action is recovered from the final stabilizer group. Atoms outside the
// regions' data cells are ancillas starting in |0>. `regions_out` gives the
// regions' locations after the schedule (usually identical).
LogicalActionResult logical_action(
    const std::vector<std::pair<int, GridPoint>>& placement,
    const std::vector<CodeRegion>& regions_in,
    const std::vector<CodeRegion>& regions_out, const Schedule& physical,
    uint64_t seed);

// Expected-matrix helpers for tests and the gadget catalog.
std::vector<std::vector<uint8_t>> symplectic_identity(int k);
// In-place: post-compose with CNOT(ctrl->tgt) on logical indices.
void symplectic_apply_cnot(std::vector<std::vector<uint8_t>>& m, int ctrl,
                           int tgt);
void symplectic_apply_swap(std::vector<std::vector<uint8_t>>& m, int a, int b);
void symplectic_apply_h(std::vector<std::vector<uint8_t>>& m, int q);

}  // namespace coniq

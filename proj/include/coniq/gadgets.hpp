#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coniq/codes.hpp"
#include "coniq/instr.hpp"
#include "coniq/scheduler.hpp"
#include "coniq/vair.hpp"

namespace coniq {

struct UnsupportedGate : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Simple gate list for the level-1 encoding circuit (|0..0> -> logical
// all-zeros codeword): "h q" and "cx a b".
struct CircuitOp {
  std::string gate;
  int a = 0;
  int b = -1;
};
std::vector<CircuitOp> encoding_circuit(const CodeSpec& code);

// Options shared by template building and top-level emission.
struct GadgetOptions {
  uint64_t seed = 0;
  int sched_trials = 1;
  bool sequential = false;  // baseline mode: no batching anywhere
};

// Builds the template library for every level of the profile:
//   prep_raw    - unverified logical all-zeros encoding
//   prep        - all-zeros preparation verified against a reference copy
//   h_trans     - transversal H
//   measure_z   - destructive transversal Z measurement of the data cells
//   measure_x   - transversal X-basis measurement (H then measure)
//   reset       - transversal reset of the data cells
//   cnot        - transversal CNOT (gadget2; AOD register is the control)
//   swap@d      - automorphism: logical SWAP along dimension d
//   cnotf@d     - automorphism: logical CNOT(index0 -> index1) along d
//   cnotr@d     - automorphism: logical CNOT(index1 -> index0) along d
// Bodies are expressed relative to a block at position 0 using the workspace
// layout and scheduled once (Algorithm-1 greedy batching, or serial in
// sequential mode).
TemplateLibrary build_templates(const ConcatProfile& profile,
                                const std::vector<CoordMap>& layout,
                                const GadgetOptions& opts);

// Atom placement of one register: data cells plus the top-level reference
// copy used by the verified preparation, ids assigned from `next_id`
// (incremented).
std::vector<std::pair<int, GridPoint>> register_atoms(
    const ConcatProfile& profile, const std::vector<CoordMap>& layout,
    GridPoint origin, int& next_id);

// Verification check measured during one state preparation of a register at
// `origin`: the reference copy's cells, decoded against the full profile.
// Empty for depth-1 profiles (no verification at level 1).
struct CheckBlock {
  ConcatProfile profile;
  std::vector<GridPoint> cells;
};
std::vector<CheckBlock> prep_check_blocks(const ConcatProfile& profile,
                                          const std::vector<CoordMap>& layout,
                                          GridPoint origin);

// One decodable measurement record of a compiled program, bound to physical
// cells and per-cell measurement occurrence indices.
struct CheckRecord {
  std::string purpose;  // prep_check | ec_z | ec_x | readout | logical_meas
  ConcatProfile profile;
  char basis = 'Z';
  std::vector<GridPoint> cells;
  std::vector<int> occurrence;
  RegisterAddress address;   // logical_meas only
  uint8_t frame_flip = 0;    // classical Pauli-frame flip of the outcome
};

// Emits top-level (level = profile depth) instructions for register-granular
// operations, including the AHA addressable gates, and records measurement
// annotations. Registers are named by their top-level grid positions; the
// ancilla pool occupies (1,0), (2,0), ... with the data register customarily
// at (0,0).
class TopEmitter {
 public:
  TopEmitter(ConcatProfile profile, std::vector<CoordMap> layout);

  void prep(GridPoint reg);
  void h_trans(GridPoint reg);
  void reset_reg(GridPoint reg);
  void measure_reg(GridPoint reg, char basis, const std::string& purpose,
                   const RegisterAddress& addr = RegisterAddress{},
                   uint8_t frame_flip = 0);
  // Copies the addressed logical into a fresh pool register and measures it
  // there (purpose "logical_meas").
  void logical_measure(GridPoint reg, const RegisterAddress& addr,
                       uint8_t frame_flip);
  void automorphism(GridPoint reg, const std::string& name);
  // Transversal CNOT: picks the control register, parks it over the target,
  // runs the cnot gadget, returns it home.
  void transversal_cnot(GridPoint ctrl, GridPoint tgt);

  // AHA hierarchical addressing (all-D4 profiles only; UnsupportedGate
  // otherwise). Uses depth-many pooled chain ancillas.
  void addressable_cnot(GridPoint ctrl_reg, const RegisterAddress& ctrl,
                        GridPoint tgt_reg, const RegisterAddress& tgt);
  void addressable_h(GridPoint reg, const RegisterAddress& addr);
  // Steane-style error correction round on one register.
  void ec_round(GridPoint reg);

  // Pool interface (exposed for pipeline placement accounting).
  int pool_size() const { return static_cast<int>(pool_dirty_.size()); }
  GridPoint pool_position(int idx) const {
    return GridPoint{static_cast<double>(idx + 1), 0.0};
  }

  const std::vector<Instruction>& instructions() const { return instrs_; }
  const std::vector<CheckRecord>& checks() const { return checks_; }

 private:
  int pool_acquire();                    // returns index of a clean register
  void pool_release(int idx, bool dirty);
  void note_measured(const std::vector<GridPoint>& cells,
                     std::vector<int>& occ_out);
  void record_prep_checks(GridPoint reg);
  void emit_pick(GridPoint reg);
  void emit_drop(GridPoint reg);
  void emit_hover(GridPoint reg);

  ConcatProfile profile_;
  std::vector<CoordMap> layout_;
  std::vector<Instruction> instrs_;
  std::vector<CheckRecord> checks_;
  std::vector<char> pool_dirty_;
  std::vector<char> pool_busy_;
  std::map<std::pair<long, long>, int> meas_count_;
};

// Expected logical action of the named automorphism gadget on a register
// with `k_total` logical qubits (used for the catalog and frozen tests).
std::vector<std::vector<uint8_t>> automorphism_action(
    const ConcatProfile& profile, const std::string& name);

}  // namespace coniq

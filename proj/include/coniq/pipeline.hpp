#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "coniq/codes.hpp"
#include "coniq/gadgets.hpp"
#include "coniq/instr.hpp"
#include "coniq/vair.hpp"

namespace coniq {

struct ParseError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// One logical gate. Addresses refer to logical qubits of the single data
// register; `b` is used by cnot only.
struct LogicalGate {
  std::string name;  // h | x | z | s | cnot | measure
  RegisterAddress a;
  RegisterAddress b;
};

struct LogicalCircuit {
  int qubits = 0;
  std::vector<LogicalGate> gates;
};

// Text format: one statement per line, '#' comments.
//   qubits N
//   h A        x A        z A        s A
//   cnot A B
//   measure A
// An address is either a plain integer (linear index) or dotted digits with
// the level-1 digit first ("1.0" = level-1 index 1, level-2 index 0).
LogicalCircuit parse_circuit(const std::string& text);

RegisterAddress linear_address(const ConcatProfile& profile, long lin);

enum class EcPolicy { PerGadget, None };

struct CompileOptions {
  uint64_t seed = 0;
  int sched_trials = 4;
  bool sequential = false;     // serial baseline: no batching at any level
  EcPolicy ec = EcPolicy::PerGadget;
  bool assume_encoded = false; // skip the initial data-register preparation
  bool final_readout = false;  // destructive Z readout of the data register
};

struct Metrics {
  long atoms = 0;
  long cycles = 0;
  long spacetime = 0;  // atoms * cycles (qubit-cycles)
  double compile_seconds = 0;
};

struct CompiledProgram {
  ConcatProfile profile;
  std::vector<CoordMap> layout;  // workspace layout
  std::vector<std::pair<int, GridPoint>> placement;
  Schedule top;       // register-granular schedule at the profile depth
  Schedule physical;  // fully lowered level-0 schedule
  std::vector<CheckRecord> checks;
  std::vector<uint8_t> readout_frame;  // classical X frame per linear address
  Metrics metrics;
  uint64_t seed = 0;
  std::map<std::string, long> gadget_cycles;  // physical cycles by op kind
};

CompiledProgram compile_circuit(const LogicalCircuit& circuit,
                                const ConcatProfile& profile,
                                const CompileOptions& opts);

// Preparation + `ec_rounds` error-correction rounds + optional destructive
// readout: the memory benchmark program (rounds=0, readout=false gives the
// bare state-preparation program).
CompiledProgram compile_memory(const ConcatProfile& profile,
                               const CompileOptions& opts, int ec_rounds,
                               bool readout);

}  // namespace coniq

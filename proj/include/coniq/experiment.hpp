#pragma once

#include <cstdint>
#include <stdexcept>
#include <utility>
#include <vector>

#include "coniq/noise.hpp"
#include "coniq/pipeline.hpp"

namespace coniq {

// Classical decoding of one Monte Carlo shot: post-selection on the state
// preparation checks, measurement-based error correction from the EC
// ancilla readouts, then decoding of the final readout records.
struct ShotDecode {
  bool accepted = true;
  bool failure = false;  // corrected readout disagrees with the Pauli frame
  std::vector<uint8_t> readout;  // corrected logical values (linear order)
  std::vector<std::pair<RegisterAddress, uint8_t>> logical_meas;
};

// `expected` is the decoded noiseless readout (from reference_readout); when
// empty, the readout is compared against the compiled Pauli frame, which is
// only correct for programs whose ideal logical outcome is all zeros.
ShotDecode decode_shot(const CompiledProgram& prog, const FrameSimulator& sim,
                       const std::vector<uint8_t>& bits,
                       const std::vector<uint8_t>& expected = {});

// Decoded readout of the simulator's noiseless reference run: the per-shot
// comparison baseline (Pauli frames cancel between shot and reference).
std::vector<uint8_t> reference_readout(const CompiledProgram& prog,
                                       const FrameSimulator& sim);

struct MemoryPoint {
  double p = 0;                // physical two-qubit error rate
  long shots = 0;              // total shots run
  long accepted = 0;           // shots surviving post-selection
  long failures = 0;           // accepted shots with a logical error
  double rate = 0;             // failures / accepted
  double lo = 0, hi = 0;       // Wilson 95% interval on the rate
};

// Runs shots until `min_accepted` accepted shots (or `max_shots`).
MemoryPoint memory_point(const CompiledProgram& prog, double p,
                         long min_accepted, long max_shots, uint64_t seed);

std::pair<double, double> wilson_interval(long failures, long trials,
                                          double z = 1.96);

struct DegenerateFit : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Log-log least squares p_l = A * p^alpha over (p, p_l) points, plus the
// pseudo-threshold p_th solving p_l(p_th) = p_th. Throws DegenerateFit on
// fewer than two usable points, non-positive rates, or alpha ~ 1.
struct FitResult {
  double alpha = 0;
  double intercept = 0;  // log A
  double p_th = 0;
};
FitResult fit_threshold(const std::vector<std::pair<double, double>>& points);

}  // namespace coniq

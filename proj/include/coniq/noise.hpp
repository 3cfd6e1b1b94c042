#pragma once

#include <cstdint>
#include <map>
#include <random>
#include <vector>

#include "coniq/machine.hpp"
#include "coniq/tableau.hpp"

namespace coniq {

// Circuit-level Pauli noise rates. The standard model; `scaled(p)` keeps the
// same ratios with the two-qubit rate set to p.
struct NoiseModel {
  double e_1q = 0.0;
  double e_2q = 0.0;
  double e_move = 0.0;
  double e_reset = 0.0;
  double e_meas = 0.0;

  static NoiseModel ideal() { return {}; }
  static NoiseModel standard() {
    return {3e-4, 5e-3, 1e-3, 2.5e-3, 2.5e-3};
  }
  static NoiseModel scaled(double p) {
    NoiseModel s = standard();
    double f = p / s.e_2q;
    return {s.e_1q * f, p, s.e_move * f, s.e_reset * f, s.e_meas * f};
  }
};

// Monte Carlo sampler for a fixed physical schedule: one noiseless stabilizer
// reference run (all atoms start in |0>), then per-shot X/Z Pauli frames
// propagated through the flattened event trace. Shots are independent and
// reproducible: shot i uses an RNG derived from (seed, i) only.
class FrameSimulator {
 public:
  FrameSimulator(const std::vector<std::pair<int, GridPoint>>& placement,
                 const Schedule& physical, const NoiseModel& noise,
                 uint64_t seed);

  std::size_t num_measurements() const { return meas_cells_.size(); }
  // Measurement index of the k-th measurement of the given cell, as recorded
  // in the event trace. Throws std::out_of_range when absent.
  std::size_t measurement_index(GridPoint cell, int occurrence) const;

  // One sampled fault: flattened-op index, the op kind, the affected frame
  // qubit, and the sampled Pauli (bit0 = X, bit1 = Z). Measurement flips use
  // pauli = 4.
  struct FaultRecord {
    std::size_t op_index;
    int kind;  // static_cast of the internal op enum
    int q;
    int pauli;
  };

  // One shot; `flip_x`/`flip_z` list atom ids whose frame starts flipped
  // (error injection before the first event). Returns the measurement bits.
  // When `faults` is non-null, every sampled nonzero fault is appended.
  std::vector<uint8_t> run_shot(long shot,
                                const std::vector<int>& flip_x = {},
                                const std::vector<int>& flip_z = {},
                                std::vector<FaultRecord>* faults
                                    = nullptr) const;

  const std::vector<uint8_t>& reference_bits() const { return ref_bits_; }

  enum class Op : uint8_t { H, S, PauliGate, CZ, Depol1, Depol2, Move1,
                            Measure, Reset };
  struct FlatOp {
    Op op;
    int a = 0;
    int b = 0;
  };
  // Flattened noisy-op trace (introspection for diagnostics and tests).
  const std::vector<FlatOp>& flat_ops() const { return ops_; }
  int atom_frame_index(int id) const { return atom_index_.at(id); }

 private:
  std::vector<FlatOp> ops_;
  NoiseModel noise_;
  uint64_t seed_;
  int n_atoms_ = 0;
  std::map<int, int> atom_index_;
  std::vector<uint8_t> ref_bits_;
  std::vector<std::pair<std::pair<long, long>, int>> meas_cells_;
  std::map<std::pair<std::pair<long, long>, int>, std::size_t> meas_lookup_;
};

// Deterministic 64-bit mix used to derive per-shot RNG streams.
uint64_t splitmix64(uint64_t x);

}  // namespace coniq

#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "coniq/pauli.hpp"

namespace coniq {

// Aaronson-Gottesman stabilizer tableau: rows 0..n-1 are destabilizers,
// n..2n-1 stabilizers, row 2n is scratch. Initial state |0...0>.
class StabilizerTableau {
 public:
  explicit StabilizerTableau(int n);

  int num_qubits() const { return n_; }

  void h(int q);
  void s(int q);
  void sdg(int q);
  void x(int q);
  void z(int q);
  void cx(int a, int b);
  void cz(int a, int b);

  struct MeasureResult {
    int outcome = 0;
    bool deterministic = false;
  };
  MeasureResult measure(int q, std::mt19937_64& rng);
  void reset(int q, std::mt19937_64& rng);

  // Expectation of a Pauli product on the current state: +1, -1, or 0 when
  // the operator anticommutes with some stabilizer. Ignores the argument's
  // own phase (pass phase_exp 0 for plain products).
  int expectation(const PauliOperator& p) const;

  // Stabilizer generator i (0..n-1) as a PauliOperator with sign phase.
  PauliOperator stabilizer(int i) const;
  PauliOperator destabilizer(int i) const;

  bool x_bit(int row, int q) const { return get(xs_, row, q); }
  bool z_bit(int row, int q) const { return get(zs_, row, q); }
  int r_bit(int row) const { return r_[row]; }

 private:
  int n_;
  int words_;
  std::vector<uint64_t> xs_, zs_;  // (2n+1) x words bit matrices
  std::vector<uint8_t> r_;         // sign bit per row

  bool get(const std::vector<uint64_t>& m, int row, int q) const {
    return (m[static_cast<std::size_t>(row) * words_ + q / 64] >> (q % 64)) & 1;
  }
  void toggle(std::vector<uint64_t>& m, int row, int q) {
    m[static_cast<std::size_t>(row) * words_ + q / 64] ^= 1ull << (q % 64);
  }
  void rowsum(int h, int i);   // row h *= row i, tracking signs
  void rowcopy(int h, int i);
  void rowclear(int h);
};

}  // namespace coniq

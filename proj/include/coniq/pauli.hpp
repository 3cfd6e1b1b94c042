#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace coniq {

// n-qubit Pauli operator in symplectic form. `phase_exp` is the power of i
// in front of the X/Z monomial (X-part applied before Z-part), so the
// operator is i^phase_exp * prod_j X_j^{x[j]} * prod_j Z_j^{z[j]}.
struct PauliOperator {
  std::vector<uint8_t> x;
  std::vector<uint8_t> z;
  int phase_exp = 0;  // modulo 4

  PauliOperator() = default;
  explicit PauliOperator(std::size_t n) : x(n, 0), z(n, 0) {}

  std::size_t num_qubits() const { return x.size(); }

  static PauliOperator identity(std::size_t n) { return PauliOperator(n); }

  static PauliOperator from_support(std::size_t n, char kind,
                                    const std::vector<int>& support) {
    PauliOperator p(n);
    for (int q : support) {
      if (q < 0 || static_cast<std::size_t>(q) >= n)
        throw std::out_of_range("pauli support index out of range");
      if (kind == 'X' || kind == 'Y') p.x[q] ^= 1;
      if (kind == 'Z' || kind == 'Y') p.z[q] ^= 1;
    }
    return p;
  }

  bool commutes_with(const PauliOperator& other) const {
    int acc = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      acc ^= (x[i] & other.z[i]) ^ (z[i] & other.x[i]);
    return acc == 0;
  }

  // Symplectic inner product: 1 iff the operators anticommute.
  int symplectic(const PauliOperator& other) const {
    return commutes_with(other) ? 0 : 1;
  }

  PauliOperator operator*(const PauliOperator& rhs) const {
    if (x.size() != rhs.x.size())
      throw std::invalid_argument("pauli size mismatch");
    PauliOperator out(x.size());
    out.phase_exp = (phase_exp + rhs.phase_exp) % 4;
    for (std::size_t i = 0; i < x.size(); ++i) {
      // Commuting rhs X-part past lhs Z-part picks up (-1) per overlap.
      if (z[i] & rhs.x[i]) out.phase_exp = (out.phase_exp + 2) % 4;
      out.x[i] = x[i] ^ rhs.x[i];
      out.z[i] = z[i] ^ rhs.z[i];
    }
    return out;
  }

  bool is_identity_up_to_phase() const {
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] || z[i]) return false;
    return true;
  }

  bool same_monomial(const PauliOperator& other) const {
    return x == other.x && z == other.z;
  }

  int weight() const {
    int w = 0;
    for (std::size_t i = 0; i < x.size(); ++i)
      if (x[i] || z[i]) ++w;
    return w;
  }

  std::string str() const {
    std::string s;
    switch (((phase_exp % 4) + 4) % 4) {
      case 0: s = "+"; break;
      case 1: s = "+i"; break;
      case 2: s = "-"; break;
      case 3: s = "-i"; break;
    }
    for (std::size_t i = 0; i < x.size(); ++i) {
      if (x[i] && z[i]) s += 'Y';
      else if (x[i]) s += 'X';
      else if (z[i]) s += 'Z';
      else s += '_';
    }
    return s;
  }
};

// Rank of a set of GF(2) rows (destructive on the copy).
inline int gf2_rank(std::vector<std::vector<uint8_t>> rows) {
  int rank = 0;
  std::size_t cols = rows.empty() ? 0 : rows[0].size();
  for (std::size_t c = 0; c < cols; ++c) {
    std::size_t pivot = rows.size();
    for (std::size_t r = rank; r < rows.size(); ++r)
      if (rows[r][c]) { pivot = r; break; }
    if (pivot == rows.size()) continue;
    std::swap(rows[pivot], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != rank && rows[r][c])
        for (std::size_t k = 0; k < cols; ++k) rows[r][k] ^= rows[rank][k];
    ++rank;
    if (rank == static_cast<int>(rows.size())) break;
  }
  return rank;
}

inline std::vector<uint8_t> symplectic_row(const PauliOperator& p) {
  std::vector<uint8_t> row(p.x);
  row.insert(row.end(), p.z.begin(), p.z.end());
  return row;
}

}  // namespace coniq

#include "coniq/tableau.hpp"

#include <bit>
#include <stdexcept>

namespace coniq {

StabilizerTableau::StabilizerTableau(int n) : n_(n) {
  if (n <= 0) throw std::invalid_argument("tableau needs >= 1 qubit");
  words_ = (n + 63) / 64;
  xs_.assign(static_cast<std::size_t>(2 * n + 1) * words_, 0);
  zs_.assign(static_cast<std::size_t>(2 * n + 1) * words_, 0);
  r_.assign(2 * n + 1, 0);
  for (int i = 0; i < n; ++i) {
    toggle(xs_, i, i);        // destabilizer X_i
    toggle(zs_, n + i, i);    // stabilizer Z_i
  }
}

void StabilizerTableau::h(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    bool xb = get(xs_, i, q), zb = get(zs_, i, q);
    if (xb && zb) r_[i] ^= 1;
    if (xb != zb) {
      toggle(xs_, i, q);
      toggle(zs_, i, q);
    }
  }
}

void StabilizerTableau::s(int q) {
  for (int i = 0; i < 2 * n_; ++i) {
    bool xb = get(xs_, i, q), zb = get(zs_, i, q);
    if (xb && zb) r_[i] ^= 1;
    if (xb) toggle(zs_, i, q);
  }
}

void StabilizerTableau::sdg(int q) {
  s(q);
  s(q);
  s(q);
}

void StabilizerTableau::x(int q) {
  for (int i = 0; i < 2 * n_; ++i)
    if (get(zs_, i, q)) r_[i] ^= 1;
}

void StabilizerTableau::z(int q) {
  for (int i = 0; i < 2 * n_; ++i)
    if (get(xs_, i, q)) r_[i] ^= 1;
}

void StabilizerTableau::cx(int a, int b) {
  for (int i = 0; i < 2 * n_; ++i) {
    bool xa = get(xs_, i, a), zb = get(zs_, i, b);
    if (xa && zb && (get(xs_, i, b) == get(zs_, i, a))) r_[i] ^= 1;
    if (xa) toggle(xs_, i, b);
    if (zb) toggle(zs_, i, a);
  }
}

void StabilizerTableau::cz(int a, int b) {
  h(b);
  cx(a, b);
  h(b);
}

void StabilizerTableau::rowcopy(int h, int i) {
  for (int w = 0; w < words_; ++w) {
    xs_[static_cast<std::size_t>(h) * words_ + w] =
        xs_[static_cast<std::size_t>(i) * words_ + w];
    zs_[static_cast<std::size_t>(h) * words_ + w] =
        zs_[static_cast<std::size_t>(i) * words_ + w];
  }
  r_[h] = r_[i];
}

void StabilizerTableau::rowclear(int h) {
  for (int w = 0; w < words_; ++w) {
    xs_[static_cast<std::size_t>(h) * words_ + w] = 0;
    zs_[static_cast<std::size_t>(h) * words_ + w] = 0;
  }
  r_[h] = 0;
}

void StabilizerTableau::rowsum(int h, int i) {
  // Accumulate the power-of-i phase from multiplying row i into row h.
  int pos = 0, neg = 0;
  for (int w = 0; w < words_; ++w) {
    uint64_t a = xs_[static_cast<std::size_t>(i) * words_ + w];
    uint64_t b = zs_[static_cast<std::size_t>(i) * words_ + w];
    uint64_t c = xs_[static_cast<std::size_t>(h) * words_ + w];
    uint64_t d = zs_[static_cast<std::size_t>(h) * words_ + w];
    uint64_t p = (~a & b & c & ~d) | (a & ~b & c & d) | (a & b & ~c & d);
    uint64_t m = (~a & b & c & d) | (a & ~b & ~c & d) | (a & b & c & ~d);
    pos += std::popcount(p);
    neg += std::popcount(m);
    xs_[static_cast<std::size_t>(h) * words_ + w] = a ^ c;
    zs_[static_cast<std::size_t>(h) * words_ + w] = b ^ d;
  }
  int total = (2 * r_[h] + 2 * r_[i] + pos - neg) % 4;
  if (total < 0) total += 4;
  // total is 0 or 2 for products arising from valid tableaus.
  r_[h] = total == 2 ? 1 : 0;
}

StabilizerTableau::MeasureResult StabilizerTableau::measure(
    int q, std::mt19937_64& rng) {
  int p = -1;
  for (int i = n_; i < 2 * n_; ++i)
    if (get(xs_, i, q)) { p = i; break; }
  MeasureResult res;
  if (p >= 0) {
    // Random outcome.
    for (int i = 0; i < 2 * n_; ++i)
      if (i != p && get(xs_, i, q)) rowsum(i, p);
    rowcopy(p - n_, p);
    rowclear(p);
    toggle(zs_, p, q);
    res.outcome = static_cast<int>(rng() & 1);
    r_[p] = static_cast<uint8_t>(res.outcome);
    res.deterministic = false;
  } else {
    rowclear(2 * n_);
    for (int i = 0; i < n_; ++i)
      if (get(xs_, i, q)) rowsum(2 * n_, i + n_);
    res.outcome = r_[2 * n_];
    res.deterministic = true;
  }
  return res;
}

void StabilizerTableau::reset(int q, std::mt19937_64& rng) {
  if (measure(q, rng).outcome) x(q);
}

int StabilizerTableau::expectation(const PauliOperator& p) const {
  auto& self = *const_cast<StabilizerTableau*>(this);
  self.rowclear(2 * n_);
  // Build the unique stabilizer-group candidate with p's destabilizer
  // signature: generator i participates iff p anticommutes with
  // destabilizer i.
  for (int i = 0; i < n_; ++i) {
    int acc = 0;
    for (int q = 0; q < n_; ++q)
      acc ^= (get(xs_, i, q) & p.z[q]) ^ (get(zs_, i, q) & p.x[q]);
    if (acc) self.rowsum(2 * n_, n_ + i);
  }
  for (int q = 0; q < n_; ++q)
    if (get(xs_, 2 * n_, q) != static_cast<bool>(p.x[q]) ||
        get(zs_, 2 * n_, q) != static_cast<bool>(p.z[q]))
      return 0;
  return r_[2 * n_] ? -1 : 1;
}

// A tableau row is (-1)^r times a tensor of {I,X,Y,Z}; each Y qubit
// contributes a factor i relative to the X^x Z^z monomial convention of
// PauliOperator, so the phase exponent is 2r plus the Y count (mod 4).
PauliOperator StabilizerTableau::stabilizer(int i) const {
  PauliOperator p(n_);
  int ys = 0;
  for (int q = 0; q < n_; ++q) {
    p.x[q] = get(xs_, n_ + i, q);
    p.z[q] = get(zs_, n_ + i, q);
    if (p.x[q] && p.z[q]) ++ys;
  }
  p.phase_exp = (2 * r_[n_ + i] + ys) % 4;
  return p;
}

PauliOperator StabilizerTableau::destabilizer(int i) const {
  PauliOperator p(n_);
  int ys = 0;
  for (int q = 0; q < n_; ++q) {
    p.x[q] = get(xs_, i, q);
    p.z[q] = get(zs_, i, q);
    if (p.x[q] && p.z[q]) ++ys;
  }
  p.phase_exp = (2 * r_[i] + ys) % 4;
  return p;
}

}  // namespace coniq

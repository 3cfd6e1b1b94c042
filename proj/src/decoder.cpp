#include "coniq/decoder.hpp"

#include <stdexcept>

namespace coniq {

std::vector<uint8_t> encode_outcomes(const ConcatProfile& profile,
                                     const std::vector<uint8_t>& logicals,
                                     char basis) {
  int depth = profile.depth();
  int n = profile.n_at(depth);
  int k = profile.k_at(depth);
  if (depth == 1) {
    std::vector<uint8_t> w(n, 0);
    if (static_cast<int>(logicals.size()) != k)
      throw std::invalid_argument("encode_outcomes: logical count mismatch");
    if (basis == 'Z') {
      // Z pattern of address a is {a+1, a+2}; w[1] = 0, then fix parity.
      for (int a = 0; a < k; ++a) w[a + 2] = logicals[a] ^ w[a + 1];
      uint8_t par = 0;
      for (int i = 1; i < n; ++i) par ^= w[i];
      w[0] = par;
    } else {
      // X pattern of address a is {a, a+1}; w[0] = 0, then fix parity.
      for (int a = 0; a < k; ++a) w[a + 1] = logicals[a] ^ w[a];
      uint8_t par = 0;
      for (int i = 0; i < n - 1; ++i) par ^= w[i];
      w[n - 1] = par;
    }
    return w;
  }
  ConcatProfile lower = profile.prefix(depth - 1);
  long K = profile_counts(lower).logical;
  if (static_cast<long>(logicals.size()) != K * k)
    throw std::invalid_argument("encode_outcomes: logical count mismatch");
  // Solve for per-sub slot-value vectors realizing the block values, then
  // encode each sub-register.
  std::vector<std::vector<uint8_t>> y(n, std::vector<uint8_t>(K, 0));
  auto v = [&](int a, long j) { return logicals[a * K + j]; };
  for (long j = 0; j < K; ++j) {
    if (basis == 'Z') {
      for (int a = 0; a < k; ++a) y[a + 2][j] = v(a, j) ^ y[a + 1][j];
      uint8_t par = 0;
      for (int s = 1; s < n; ++s) par ^= y[s][j];
      y[0][j] = par;
    } else {
      for (int a = 0; a < k; ++a) y[a + 1][j] = v(a, j) ^ y[a][j];
      uint8_t par = 0;
      for (int s = 0; s < n - 1; ++s) par ^= y[s][j];
      y[n - 1][j] = par;
    }
  }
  std::vector<uint8_t> w;
  for (int s = 0; s < n; ++s) {
    auto sub = encode_outcomes(lower, y[s], basis);
    w.insert(w.end(), sub.begin(), sub.end());
  }
  return w;
}

DecodeResult decode_block(const ConcatProfile& profile,
                          const std::vector<uint8_t>& bits, char basis) {
  int depth = profile.depth();
  int n = profile.n_at(depth);
  int k = profile.k_at(depth);
  long phys = profile_counts(profile).physical;
  if (static_cast<long>(bits.size()) != phys)
    throw std::invalid_argument("decode_block: bit count mismatch");

  if (depth == 1) {
    DecodeResult r;
    r.codeword = bits;
    uint8_t par = 0;
    for (uint8_t b : bits) par ^= b;
    if (par) {
      r.codeword[0] ^= 1;
      r.flagged = true;
    }
    for (int a = 0; a < k; ++a)
      r.logicals.push_back(basis == 'Z'
                               ? r.codeword[a + 1] ^ r.codeword[a + 2]
                               : r.codeword[a] ^ r.codeword[a + 1]);
    return r;
  }

  ConcatProfile lower = profile.prefix(depth - 1);
  long sub_phys = profile_counts(lower).physical;
  long K = profile_counts(lower).logical;
  std::vector<DecodeResult> subs;
  for (int s = 0; s < n; ++s)
    subs.push_back(decode_block(
        lower,
        std::vector<uint8_t>(bits.begin() + s * sub_phys,
                             bits.begin() + (s + 1) * sub_phys),
        basis));

  std::vector<int> erased;
  for (int s = 0; s < n; ++s)
    if (subs[s].flagged) erased.push_back(s);

  DecodeResult r;
  std::vector<std::vector<uint8_t>> y(n);
  for (int s = 0; s < n; ++s) y[s] = subs[s].logicals;
  for (long j = 0; j < K; ++j) {
    uint8_t par = 0;
    for (int s = 0; s < n; ++s) par ^= y[s][j];
    if (erased.empty()) {
      if (par) {
        y[0][j] ^= 1;  // lowest-index guess
        r.flagged = true;
      }
    } else {
      // Treat flagged sub-blocks as erasures; one erasure is corrected
      // exactly by the parity, more remain ambiguous.
      y[erased.front()][j] ^= par;
      if (erased.size() >= 2) r.flagged = true;
    }
  }

  for (int s = 0; s < n; ++s) {
    std::vector<uint8_t> w = y[s] == subs[s].logicals
                                 ? subs[s].codeword
                                 : encode_outcomes(lower, y[s], basis);
    r.codeword.insert(r.codeword.end(), w.begin(), w.end());
  }

  r.logicals.assign(K * k, 0);
  for (int a = 0; a < k; ++a)
    for (long j = 0; j < K; ++j)
      r.logicals[a * K + j] = basis == 'Z' ? y[a + 1][j] ^ y[a + 2][j]
                                           : y[a][j] ^ y[a + 1][j];
  return r;
}

}  // namespace coniq

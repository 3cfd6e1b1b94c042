#pragma once

#include <cstdint>
#include <vector>

#include "coniq/codes.hpp"

namespace coniq {

// Level-by-level hard-decision decoding of a transversal readout string.
// `basis` 'Z' decodes a Z-basis readout (X errors flip bits, values are the
// logical-Z pattern), 'X' the X-basis readout. At level 1 an odd-parity block
// flips its lowest-index bit and raises a flag; at higher levels flagged
// sub-blocks are treated as erasures (one erasure is corrected exactly by
// the block parity; anything ambiguous flips the lowest index and flags up).
struct DecodeResult {
  // Logical values in linear address order (level-1 digit least significant).
  std::vector<uint8_t> logicals;
  bool flagged = false;
  // A consistent corrected outcome string; bits XOR codeword is the error
  // estimate used for the measurement-based correction.
  std::vector<uint8_t> codeword;
};

DecodeResult decode_block(const ConcatProfile& profile,
                          const std::vector<uint8_t>& bits, char basis);

// Canonical valid outcome string realizing the given logical values.
std::vector<uint8_t> encode_outcomes(const ConcatProfile& profile,
                                     const std::vector<uint8_t>& logicals,
                                     char basis);

}  // namespace coniq

#include "coniq/experiment.hpp"

#include <cmath>

#include "coniq/decoder.hpp"

namespace coniq {

ShotDecode decode_shot(const CompiledProgram& prog, const FrameSimulator& sim,
                       const std::vector<uint8_t>& bits,
                       const std::vector<uint8_t>& expected) {
  ShotDecode out;
  std::vector<uint8_t> cz;  // latest X-error estimate (Z-basis correction)
  std::vector<uint8_t> cx;  // latest Z-error estimate (X-basis correction)
  for (const auto& rec : prog.checks) {
    std::vector<uint8_t> b(rec.cells.size());
    for (std::size_t i = 0; i < rec.cells.size(); ++i)
      b[i] = bits[sim.measurement_index(rec.cells[i], rec.occurrence[i])];

    if (rec.purpose == "prep_check") {
      DecodeResult dec = decode_block(rec.profile, b, 'Z');
      bool trivial = !dec.flagged;
      for (uint8_t v : dec.logicals) trivial = trivial && v == 0;
      if (!trivial) out.accepted = false;
      continue;
    }
    if (rec.purpose == "ec_z") {
      DecodeResult dec = decode_block(rec.profile, b, 'Z');
      cz.resize(b.size());
      for (std::size_t i = 0; i < b.size(); ++i)
        cz[i] = b[i] ^ dec.codeword[i];
      continue;
    }
    if (rec.purpose == "ec_x") {
      DecodeResult dec = decode_block(rec.profile, b, 'X');
      cx.resize(b.size());
      for (std::size_t i = 0; i < b.size(); ++i)
        cx[i] = b[i] ^ dec.codeword[i];
      continue;
    }
    // Final readouts: apply the matching correction by register position.
    const std::vector<uint8_t>& corr = rec.basis == 'Z' ? cz : cx;
    if (!corr.empty())
      for (std::size_t i = 0; i < b.size() && i < corr.size(); ++i)
        b[i] ^= corr[i];
    DecodeResult dec = decode_block(rec.profile, b, rec.basis);
    // A flagged decode of a destructive logical readout is a heralded
    // failure: the shot is rejected rather than counted as a logical error.
    if (dec.flagged) out.accepted = false;
    if (rec.purpose == "readout") {
      out.readout = dec.logicals;
      for (std::size_t j = 0; j < dec.logicals.size(); ++j) {
        uint8_t expect = j < expected.size()
                             ? expected[j]
                             : (j < prog.readout_frame.size()
                                    ? prog.readout_frame[j]
                                    : 0);
        if (dec.logicals[j] != expect) out.failure = true;
      }
    } else if (rec.purpose == "logical_meas") {
      long lin = address_linear(rec.profile, rec.address);
      out.logical_meas.push_back(
          {rec.address,
           static_cast<uint8_t>(dec.logicals[lin] ^ rec.frame_flip)});
    }
  }
  return out;
}

std::vector<uint8_t> reference_readout(const CompiledProgram& prog,
                                       const FrameSimulator& sim) {
  return decode_shot(prog, sim, sim.reference_bits()).readout;
}

MemoryPoint memory_point(const CompiledProgram& prog, double p,
                         long min_accepted, long max_shots, uint64_t seed) {
  FrameSimulator sim(prog.placement, prog.physical, NoiseModel::scaled(p),
                     seed);
  std::vector<uint8_t> expected = reference_readout(prog, sim);
  MemoryPoint pt;
  pt.p = p;
  while (pt.accepted < min_accepted && pt.shots < max_shots) {
    std::vector<uint8_t> bits = sim.run_shot(pt.shots);
    ++pt.shots;
    ShotDecode dec = decode_shot(prog, sim, bits, expected);
    if (!dec.accepted) continue;
    ++pt.accepted;
    if (dec.failure) ++pt.failures;
  }
  if (pt.accepted > 0)
    pt.rate = static_cast<double>(pt.failures) / pt.accepted;
  auto [lo, hi] = wilson_interval(pt.failures, pt.accepted);
  pt.lo = lo;
  pt.hi = hi;
  return pt;
}

std::pair<double, double> wilson_interval(long failures, long trials,
                                          double z) {
  if (trials <= 0) return {0.0, 1.0};
  double n = static_cast<double>(trials);
  double phat = static_cast<double>(failures) / n;
  double z2 = z * z;
  double denom = 1.0 + z2 / n;
  double center = (phat + z2 / (2 * n)) / denom;
  double half =
      z * std::sqrt(phat * (1 - phat) / n + z2 / (4 * n * n)) / denom;
  return {std::max(0.0, center - half), std::min(1.0, center + half)};
}

FitResult fit_threshold(const std::vector<std::pair<double, double>>& points) {
  std::vector<std::pair<double, double>> usable;
  for (const auto& [p, pl] : points)
    if (p > 0 && pl > 0) usable.push_back({std::log(p), std::log(pl)});
  if (usable.size() < 2)
    throw DegenerateFit("need at least two points with positive rates");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& [x, y] : usable) {
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  double n = static_cast<double>(usable.size());
  double det = n * sxx - sx * sx;
  if (det == 0) throw DegenerateFit("identical x coordinates");
  FitResult f;
  f.alpha = (n * sxy - sx * sy) / det;
  f.intercept = (sy * sxx - sx * sxy) / det;
  if (std::abs(f.alpha - 1.0) < 1e-9)
    throw DegenerateFit("alpha = 1 has no pseudo-threshold crossing");
  f.p_th = std::exp(f.intercept / (1.0 - f.alpha));
  return f;
}

}  // namespace coniq

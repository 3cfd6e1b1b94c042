#include "coniq/noise.hpp"

#include <stdexcept>

namespace coniq {

uint64_t splitmix64(uint64_t x) {
  x += 0x9e3779b97f4a7c15ull;
  x = (x ^ (x >> 30)) * 0xbf58476d1ce4e5b9ull;
  x = (x ^ (x >> 27)) * 0x94d049bb133111ebull;
  return x ^ (x >> 31);
}

FrameSimulator::FrameSimulator(
    const std::vector<std::pair<int, GridPoint>>& placement,
    const Schedule& physical, const NoiseModel& noise, uint64_t seed)
    : noise_(noise), seed_(seed) {
  for (const auto& [id, p] : placement) {
    (void)p;
    atom_index_[id] = n_atoms_++;
  }

  MachineState mstate = MachineState::from_placement(placement);
  EventTrace trace = execute(mstate, physical);

  // Noiseless reference run on a stabilizer tableau.
  StabilizerTableau tab(n_atoms_);
  std::mt19937_64 ref_rng(splitmix64(seed ^ 0x524546ull));
  std::map<std::pair<long, long>, int> occ;
  for (const auto& ev : trace.events) {
    switch (ev.kind) {
      case EventKind::Gate1: {
        Op op;
        if (ev.gate == "h") op = Op::H;
        else if (ev.gate == "s" || ev.gate == "sdg") op = Op::S;
        else op = Op::PauliGate;
        for (std::size_t i = 0; i < ev.atoms.size(); ++i) {
          int q = atom_index_.at(ev.atoms[i]);
          if (ev.gate == "h") tab.h(q);
          else if (ev.gate == "s") tab.s(q);
          else if (ev.gate == "sdg") tab.sdg(q);
          else if (ev.gate == "x") tab.x(q);
          else if (ev.gate == "z") tab.z(q);
          ops_.push_back({op, q, 0});
          if (noise_.e_1q > 0) ops_.push_back({Op::Depol1, q, 0});
        }
        break;
      }
      case EventKind::CZ:
        for (const auto& [a, b] : ev.pairs) {
          int qa = atom_index_.at(a), qb = atom_index_.at(b);
          tab.cz(qa, qb);
          ops_.push_back({Op::CZ, qa, qb});
          if (noise_.e_2q > 0) ops_.push_back({Op::Depol2, qa, qb});
        }
        break;
      case EventKind::Move:
        if (noise_.e_move > 0)
          for (int a : ev.atoms)
            ops_.push_back({Op::Move1, atom_index_.at(a), 0});
        break;
      case EventKind::Transfer:
        break;
      case EventKind::Measure:
        for (std::size_t i = 0; i < ev.atoms.size(); ++i) {
          int q = atom_index_.at(ev.atoms[i]);
          ref_bits_.push_back(
              static_cast<uint8_t>(tab.measure(q, ref_rng).outcome));
          ops_.push_back({Op::Measure, q, 0});
          std::pair<long, long> cell{
              static_cast<long>(ev.positions[i].x),
              static_cast<long>(ev.positions[i].y)};
          int k = occ[cell]++;
          meas_lookup_[{cell, k}] = meas_cells_.size();
          meas_cells_.push_back({cell, k});
        }
        break;
      case EventKind::Reset:
        for (int a : ev.atoms) {
          int q = atom_index_.at(a);
          tab.reset(q, ref_rng);
          ops_.push_back({Op::Reset, q, 0});
        }
        break;
    }
  }
}

std::size_t FrameSimulator::measurement_index(GridPoint cell,
                                              int occurrence) const {
  auto it = meas_lookup_.find(
      {{static_cast<long>(cell.x), static_cast<long>(cell.y)}, occurrence});
  if (it == meas_lookup_.end())
    throw std::out_of_range("no such measurement (cell/occurrence)");
  return it->second;
}

std::vector<uint8_t> FrameSimulator::run_shot(
    long shot, const std::vector<int>& flip_x,
    const std::vector<int>& flip_z,
    std::vector<FaultRecord>* faults) const {
  std::mt19937_64 rng(splitmix64(seed_ + 0x53484f54ull * (shot + 1)));
  std::uniform_real_distribution<double> uni(0.0, 1.0);
  std::vector<uint8_t> fx(n_atoms_, 0), fz(n_atoms_, 0);
  for (int id : flip_x) fx[atom_index_.at(id)] ^= 1;
  for (int id : flip_z) fz[atom_index_.at(id)] ^= 1;
  std::vector<uint8_t> bits;
  bits.reserve(ref_bits_.size());
  std::size_t mi = 0;
  auto log = [&](std::size_t oi, const FlatOp& o, int q, int p) {
    if (faults) faults->push_back({oi, static_cast<int>(o.op), q, p});
  };
  for (std::size_t oi = 0; oi < ops_.size(); ++oi) {
    const FlatOp& o = ops_[oi];
    switch (o.op) {
      case Op::H:
        std::swap(fx[o.a], fz[o.a]);
        break;
      case Op::S:
        fz[o.a] ^= fx[o.a];
        break;
      case Op::PauliGate:
        break;
      case Op::CZ:
        fz[o.a] ^= fx[o.b];
        fz[o.b] ^= fx[o.a];
        break;
      case Op::Depol1:
        if (uni(rng) < noise_.e_1q) {
          int p = static_cast<int>(rng() % 3) + 1;
          fx[o.a] ^= p & 1;
          fz[o.a] ^= (p >> 1) & 1;
          log(oi, o, o.a, p);
        }
        break;
      case Op::Depol2:
        if (uni(rng) < noise_.e_2q) {
          int p = static_cast<int>(rng() % 15) + 1;
          fx[o.a] ^= p & 1;
          fz[o.a] ^= (p >> 1) & 1;
          fx[o.b] ^= (p >> 2) & 1;
          fz[o.b] ^= (p >> 3) & 1;
          log(oi, o, o.a, p);
        }
        break;
      case Op::Move1:
        if (uni(rng) < noise_.e_move) {
          int p = static_cast<int>(rng() % 3) + 1;
          fx[o.a] ^= p & 1;
          fz[o.a] ^= (p >> 1) & 1;
          log(oi, o, o.a, p);
        }
        break;
      case Op::Measure: {
        uint8_t b = ref_bits_[mi++] ^ fx[o.a];
        if (noise_.e_meas > 0 && uni(rng) < noise_.e_meas) {
          b ^= 1;
          log(oi, o, o.a, 4);
        }
        bits.push_back(b);
        fz[o.a] = 0;
        break;
      }
      case Op::Reset:
        fx[o.a] = 0;
        fz[o.a] = 0;
        if (noise_.e_reset > 0 && uni(rng) < noise_.e_reset) {
          fx[o.a] = 1;
          log(oi, o, o.a, 1);
        }
        break;
    }
  }
  return bits;
}

}  // namespace coniq

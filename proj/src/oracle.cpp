#include "coniq/oracle.hpp"

#include <algorithm>
#include <stdexcept>

namespace coniq {

void encode_zeros(StabilizerTableau& tab, const ConcatProfile& profile,
                  const std::vector<int>& qubits) {
  int depth = profile.depth();
  if (depth == 0) return;
  long block = profile_counts(profile).physical;
  if (static_cast<long>(qubits.size()) != block)
    throw std::invalid_argument("encode_zeros: cell count mismatch");
  int n = profile.n_at(depth);
  long sub = block / n;
  ConcatProfile lower = profile.prefix(depth - 1);
  for (int s = 0; s < n; ++s)
    encode_zeros(tab, lower,
                 std::vector<int>(qubits.begin() + s * sub,
                                  qubits.begin() + (s + 1) * sub));
  // Transversal H on sub-block 0 (|0..0>_L -> |+..+>_L), then transversal
  // CNOT fan-out: GHZ over the logical slots = the logical all-zeros state.
  for (long i = 0; i < sub; ++i) tab.h(qubits[i]);
  for (int s = 1; s < n; ++s)
    for (long i = 0; i < sub; ++i) tab.cx(qubits[i], qubits[s * sub + i]);
}

void replay_trace(StabilizerTableau& tab, const EventTrace& trace,
                  const std::map<int, int>& atom_to_qubit,
                  std::mt19937_64& rng) {
  for (const auto& ev : trace.events) {
    switch (ev.kind) {
      case EventKind::Gate1:
        for (int a : ev.atoms) {
          int q = atom_to_qubit.at(a);
          if (ev.gate == "h") tab.h(q);
          else if (ev.gate == "s") tab.s(q);
          else if (ev.gate == "sdg") tab.sdg(q);
          else if (ev.gate == "x") tab.x(q);
          else if (ev.gate == "z") tab.z(q);
          else throw std::invalid_argument("unknown gate: " + ev.gate);
        }
        break;
      case EventKind::CZ:
        for (const auto& [a, b] : ev.pairs)
          tab.cz(atom_to_qubit.at(a), atom_to_qubit.at(b));
        break;
      case EventKind::Measure:
        for (int a : ev.atoms) tab.measure(atom_to_qubit.at(a), rng);
        break;
      case EventKind::Reset:
        for (int a : ev.atoms) tab.reset(atom_to_qubit.at(a), rng);
        break;
      case EventKind::Move:
      case EventKind::Transfer:
        break;
    }
  }
}

namespace {

// Pauli over the tableau qubits from a cell support list.
PauliOperator op_from_cells(int n_total, char type,
                            const std::vector<GridPoint>& cells,
                            const std::map<GridPoint, int>& cell_to_qubit,
                            const char* what) {
  PauliOperator p(n_total);
  for (const auto& c : cells) {
    auto it = cell_to_qubit.find(c);
    if (it == cell_to_qubit.end())
      throw std::runtime_error(std::string(what) +
                               ": expected cell is unoccupied");
    if (type == 'X') p.x[it->second] ^= 1;
    else p.z[it->second] ^= 1;
  }
  return p;
}

int sym_prod(const std::vector<uint8_t>& a, const PauliOperator& p) {
  int n = static_cast<int>(p.num_qubits());
  int acc = 0;
  for (int q = 0; q < n; ++q)
    acc ^= (a[q] & p.z[q]) ^ (a[n + q] & p.x[q]);
  return acc;
}

}  // namespace

LogicalActionResult logical_action(
    const std::vector<std::pair<int, GridPoint>>& placement,
    const std::vector<CodeRegion>& regions_in,
    const std::vector<CodeRegion>& regions_out, const Schedule& physical,
    uint64_t seed) {
  LogicalActionResult res;
  int n_atoms = static_cast<int>(placement.size());
  int k_total = 0;
  for (const auto& r : regions_in)
    k_total += static_cast<int>(profile_counts(r.profile).logical);
  res.k = k_total;
  int n_total = n_atoms + k_total;

  std::map<int, int> atom_to_qubit;
  std::map<GridPoint, int> cell_to_qubit0;
  for (int i = 0; i < n_atoms; ++i) {
    atom_to_qubit[placement[i].first] = i;
    cell_to_qubit0[placement[i].second] = i;
  }

  StabilizerTableau tab(n_total);
  // Encode each region's data block into logical zeros.
  for (const auto& r : regions_in) {
    std::vector<int> qubits;
    for (const auto& c : register_cells(r.profile, r.layout, r.origin)) {
      auto it = cell_to_qubit0.find(c);
      if (it == cell_to_qubit0.end())
        throw std::runtime_error("region data cell has no atom");
      qubits.push_back(it->second);
    }
    encode_zeros(tab, r.profile, qubits);
  }
  // Maximally entangle each logical qubit with a reference qubit.
  int ref = n_atoms;
  for (const auto& r : regions_in) {
    for (const auto& addr : all_addresses(r.profile)) {
      LogicalSupport ls =
          address_to_physical(r.profile, r.origin, addr, r.layout);
      tab.h(ref);
      for (const auto& c : ls.x_support) tab.cx(ref, cell_to_qubit0.at(c));
      ++ref;
    }
  }

  // Run the schedule on the machine and replay the trace.
  MachineState mstate = MachineState::from_placement(placement);
  EventTrace trace = execute(mstate, physical);
  std::mt19937_64 rng(seed);
  replay_trace(tab, trace, atom_to_qubit, rng);

  // Final cell -> qubit map.
  std::map<GridPoint, int> cell_to_qubitF;
  for (const auto& [id, p] : mstate.placement())
    cell_to_qubitF[p] = atom_to_qubit.at(id);

  // Final logical operators and stabilizers.
  std::vector<PauliOperator> log_x, log_z;
  std::vector<PauliOperator> stabs;
  for (const auto& r : regions_out) {
    for (const auto& addr : all_addresses(r.profile)) {
      LogicalSupport ls =
          address_to_physical(r.profile, r.origin, addr, r.layout);
      log_x.push_back(op_from_cells(n_total, 'X', ls.x_support, cell_to_qubitF,
                                    "logical X"));
      log_z.push_back(op_from_cells(n_total, 'Z', ls.z_support, cell_to_qubitF,
                                    "logical Z"));
    }
    for (const auto& [type, cells] :
         code_stabilizer_supports(r.profile, r.layout, r.origin).generators)
      stabs.push_back(
          op_from_cells(n_total, type, cells, cell_to_qubitF, "stabilizer"));
  }

  // Group generator rows as 2*n_total-bit vectors [x | z].
  std::vector<std::vector<uint8_t>> rows(n_total);
  for (int i = 0; i < n_total; ++i) {
    PauliOperator s = tab.stabilizer(i);
    rows[i] = symplectic_row(s);
  }

  // Eliminate on the reference columns: x-ref bits then z-ref bits.
  std::vector<int> ref_cols;
  for (int i = 0; i < k_total; ++i) ref_cols.push_back(n_atoms + i);
  for (int i = 0; i < k_total; ++i)
    ref_cols.push_back(n_total + n_atoms + i);
  std::vector<int> pivot_row(ref_cols.size(), -1);
  std::vector<char> used(n_total, 0);
  for (std::size_t c = 0; c < ref_cols.size(); ++c) {
    int col = ref_cols[c];
    for (int r = 0; r < n_total; ++r) {
      if (used[r] || !rows[r][col]) continue;
      pivot_row[c] = r;
      used[r] = 1;
      for (int r2 = 0; r2 < n_total; ++r2)
        if (r2 != r && rows[r2][col])
          for (std::size_t b = 0; b < rows[r].size(); ++b)
            rows[r2][b] ^= rows[r][b];
      break;
    }
  }

  // No group element with zero reference part may carry logical content;
  // otherwise the schedule destroyed or leaked logical information.
  for (int r = 0; r < n_total; ++r) {
    if (used[r]) continue;
    for (int j = 0; j < k_total; ++j) {
      if (sym_prod(rows[r], log_z[j]) || sym_prod(rows[r], log_x[j])) {
        res.is_logical = false;
        res.offender = "non-reference group element carries logical content";
        return res;
      }
    }
  }

  // Extract the image of each reference operator.
  auto solve = [&](bool want_x, int idx,
                   std::vector<uint8_t>& g) -> bool {
    std::vector<uint8_t> target(ref_cols.size(), 0);
    target[(want_x ? 0 : k_total) + idx] = 1;
    g.assign(2 * n_total, 0);
    for (std::size_t c = 0; c < ref_cols.size(); ++c) {
      uint8_t bit = g[ref_cols[c]] ^ target[c];
      if (!bit) continue;
      if (pivot_row[c] < 0) return false;
      const auto& pr = rows[pivot_row[c]];
      for (std::size_t b = 0; b < g.size(); ++b) g[b] ^= pr[b];
    }
    for (std::size_t c = 0; c < ref_cols.size(); ++c)
      if (g[ref_cols[c]] != target[c]) return false;
    return true;
  };

  res.matrix.assign(2 * k_total, std::vector<uint8_t>(2 * k_total, 0));
  for (int half = 0; half < 2; ++half) {
    for (int i = 0; i < k_total; ++i) {
      std::vector<uint8_t> g;
      if (!solve(half == 0, i, g)) {
        res.is_logical = false;
        res.offender = std::string(half == 0 ? "X" : "Z") + " logical " +
                       std::to_string(i) + " has no partner in the final group";
        return res;
      }
      // The data part must stay in the code normalizer.
      for (const auto& s : stabs) {
        if (sym_prod(g, s)) {
          res.is_logical = false;
          res.offender = "image anticommutes with a final stabilizer";
          return res;
        }
      }
      auto& row = res.matrix[half * k_total + i];
      for (int j = 0; j < k_total; ++j) {
        row[j] = static_cast<uint8_t>(sym_prod(g, log_z[j]));
        row[k_total + j] = static_cast<uint8_t>(sym_prod(g, log_x[j]));
      }
    }
  }

  // Symplectic sanity: M J M^T = J (preserves commutation relations).
  for (int a = 0; a < 2 * k_total; ++a) {
    for (int b = 0; b < 2 * k_total; ++b) {
      int acc = 0;
      for (int j = 0; j < k_total; ++j)
        acc ^= (res.matrix[a][j] & res.matrix[b][k_total + j]) ^
               (res.matrix[a][k_total + j] & res.matrix[b][j]);
      int expect = (a + k_total == b || b + k_total == a) ? 1 : 0;
      if (acc != expect) {
        res.is_logical = false;
        res.offender = "extracted action is not symplectic";
        return res;
      }
    }
  }
  res.is_logical = true;
  return res;
}

std::vector<std::vector<uint8_t>> symplectic_identity(int k) {
  std::vector<std::vector<uint8_t>> m(2 * k, std::vector<uint8_t>(2 * k, 0));
  for (int i = 0; i < 2 * k; ++i) m[i][i] = 1;
  return m;
}

void symplectic_apply_cnot(std::vector<std::vector<uint8_t>>& m, int ctrl,
                           int tgt) {
  int k = static_cast<int>(m.size()) / 2;
  for (auto& row : m) {
    if (row[ctrl]) row[tgt] ^= 1;          // X_c -> X_c X_t
    if (row[k + tgt]) row[k + ctrl] ^= 1;  // Z_t -> Z_c Z_t
  }
}

void symplectic_apply_swap(std::vector<std::vector<uint8_t>>& m, int a,
                           int b) {
  int k = static_cast<int>(m.size()) / 2;
  for (auto& row : m) {
    std::swap(row[a], row[b]);
    std::swap(row[k + a], row[k + b]);
  }
}

void symplectic_apply_h(std::vector<std::vector<uint8_t>>& m, int q) {
  int k = static_cast<int>(m.size()) / 2;
  for (auto& row : m) std::swap(row[q], row[k + q]);
}

}  // namespace coniq

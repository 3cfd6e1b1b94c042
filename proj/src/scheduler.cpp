#include "coniq/scheduler.hpp"

#include <algorithm>
#include <cmath>
#include <random>
#include <stdexcept>

namespace coniq {

CellKey cell_key(double x, double y) {
  return {std::llround(x * 4), std::llround(y * 4)};
}

std::set<CellKey> instruction_cells(const Instruction& in) {
  std::set<CellKey> cells;
  for (double x : in.cols)
    for (double y : in.rows) cells.insert(cell_key(x, y));
  return cells;
}

DependencyDag build_dag(const std::vector<Instruction>& instrs) {
  DependencyDag dag;
  dag.nodes = instrs;
  dag.preds.resize(instrs.size());
  std::vector<std::set<CellKey>> cells(instrs.size());
  for (std::size_t i = 0; i < instrs.size(); ++i)
    cells[i] = instruction_cells(instrs[i]);
  for (std::size_t j = 0; j < instrs.size(); ++j) {
    for (std::size_t i = 0; i < j; ++i) {
      // Moves and transfers are barriers: anything scheduled between a
      // pick and its drop would run while the AOD is loaded, which is
      // illegal for gadgets whose bodies contain their own moves.
      auto barrier = [](InstrKind k) { return k != InstrKind::Gadget1 &&
                                              k != InstrKind::Gadget2; };
      bool conflict = barrier(instrs[i].kind) || barrier(instrs[j].kind);
      if (!conflict)
        for (const auto& c : cells[i])
          if (cells[j].count(c)) { conflict = true; break; }
      if (conflict) dag.preds[j].push_back(static_cast<int>(i));
    }
  }
  return dag;
}

std::vector<int> front_layer(const DependencyDag& dag,
                             const std::vector<char>& remaining) {
  std::vector<int> front;
  for (std::size_t j = 0; j < dag.nodes.size(); ++j) {
    if (!remaining[j]) continue;
    bool ready = true;
    for (int p : dag.preds[j])
      if (remaining[p]) { ready = false; break; }
    if (ready) front.push_back(static_cast<int>(j));
  }
  return front;
}

std::vector<int> maximal_addressable_set(const DependencyDag& dag,
                                         const std::vector<int>& front,
                                         InstrKind kind,
                                         const std::string& name,
                                         const std::set<CellKey>& occupied) {
  std::vector<int> typed;
  for (int i : front)
    if (dag.nodes[i].kind == kind && dag.nodes[i].name == name)
      typed.push_back(i);
  if (typed.empty())
    throw std::invalid_argument("EmptyType: no instruction of this type");
  // Moves never batch: the whole AOD grid is one operand.
  if (kind == InstrKind::Move) return {typed.front()};

  std::vector<int> batch{typed.front()};
  std::set<double> cols(dag.nodes[typed.front()].cols.begin(),
                        dag.nodes[typed.front()].cols.end());
  std::set<double> rows(dag.nodes[typed.front()].rows.begin(),
                        dag.nodes[typed.front()].rows.end());
  std::set<CellKey> own = instruction_cells(dag.nodes[typed.front()]);
  for (std::size_t t = 1; t < typed.size(); ++t) {
    const Instruction& in = dag.nodes[typed[t]];
    std::set<double> ncols = cols, nrows = rows;
    ncols.insert(in.cols.begin(), in.cols.end());
    nrows.insert(in.rows.begin(), in.rows.end());
    std::set<CellKey> nown = own;
    for (const auto& c : instruction_cells(in)) nown.insert(c);
    // The merged selector closure may touch extra cells only if unoccupied.
    bool ok = true;
    for (double x : ncols) {
      for (double y : nrows) {
        CellKey c = cell_key(x, y);
        if (!nown.count(c) && occupied.count(c)) { ok = false; break; }
      }
      if (!ok) break;
    }
    if (ok) {
      batch.push_back(typed[t]);
      cols = std::move(ncols);
      rows = std::move(nrows);
      own = std::move(nown);
    }
  }
  return batch;
}

Instruction merge_batch(const DependencyDag& dag,
                        const std::vector<int>& batch) {
  Instruction out = dag.nodes[batch.front()];
  std::set<double> cols, rows;
  for (int i : batch) {
    cols.insert(dag.nodes[i].cols.begin(), dag.nodes[i].cols.end());
    rows.insert(dag.nodes[i].rows.begin(), dag.nodes[i].rows.end());
  }
  out.cols.assign(cols.begin(), cols.end());
  out.rows.assign(rows.begin(), rows.end());
  return out;
}

Schedule schedule_greedy(const std::vector<Instruction>& instrs, int level,
                         const std::set<CellKey>& occupied, uint64_t seed) {
  Schedule out;
  out.level = level;
  DependencyDag dag = build_dag(instrs);
  std::vector<char> remaining(instrs.size(), 1);
  std::size_t left = instrs.size();
  std::mt19937_64 rng(seed);
  while (left > 0) {
    std::vector<int> front = front_layer(dag, remaining);
    // Distinct instruction types present, in deterministic order.
    std::vector<std::pair<InstrKind, std::string>> types;
    for (int i : front) {
      std::pair<InstrKind, std::string> t{dag.nodes[i].kind,
                                          dag.nodes[i].name};
      if (std::find(types.begin(), types.end(), t) == types.end())
        types.push_back(t);
    }
    std::sort(types.begin(), types.end(),
              [](const auto& a, const auto& b) {
                if (a.first != b.first)
                  return static_cast<int>(a.first) < static_cast<int>(b.first);
                return a.second < b.second;
              });
    auto [kind, name] = types[rng() % types.size()];
    std::vector<int> batch =
        maximal_addressable_set(dag, front, kind, name, occupied);
    out.layers.push_back({merge_batch(dag, batch)});
    for (int i : batch) {
      remaining[i] = 0;
      --left;
    }
  }
  return out;
}

Schedule schedule_best(const std::vector<Instruction>& instrs, int level,
                       const std::set<CellKey>& occupied, uint64_t seed,
                       int trials) {
  Schedule best;
  bool have = false;
  for (int t = 0; t < std::max(1, trials); ++t) {
    Schedule s = schedule_greedy(instrs, level, occupied, seed + t);
    if (!have || s.layers.size() < best.layers.size()) {
      best = std::move(s);
      have = true;
    }
  }
  return best;
}

Schedule schedule_serial(const std::vector<Instruction>& instrs, int level) {
  Schedule out;
  out.level = level;
  for (const auto& in : instrs) out.layers.push_back({in});
  return out;
}

}  // namespace coniq

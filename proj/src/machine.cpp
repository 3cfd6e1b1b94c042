#include "coniq/machine.hpp"

#include <algorithm>
#include <cmath>

namespace coniq {

namespace {

bool is_integer(double v) { return v == std::floor(v); }

std::vector<double> as_sorted_set(std::vector<double> v) {
  std::sort(v.begin(), v.end());
  v.erase(std::unique(v.begin(), v.end()), v.end());
  return v;
}

}  // namespace

MachineState MachineState::from_placement(
    const std::vector<std::pair<int, GridPoint>>& atoms) {
  MachineState st;
  for (const auto& [id, p] : atoms) {
    if (!is_integer(p.x) || !is_integer(p.y))
      throw std::invalid_argument("SLM placement must be on the integer grid");
    auto key = std::make_pair(static_cast<long>(p.x), static_cast<long>(p.y));
    if (st.S.count(key))
      throw std::invalid_argument("duplicate atom placement");
    st.S[key] = id;
  }
  return st;
}

std::optional<int> MachineState::column_index(double x) const {
  auto it = std::lower_bound(I.begin(), I.end(), x);
  if (it != I.end() && *it == x) return static_cast<int>(it - I.begin());
  return std::nullopt;
}

std::optional<int> MachineState::row_index(double y) const {
  auto it = std::lower_bound(J.begin(), J.end(), y);
  if (it != J.end() && *it == y) return static_cast<int>(it - J.begin());
  return std::nullopt;
}

std::map<int, GridPoint> MachineState::placement() const {
  std::map<int, GridPoint> out;
  for (const auto& [cell, id] : S)
    out[id] = GridPoint{static_cast<double>(cell.first),
                        static_cast<double>(cell.second)};
  for (const auto& [idx, id] : A)
    out[id] = GridPoint{I[idx.first], J[idx.second]};
  return out;
}

static std::optional<Violation> check_increasing(const std::vector<double>& v,
                                                 const char* which) {
  for (std::size_t i = 1; i < v.size(); ++i)
    if (v[i] <= v[i - 1])
      return Violation{"OrderViolation",
                       std::string(which) + " indices (" +
                           std::to_string(i - 1) + "," + std::to_string(i) +
                           ")"};
  return std::nullopt;
}

std::optional<Violation> validate_move(const MachineState& state,
                                       const std::vector<double>& new_cols,
                                       const std::vector<double>& new_rows) {
  if (!state.aod_empty() && (new_cols.size() != state.I.size() ||
                             new_rows.size() != state.J.size()))
    return Violation{"SizeMismatch",
                     "move may resize the AOD grid only when it is empty"};
  if (auto v = check_increasing(new_cols, "columns")) return v;
  if (auto v = check_increasing(new_rows, "rows")) return v;
  return std::nullopt;
}

void apply_move(MachineState& state, const std::vector<double>& new_cols,
                const std::vector<double>& new_rows) {
  if (auto v = validate_move(state, new_cols, new_rows))
    throw ValidationError(*v, -1);
  state.I = new_cols;
  state.J = new_rows;
}

std::vector<int> apply_transfer(MachineState& state, bool to_aod,
                                const std::vector<double>& cols,
                                const std::vector<double>& rows) {
  std::vector<int> moved;
  for (double x : as_sorted_set(cols)) {
    for (double y : as_sorted_set(rows)) {
      if (!is_integer(x) || !is_integer(y)) continue;
      auto cell = std::make_pair(static_cast<long>(x), static_cast<long>(y));
      auto ci = state.column_index(x);
      auto rj = state.row_index(y);
      if (!ci || !rj) continue;
      auto trap = std::make_pair(*ci, *rj);
      if (to_aod) {
        auto sit = state.S.find(cell);
        if (sit == state.S.end() || state.A.count(trap)) continue;
        state.A[trap] = sit->second;
        moved.push_back(sit->second);
        state.S.erase(sit);
      } else {
        auto ait = state.A.find(trap);
        if (ait == state.A.end() || state.S.count(cell)) continue;
        state.S[cell] = ait->second;
        moved.push_back(ait->second);
        state.A.erase(ait);
      }
    }
  }
  return moved;
}

std::vector<std::pair<int, int>> apply_cz(const MachineState& state,
                                          const std::vector<double>& cols,
                                          const std::vector<double>& rows) {
  std::vector<std::pair<int, int>> pairs;
  for (double x : as_sorted_set(cols)) {
    for (double y : as_sorted_set(rows)) {
      if (!is_integer(x) || !is_integer(y)) continue;
      auto sit =
          state.S.find({static_cast<long>(x), static_cast<long>(y)});
      if (sit == state.S.end()) continue;
      auto ci = state.column_index(x);
      auto rj = state.row_index(y);
      if (!ci || !rj) continue;
      auto ait = state.A.find({*ci, *rj});
      if (ait == state.A.end()) continue;
      pairs.emplace_back(ait->second, sit->second);
    }
  }
  return pairs;
}

std::vector<int> apply_gate1(const MachineState& state,
                             const std::vector<double>& cols,
                             const std::vector<double>& rows) {
  std::vector<int> atoms;
  for (double x : as_sorted_set(cols)) {
    for (double y : as_sorted_set(rows)) {
      if (!is_integer(x) || !is_integer(y)) continue;
      auto sit =
          state.S.find({static_cast<long>(x), static_cast<long>(y)});
      if (sit != state.S.end()) atoms.push_back(sit->second);
    }
  }
  return atoms;
}

EventTrace execute(MachineState& state, const Schedule& schedule) {
  if (schedule.level != 0)
    throw std::invalid_argument("execute requires a level-0 schedule");
  EventTrace trace;
  int cycle = 0;
  for (const auto& layer : schedule.layers) {
    for (const auto& in : layer) {
      switch (in.kind) {
        case InstrKind::Move: {
          if (auto v = validate_move(state, in.cols, in.rows))
            throw ValidationError(*v, cycle);
          Event ev;
          ev.cycle = cycle;
          ev.kind = EventKind::Move;
          for (const auto& [idx, id] : state.A) ev.atoms.push_back(id);
          state.I = in.cols;
          state.J = in.rows;
          if (!ev.atoms.empty()) trace.events.push_back(std::move(ev));
          break;
        }
        case InstrKind::TransferStoA:
        case InstrKind::TransferAtoS: {
          Event ev;
          ev.cycle = cycle;
          ev.kind = EventKind::Transfer;
          ev.atoms = apply_transfer(state, in.kind == InstrKind::TransferStoA,
                                    in.cols, in.rows);
          if (!ev.atoms.empty()) trace.events.push_back(std::move(ev));
          break;
        }
        case InstrKind::Gadget1: {
          Event ev;
          ev.cycle = cycle;
          for (double x : as_sorted_set(in.cols)) {
            for (double y : as_sorted_set(in.rows)) {
              if (!is_integer(x) || !is_integer(y)) continue;
              auto sit =
                  state.S.find({static_cast<long>(x), static_cast<long>(y)});
              if (sit == state.S.end()) continue;
              ev.atoms.push_back(sit->second);
              ev.positions.push_back(GridPoint{x, y});
            }
          }
          if (in.name == "measure_z") {
            ev.kind = EventKind::Measure;
          } else if (in.name == "reset") {
            ev.kind = EventKind::Reset;
          } else if (in.name == "x" || in.name == "z" || in.name == "h" ||
                     in.name == "s" || in.name == "sdg") {
            ev.kind = EventKind::Gate1;
            ev.gate = in.name;
          } else {
            throw ValidationError(
                Violation{"SelectorError",
                          "unknown level-0 primitive: " + in.name},
                cycle);
          }
          if (!ev.atoms.empty()) trace.events.push_back(std::move(ev));
          break;
        }
        case InstrKind::Gadget2: {
          if (in.name != "cz")
            throw ValidationError(
                Violation{"SelectorError",
                          "unknown level-0 two-qubit primitive: " + in.name},
                cycle);
          Event ev;
          ev.cycle = cycle;
          ev.kind = EventKind::CZ;
          ev.pairs = apply_cz(state, in.cols, in.rows);
          if (!ev.pairs.empty()) trace.events.push_back(std::move(ev));
          break;
        }
      }
    }
    ++cycle;
  }
  return trace;
}

}  // namespace coniq

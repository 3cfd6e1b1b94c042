#include "coniq/vair.hpp"

#include <algorithm>

namespace coniq {

std::optional<Violation> validate_level(const LevelState& state,
                                        const Instruction& instr) {
  if (instr.kind == InstrKind::Move) {
    if (auto v = validate_move(state.state, instr.cols, instr.rows)) return v;
    if (state.level >= 1) {
      // Unit-gap rule: virtual-atom AOD coordinates must stay >= 1 apart so
      // that tensor expansion cannot interleave neighboring blocks.
      for (const auto* lst : {&instr.cols, &instr.rows})
        for (std::size_t i = 1; i < lst->size(); ++i)
          if ((*lst)[i] - (*lst)[i - 1] < 1.0)
            return Violation{"OrderViolation",
                             "level >= 1 AOD coordinates need gaps >= 1"};
    }
  }
  return std::nullopt;
}

void run_level_schedule(LevelState& state, const Schedule& schedule) {
  if (schedule.level != state.level)
    throw std::invalid_argument("schedule level mismatch");
  if (state.level == 0) {
    execute(state.state, schedule);
    return;
  }
  int cycle = 0;
  for (const auto& layer : schedule.layers) {
    for (const auto& in : layer) {
      if (auto v = validate_level(state, in)) throw ValidationError(*v, cycle);
      switch (in.kind) {
        case InstrKind::Move:
          state.state.I = in.cols;
          state.state.J = in.rows;
          break;
        case InstrKind::TransferStoA:
        case InstrKind::TransferAtoS:
          apply_transfer(state.state, in.kind == InstrKind::TransferStoA,
                         in.cols, in.rows);
          break;
        case InstrKind::Gadget1:
        case InstrKind::Gadget2:
          break;  // no register movement at this level
      }
    }
    ++cycle;
  }
}

std::vector<double> tensor_expand(const std::vector<double>& positions,
                                  const std::vector<double>& rel, int stride) {
  std::vector<double> out;
  out.reserve(positions.size() * rel.size());
  for (double p : positions)
    for (double r : rel) out.push_back(p * stride + r);
  std::sort(out.begin(), out.end());
  for (std::size_t i = 1; i < out.size(); ++i)
    if (out[i] == out[i - 1])
      throw CollisionError("tensor_expand: duplicate coordinate");
  return out;
}

static std::vector<double> to_doubles(const std::vector<int>& v) {
  return std::vector<double>(v.begin(), v.end());
}

Instruction lower_move(const Instruction& instr, const CoordMap& map) {
  return Instruction::move(
      tensor_expand(instr.cols, to_doubles(map.offs_x), map.stride_x),
      tensor_expand(instr.rows, to_doubles(map.offs_y), map.stride_y));
}

Instruction lower_transfer(const Instruction& instr, const CoordMap& map) {
  Instruction out = instr;
  out.cols = tensor_expand(instr.cols, to_doubles(map.offs_x), map.stride_x);
  out.rows = tensor_expand(instr.rows, to_doubles(map.offs_y), map.stride_y);
  return out;
}

Schedule lower_gadget(const Instruction& instr, const GadgetTemplate& tmpl,
                      const CoordMap& map) {
  Schedule out;
  out.level = tmpl.level - 1;
  for (const auto& layer : tmpl.body.layers) {
    std::vector<Instruction> nl;
    for (const auto& b : layer) {
      Instruction e = b;
      e.cols = tensor_expand(instr.cols, b.cols, map.stride_x);
      e.rows = tensor_expand(instr.rows, b.rows, map.stride_y);
      nl.push_back(std::move(e));
    }
    out.layers.push_back(std::move(nl));
  }
  return out;
}

static const GadgetTemplate& find_template(const TemplateLibrary& templates,
                                           const std::string& name,
                                           int level) {
  auto it = templates.find({name, level});
  if (it == templates.end())
    throw MissingTemplate("no template for gadget '" + name + "' at level " +
                          std::to_string(level));
  return it->second;
}

Schedule lower_schedule(const Schedule& schedule, const CoordMap& map,
                        const TemplateLibrary& templates) {
  if (schedule.level < 1)
    throw std::invalid_argument("cannot lower a level-0 schedule");
  Schedule out;
  out.level = schedule.level - 1;
  for (const auto& layer : schedule.layers) {
    // Expand each instruction to its layer list, then merge position-wise.
    std::vector<std::vector<std::vector<Instruction>>> expansions;
    std::size_t cycles = 0;
    for (const auto& in : layer) {
      std::vector<std::vector<Instruction>> exp;
      switch (in.kind) {
        case InstrKind::Move:
          exp.push_back({lower_move(in, map)});
          break;
        case InstrKind::TransferStoA:
        case InstrKind::TransferAtoS:
          exp.push_back({lower_transfer(in, map)});
          break;
        case InstrKind::Gadget1:
        case InstrKind::Gadget2: {
          Schedule g = lower_gadget(
              in, find_template(templates, in.name, schedule.level), map);
          exp = std::move(g.layers);
          break;
        }
      }
      if (!expansions.empty() && exp.size() != cycles)
        throw std::logic_error(
            "layer mixes instructions with different cycle counts");
      cycles = exp.size();
      expansions.push_back(std::move(exp));
    }
    for (std::size_t c = 0; c < cycles; ++c) {
      std::vector<Instruction> merged;
      for (auto& exp : expansions)
        for (auto& in : exp[c]) merged.push_back(std::move(in));
      out.layers.push_back(std::move(merged));
    }
  }
  return out;
}

Schedule lower_to_physical(const Schedule& schedule,
                           const std::vector<CoordMap>& layout,
                           const TemplateLibrary& templates) {
  Schedule s = schedule;
  while (s.level > 0) {
    if (s.level > static_cast<int>(layout.size()))
      throw std::invalid_argument("schedule level exceeds layout depth");
    s = lower_schedule(s, layout[s.level - 1], templates);
  }
  return s;
}

// Cycle count of one instruction at level `lv` when lowered to level
// `target` (target <= lv).
static long instr_cycles(const Instruction& in, int lv, int target,
                         const TemplateLibrary& templates) {
  if (lv == target) return 1;
  if (in.kind != InstrKind::Gadget1 && in.kind != InstrKind::Gadget2) return 1;
  const GadgetTemplate& t = find_template(templates, in.name, lv);
  long total = 0;
  for (const auto& layer : t.body.layers) {
    long mx = 1;
    for (const auto& b : layer)
      mx = std::max(mx, instr_cycles(b, lv - 1, target, templates));
    total += mx;
  }
  return total;
}

std::vector<long> template_cycles_per_level(const std::string& name, int level,
                                            const TemplateLibrary& templates) {
  const GadgetTemplate& t = find_template(templates, name, level);
  std::vector<long> out(level);
  for (int target = 0; target < level; ++target) {
    long total = 0;
    for (const auto& layer : t.body.layers) {
      long mx = 1;
      for (const auto& b : layer)
        mx = std::max(mx, instr_cycles(b, level - 1, target, templates));
      total += mx;
    }
    out[target] = total;
  }
  return out;
}

}  // namespace coniq

#include "coniq/gadgets.hpp"

#include <algorithm>
#include <stdexcept>

#include "coniq/oracle.hpp"

namespace coniq {

std::vector<CircuitOp> encoding_circuit(const CodeSpec& code) {
  std::vector<CircuitOp> ops;
  ops.push_back({"h", 0, -1});
  for (int i = 1; i < code.n; ++i) ops.push_back({"cx", 0, i});
  return ops;
}

namespace {

// Axis helper: template bodies are one-dimensional along the arrangement
// axis of their level; the perpendicular coordinate is always 0.
struct Ax {
  bool x;

  std::vector<double> cols(std::vector<double> along) const {
    return x ? std::move(along) : std::vector<double>{0};
  }
  std::vector<double> rows(std::vector<double> along) const {
    return x ? std::vector<double>{0} : std::move(along);
  }
  Instruction mv(std::vector<double> along) const {
    return Instruction::move(cols(along), rows(along));
  }
  Instruction mv1(double p) const { return mv({p}); }
  Instruction tr(bool to_aod, std::vector<double> along) const {
    auto c = cols(along);
    auto r = rows(along);
    return Instruction::transfer(to_aod, std::move(c), std::move(r));
  }
  Instruction g1(const std::string& name, std::vector<double> along) const {
    auto c = cols(along);
    auto r = rows(along);
    return Instruction::gadget1(name, std::move(c), std::move(r));
  }
  Instruction g2(const std::string& name, std::vector<double> along) const {
    auto c = cols(along);
    auto r = rows(along);
    return Instruction::gadget2(name, std::move(c), std::move(r));
  }
};

std::vector<double> iota(int from, int to) {  // inclusive range
  std::vector<double> v;
  for (int i = from; i <= to; ++i) v.push_back(i);
  return v;
}

uint64_t fnv1a(const std::string& s, uint64_t seed) {
  uint64_t h = 14695981039346656037ull ^ seed;
  for (char c : s) {
    h ^= static_cast<unsigned char>(c);
    h *= 1099511628211ull;
  }
  return h;
}

GadgetTemplate make_template(const std::string& name, int level, const Ax& ax,
                             int n, std::vector<Instruction> instrs,
                             const GadgetOptions& opts,
                             const std::string& summary) {
  GadgetTemplate t;
  t.name = name;
  t.level = level;
  t.summary = summary;
  if (opts.sequential) {
    t.body = schedule_serial(instrs, level - 1);
  } else {
    std::set<CellKey> occupied;
    for (int c = 0; c < 2 * n; ++c)
      occupied.insert(ax.x ? cell_key(c, 0) : cell_key(0, c));
    t.body = schedule_best(instrs, level - 1, occupied,
                           fnv1a(name, opts.seed) + level, opts.sched_trials);
  }
  t.cycles = static_cast<int>(t.body.layers.size());
  return t;
}

// Fan-out encoding step shared by the raw and verified preparations: pick
// sub-register `base`, copy it transversally onto the n-1 cells above it,
// and return it home.
void append_fan(std::vector<Instruction>& ins, const Ax& ax, int n, int base) {
  ins.push_back(ax.mv1(base));
  ins.push_back(ax.tr(true, {static_cast<double>(base)}));
  for (int i = 1; i < n; ++i) {
    ins.push_back(ax.mv1(base + i));
    ins.push_back(ax.g2("cnot", {static_cast<double>(base + i)}));
  }
  ins.push_back(ax.mv1(base));
  ins.push_back(ax.tr(false, {static_cast<double>(base)}));
}

// Unverified logical all-zeros encoding: recursively prepare the data
// sub-registers, put sub-register 0 into logical |+...+>, and fan it out.
std::vector<Instruction> prep_raw_body(int level, const Ax& ax, int n) {
  std::vector<Instruction> ins;
  if (level == 1) {
    ins.push_back(ax.g1("reset", iota(0, n - 1)));
    ins.push_back(ax.g1("h", {0}));
    ins.push_back(ax.mv1(0));
    ins.push_back(ax.tr(true, {0}));
    for (int i = 1; i < n; ++i) {
      ins.push_back(ax.mv1(i));
      ins.push_back(ax.g1("h", {static_cast<double>(i)}));
      ins.push_back(ax.g2("cz", {static_cast<double>(i)}));
      ins.push_back(ax.g1("h", {static_cast<double>(i)}));
    }
    ins.push_back(ax.mv1(0));
    ins.push_back(ax.tr(false, {0}));
    return ins;
  }
  for (int c = 0; c < n; ++c)
    ins.push_back(ax.g1("prep_raw", {static_cast<double>(c)}));
  ins.push_back(ax.g1("h_trans", {0}));
  append_fan(ins, ax, n, 0);
  return ins;
}

// Verified preparation: encode the data register (cells 0..n-1) and an
// independent reference copy (cells n..2n-1) without verification, XOR the
// data onto the reference with one broadcast transversal CNOT, and measure
// the reference. A fault-free run leaves the reference in logical all-zeros,
// so any flagged or nonzero decode of its outcomes rejects the preparation.
std::vector<Instruction> prep_body(int level, const Ax& ax, int n) {
  if (level == 1) return prep_raw_body(1, ax, n);
  std::vector<Instruction> ins;
  for (int c = 0; c < 2 * n; ++c)
    ins.push_back(ax.g1("prep_raw", {static_cast<double>(c)}));
  ins.push_back(ax.g1("h_trans", {0}));
  ins.push_back(ax.g1("h_trans", {static_cast<double>(n)}));
  append_fan(ins, ax, n, 0);
  append_fan(ins, ax, n, n);
  ins.push_back(ax.mv(iota(0, n - 1)));
  ins.push_back(ax.tr(true, iota(0, n - 1)));
  ins.push_back(ax.mv(iota(n, 2 * n - 1)));
  ins.push_back(ax.g2("cnot", iota(n, 2 * n - 1)));
  ins.push_back(ax.mv(iota(0, n - 1)));
  ins.push_back(ax.tr(false, iota(0, n - 1)));
  for (int c = n; c < 2 * n; ++c)
    ins.push_back(ax.g1("measure_z", {static_cast<double>(c)}));
  return ins;
}

// Transposition of sub-register cells (a, b) through the always-free parking
// cell at offset 2n, using a 1x1 AOD grid.
std::vector<Instruction> transposition_body(const Ax& ax, int n, int a, int b) {
  double park = 2 * n;
  std::vector<Instruction> ins;
  auto hop = [&](double from, double to) {
    ins.push_back(ax.mv1(from));
    ins.push_back(ax.tr(true, {from}));
    ins.push_back(ax.mv1(to));
    ins.push_back(ax.tr(false, {to}));
  };
  hop(a, park);
  hop(b, a);
  hop(park, b);
  return ins;
}

}  // namespace

TemplateLibrary build_templates(const ConcatProfile& profile,
                                const std::vector<CoordMap>& layout,
                                const GadgetOptions& opts) {
  TemplateLibrary lib;
  int depth = profile.depth();
  for (int l = 1; l <= depth; ++l) {
    const CoordMap& m = layout[l - 1];
    Ax ax{m.offs_x.size() > 1};
    int n = profile.n_at(l);
    std::vector<double> data = iota(0, n - 1);
    auto add = [&](const std::string& name, std::vector<Instruction> ins,
                   const std::string& summary) {
      lib[{name, l}] =
          make_template(name, l, ax, n, std::move(ins), opts, summary);
    };

    add("reset", {ax.g1("reset", data)}, "transversal reset of the data cells");
    add("measure_z", {ax.g1("measure_z", data)},
        "transversal Z measurement of the data cells");
    if (l == 1) {
      add("h_trans", {ax.g1("h", data)}, "transversal Hadamard");
      add("measure_x", {ax.g1("h", data), ax.g1("measure_z", data)},
          "transversal X measurement of the data cells");
      lib[{"cnot", 1}] = make_template(
          "cnot", 1, ax, n,
          {ax.g1("h", data), ax.g2("cz", data), ax.g1("h", data)}, opts,
          "transversal CNOT, AOD register is the control");
    } else {
      add("h_trans", {ax.g1("h_trans", data)}, "transversal Hadamard");
      add("measure_x", {ax.g1("measure_x", data)},
          "transversal X measurement of the data cells");
      lib[{"cnot", l}] =
          make_template("cnot", l, ax, n, {ax.g2("cnot", data)}, opts,
                        "transversal CNOT, AOD register is the control");
    }
    add("prep_raw", prep_raw_body(l, ax, n),
        "unverified logical all-zeros encoding");
    add("prep", prep_body(l, ax, n),
        "verified logical all-zeros preparation");

    // Automorphism gadgets for every dimension d <= l: pass-through above
    // their own level, a sub-register transposition at level d.
    for (int d = 1; d <= l; ++d) {
      std::string suffix = "@" + std::to_string(d);
      int nd = profile.n_at(d);
      const CoordMap& md = layout[d - 1];
      Ax axd{md.offs_x.size() > 1};
      struct Perm {
        const char* base;
        int a, b;
        const char* what;
      };
      for (const Perm& p :
           {Perm{"swap", 0, 2, "logical SWAP along dimension "},
            Perm{"cnotf", 1, 2, "logical CNOT (index0 -> index1) along dimension "},
            Perm{"cnotr", 0, 1, "logical CNOT (index1 -> index0) along dimension "}}) {
        std::string name = std::string(p.base) + suffix;
        std::vector<Instruction> ins =
            (d == l) ? transposition_body(axd, nd, p.a, p.b)
                     : std::vector<Instruction>{ax.g1(name, data)};
        add(name, std::move(ins), p.what + std::to_string(d));
      }
    }
  }
  return lib;
}

namespace {

void atoms_rec(const ConcatProfile& profile,
               const std::vector<CoordMap>& layout, int level, double x,
               double y, int& next_id,
               std::vector<std::pair<int, GridPoint>>& out) {
  if (level == 0) {
    out.push_back({next_id++, GridPoint{x, y}});
    return;
  }
  const CoordMap& m = layout[level - 1];
  bool ax = m.offs_x.size() > 1;
  int n = profile.n_at(level);
  for (int c = 0; c < n; ++c)
    atoms_rec(profile, layout, level - 1, x * m.stride_x + (ax ? c : 0),
              y * m.stride_y + (ax ? 0 : c), next_id, out);
}

// Origins of the top-level reference cells (offsets n..2n-1) used by the
// verified preparation; empty below depth 2.
std::vector<GridPoint> reference_origins(const ConcatProfile& profile,
                                         const std::vector<CoordMap>& layout,
                                         GridPoint origin) {
  std::vector<GridPoint> out;
  int depth = profile.depth();
  if (depth < 2) return out;
  const CoordMap& m = layout[depth - 1];
  bool ax = m.offs_x.size() > 1;
  int n = profile.n_at(depth);
  for (int c = n; c < 2 * n; ++c)
    out.push_back({origin.x * m.stride_x + (ax ? c : 0),
                   origin.y * m.stride_y + (ax ? 0 : c)});
  return out;
}

}  // namespace

std::vector<std::pair<int, GridPoint>> register_atoms(
    const ConcatProfile& profile, const std::vector<CoordMap>& layout,
    GridPoint origin, int& next_id) {
  std::vector<std::pair<int, GridPoint>> out;
  atoms_rec(profile, layout, profile.depth(), origin.x, origin.y, next_id,
            out);
  int depth = profile.depth();
  ConcatProfile sub = profile.prefix(depth - 1);
  for (const GridPoint& o : reference_origins(profile, layout, origin))
    atoms_rec(sub, layout, depth - 1, o.x, o.y, next_id, out);
  return out;
}

std::vector<CheckBlock> prep_check_blocks(const ConcatProfile& profile,
                                          const std::vector<CoordMap>& layout,
                                          GridPoint origin) {
  std::vector<CheckBlock> out;
  int depth = profile.depth();
  if (depth < 2) return out;
  ConcatProfile sub = profile.prefix(depth - 1);
  std::vector<CoordMap> sub_layout(layout.begin(), layout.end() - 1);
  std::vector<GridPoint> cells;
  for (const GridPoint& o : reference_origins(profile, layout, origin)) {
    std::vector<GridPoint> sc = register_cells(sub, sub_layout, o);
    cells.insert(cells.end(), sc.begin(), sc.end());
  }
  // The reference is a full copy of the register, decoded as one block.
  out.push_back({profile, std::move(cells)});
  return out;
}

TopEmitter::TopEmitter(ConcatProfile profile, std::vector<CoordMap> layout)
    : profile_(std::move(profile)), layout_(std::move(layout)) {}

void TopEmitter::note_measured(const std::vector<GridPoint>& cells,
                               std::vector<int>& occ_out) {
  occ_out.clear();
  for (const auto& c : cells)
    occ_out.push_back(
        meas_count_[{static_cast<long>(c.x), static_cast<long>(c.y)}]++);
}

void TopEmitter::record_prep_checks(GridPoint reg) {
  for (auto& cb : prep_check_blocks(profile_, layout_, reg)) {
    CheckRecord rec;
    rec.purpose = "prep_check";
    rec.profile = cb.profile;
    rec.basis = 'Z';
    rec.cells = std::move(cb.cells);
    note_measured(rec.cells, rec.occurrence);
    checks_.push_back(std::move(rec));
  }
}

void TopEmitter::prep(GridPoint reg) {
  instrs_.push_back(Instruction::gadget1("prep", {reg.x}, {reg.y}));
  record_prep_checks(reg);
}

void TopEmitter::h_trans(GridPoint reg) {
  instrs_.push_back(Instruction::gadget1("h_trans", {reg.x}, {reg.y}));
}

void TopEmitter::reset_reg(GridPoint reg) {
  instrs_.push_back(Instruction::gadget1("reset", {reg.x}, {reg.y}));
}

void TopEmitter::measure_reg(GridPoint reg, char basis,
                             const std::string& purpose,
                             const RegisterAddress& addr, uint8_t frame_flip) {
  instrs_.push_back(Instruction::gadget1(
      basis == 'X' ? "measure_x" : "measure_z", {reg.x}, {reg.y}));
  CheckRecord rec;
  rec.purpose = purpose;
  rec.profile = profile_;
  rec.basis = basis;
  rec.cells = register_cells(profile_, layout_, reg);
  rec.address = addr;
  rec.frame_flip = frame_flip;
  note_measured(rec.cells, rec.occurrence);
  checks_.push_back(std::move(rec));
}

void TopEmitter::logical_measure(GridPoint reg, const RegisterAddress& addr,
                                 uint8_t frame_flip) {
  int work = pool_acquire();
  GridPoint wp = pool_position(work);
  addressable_cnot(reg, addr, wp, addr);
  measure_reg(wp, 'Z', "logical_meas", addr, frame_flip);
  pool_release(work, true);
}

void TopEmitter::automorphism(GridPoint reg, const std::string& name) {
  instrs_.push_back(Instruction::gadget1(name, {reg.x}, {reg.y}));
}

void TopEmitter::emit_pick(GridPoint reg) {
  instrs_.push_back(Instruction::move({reg.x}, {reg.y}));
  instrs_.push_back(Instruction::transfer(true, {reg.x}, {reg.y}));
}

void TopEmitter::emit_hover(GridPoint reg) {
  instrs_.push_back(Instruction::move({reg.x}, {reg.y}));
}

void TopEmitter::emit_drop(GridPoint reg) {
  instrs_.push_back(Instruction::move({reg.x}, {reg.y}));
  instrs_.push_back(Instruction::transfer(false, {reg.x}, {reg.y}));
}

void TopEmitter::transversal_cnot(GridPoint ctrl, GridPoint tgt) {
  emit_pick(ctrl);
  emit_hover(tgt);
  instrs_.push_back(Instruction::gadget2("cnot", {tgt.x}, {tgt.y}));
  emit_drop(ctrl);
}

int TopEmitter::pool_acquire() {
  int idx = -1;
  for (std::size_t i = 0; i < pool_dirty_.size(); ++i) {
    if (!pool_busy_[i] && !pool_dirty_[i]) {
      idx = static_cast<int>(i);
      break;
    }
  }
  if (idx < 0) {
    for (std::size_t i = 0; i < pool_dirty_.size(); ++i) {
      if (!pool_busy_[i]) {
        idx = static_cast<int>(i);
        break;
      }
    }
  }
  bool fresh = false;
  if (idx < 0) {
    idx = static_cast<int>(pool_dirty_.size());
    pool_dirty_.push_back(1);
    pool_busy_.push_back(0);
    fresh = true;
  }
  pool_busy_[idx] = 1;
  if (pool_dirty_[idx] || fresh) {
    prep(pool_position(idx));
    pool_dirty_[idx] = 0;
  }
  return idx;
}

void TopEmitter::pool_release(int idx, bool dirty) {
  pool_busy_[idx] = 0;
  if (dirty) pool_dirty_[idx] = 1;
}

void TopEmitter::addressable_cnot(GridPoint ctrl_reg,
                                  const RegisterAddress& ctrl,
                                  GridPoint tgt_reg,
                                  const RegisterAddress& tgt) {
  for (int n : profile_.levels)
    if (n != 4)
      throw UnsupportedGate(
          "addressable CNOT requires an all-D4 profile (dimension size " +
          std::to_string(n) + " has no per-index selection chain)");
  if (!address_valid(profile_, ctrl) || !address_valid(profile_, tgt))
    throw std::out_of_range("AddressOutOfRange");
  if (ctrl_reg == tgt_reg && ctrl == tgt)
    throw std::invalid_argument("control and target addresses coincide");
  int depth = profile_.depth();

  std::vector<int> anc(depth);
  for (int d = 0; d < depth; ++d) anc[d] = pool_acquire();
  auto pos = [&](int d) {  // chain register A_d; A_0 is the control register
    return d == 0 ? ctrl_reg : pool_position(anc[d - 1]);
  };
  // One selection block: A_d ^= B_d(A_{d-1}) where B_d kills every slot
  // except control-digit d and lands the result on the complementary index.
  auto block = [&](int d) {
    const char* base = ctrl.indices[d - 1] == 0 ? "cnotf@" : "cnotr@";
    transversal_cnot(pos(d - 1), pos(d));
    automorphism(pos(d), base + std::to_string(d));
    transversal_cnot(pos(d - 1), pos(d));
  };

  std::vector<int> swap_dims;
  for (int d = 1; d <= depth; ++d)
    if (1 - ctrl.indices[d - 1] != tgt.indices[d - 1]) swap_dims.push_back(d);

  for (int d = 1; d <= depth; ++d) block(d);
  for (int d = depth - 1; d >= 1; --d) block(d);
  for (int d : swap_dims)
    automorphism(pos(depth), "swap@" + std::to_string(d));
  transversal_cnot(pos(depth), tgt_reg);
  for (int d : swap_dims)
    automorphism(pos(depth), "swap@" + std::to_string(d));
  for (int d = 1; d <= depth - 1; ++d) block(d);
  block(depth);
  for (int d = depth - 1; d >= 1; --d) block(d);

  // The chain returns to logical all-zeros exactly.
  for (int d = 0; d < depth; ++d) pool_release(anc[d], false);
}

void TopEmitter::addressable_h(GridPoint reg, const RegisterAddress& addr) {
  int work = pool_acquire();
  GridPoint wp = pool_position(work);
  // Swap the addressed logical into the fresh work register, apply the
  // transversal Hadamard there (logical H composed with the per-dimension
  // index complement), and swap it back from the complemented address.
  addressable_cnot(reg, addr, wp, addr);
  addressable_cnot(wp, addr, reg, addr);
  addressable_cnot(reg, addr, wp, addr);
  h_trans(wp);
  RegisterAddress comp;
  for (int v : addr.indices) comp.indices.push_back(1 - v);
  addressable_cnot(wp, comp, reg, addr);
  addressable_cnot(reg, addr, wp, comp);
  addressable_cnot(wp, comp, reg, addr);
  // The other work slots are left in |+>; the register needs re-preparation.
  pool_release(work, true);
}

void TopEmitter::ec_round(GridPoint reg) {
  int zi = pool_acquire();
  int xi = pool_acquire();
  GridPoint zp = pool_position(zi);
  GridPoint xp = pool_position(xi);
  // X-error syndrome: a logical |+...+> ancilla absorbs the CNOT (target in
  // |+> is a logical no-op), receives a copy of the data's X errors, and is
  // read out destructively in Z. Its decoded logical value is random; only
  // the deviation from the nearest codeword is used.
  h_trans(zp);
  transversal_cnot(reg, zp);
  measure_reg(zp, 'Z', "ec_z");
  // Z-error syndrome: a logical all-zeros ancilla drives the CNOT (control
  // in |0> is a logical no-op), picks up the data's Z errors through the
  // CNOT back-action, and is read out destructively in X.
  transversal_cnot(xp, reg);
  measure_reg(xp, 'X', "ec_x");
  pool_release(zi, true);
  pool_release(xi, true);
}

std::vector<std::vector<uint8_t>> automorphism_action(
    const ConcatProfile& profile, const std::string& name) {
  auto at = name.find('@');
  if (at == std::string::npos)
    throw std::invalid_argument("not an automorphism gadget: " + name);
  std::string base = name.substr(0, at);
  int d = std::stoi(name.substr(at + 1));
  if (profile.k_at(d) != 2)
    throw UnsupportedGate("automorphism action is only defined for D4 levels");
  int k_total = static_cast<int>(profile_counts(profile).logical);
  auto m = symplectic_identity(k_total);
  for (const auto& a : all_addresses(profile)) {
    if (a.indices[d - 1] != 0) continue;
    RegisterAddress b = a;
    b.indices[d - 1] = 1;
    int ia = static_cast<int>(address_linear(profile, a));
    int ib = static_cast<int>(address_linear(profile, b));
    if (base == "swap") symplectic_apply_swap(m, ia, ib);
    else if (base == "cnotf") symplectic_apply_cnot(m, ia, ib);
    else if (base == "cnotr") symplectic_apply_cnot(m, ib, ia);
    else throw std::invalid_argument("unknown automorphism: " + base);
  }
  return m;
}

}  // namespace coniq

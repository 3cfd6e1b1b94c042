#include "coniq/pipeline.hpp"

#include <algorithm>
#include <chrono>
#include <sstream>

#include "coniq/scheduler.hpp"

namespace coniq {

RegisterAddress linear_address(const ConcatProfile& profile, long lin) {
  RegisterAddress a;
  long rem = lin;
  for (int j = 0; j < profile.depth(); ++j) {
    int k = profile.k_at(j + 1);
    a.indices.push_back(static_cast<int>(rem % k));
    rem /= k;
  }
  if (rem != 0) throw std::out_of_range("linear address out of range");
  return a;
}

namespace {

RegisterAddress parse_operand(const std::string& tok) {
  // Dotted = explicit digits; plain integer = linear index (marked by a
  // single negative placeholder resolved against the profile later).
  if (tok.find('.') != std::string::npos) return parse_address(tok);
  std::size_t pos = 0;
  long v = std::stol(tok, &pos);
  if (pos != tok.size() || v < 0) throw ParseError("bad address: " + tok);
  RegisterAddress a;
  a.indices = {-1, static_cast<int>(v)};  // sentinel: linear form
  return a;
}

bool is_linear_form(const RegisterAddress& a) {
  return a.indices.size() == 2 && a.indices[0] == -1;
}

RegisterAddress resolve(const ConcatProfile& profile,
                        const RegisterAddress& a) {
  if (is_linear_form(a)) return linear_address(profile, a.indices[1]);
  if (!address_valid(profile, a))
    throw std::out_of_range("AddressOutOfRange: " + a.str());
  return a;
}

}  // namespace

LogicalCircuit parse_circuit(const std::string& text) {
  LogicalCircuit c;
  std::istringstream in(text);
  std::string line;
  int lineno = 0;
  bool have_qubits = false;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    std::string op;
    if (!(ls >> op)) continue;
    auto fail = [&](const std::string& why) {
      throw ParseError("line " + std::to_string(lineno) + ": " + why);
    };
    try {
      if (op == "qubits") {
        if (have_qubits) fail("duplicate qubits statement");
        if (!(ls >> c.qubits) || c.qubits <= 0) fail("bad qubit count");
        have_qubits = true;
      } else if (op == "h" || op == "x" || op == "z" || op == "s" ||
                 op == "measure") {
        std::string a;
        if (!(ls >> a)) fail("missing operand");
        c.gates.push_back({op, parse_operand(a), {}});
      } else if (op == "cnot") {
        std::string a, b;
        if (!(ls >> a >> b)) fail("missing operand");
        c.gates.push_back({op, parse_operand(a), parse_operand(b)});
      } else {
        fail("unknown statement: " + op);
      }
      std::string extra;
      if (ls >> extra) fail("trailing token: " + extra);
    } catch (const ParseError&) {
      throw;
    } catch (const std::exception& e) {
      fail(e.what());
    }
  }
  if (!have_qubits) throw ParseError("missing qubits statement");
  return c;
}

namespace {

CompiledProgram finalize(TopEmitter& em, const ConcatProfile& profile,
                         const std::vector<CoordMap>& layout,
                         const TemplateLibrary& templates,
                         const CompileOptions& opts,
                         std::vector<uint8_t> readout_frame,
                         std::chrono::steady_clock::time_point t0) {
  CompiledProgram prog;
  prog.profile = profile;
  prog.layout = layout;
  prog.seed = opts.seed;
  prog.checks = em.checks();
  prog.readout_frame = std::move(readout_frame);

  int depth = profile.depth();
  std::set<CellKey> occupied;
  occupied.insert(cell_key(0, 0));
  for (int i = 0; i < em.pool_size(); ++i) {
    GridPoint p = em.pool_position(i);
    occupied.insert(cell_key(p.x, p.y));
  }
  prog.top = opts.sequential
                 ? schedule_serial(em.instructions(), depth)
                 : schedule_best(em.instructions(), depth, occupied, opts.seed,
                                 opts.sched_trials);
  prog.physical = lower_to_physical(prog.top, layout, templates);

  int next_id = 0;
  for (auto& a : register_atoms(profile, layout, GridPoint{0, 0}, next_id))
    prog.placement.push_back(a);
  for (int i = 0; i < em.pool_size(); ++i)
    for (auto& a :
         register_atoms(profile, layout, em.pool_position(i), next_id))
      prog.placement.push_back(a);

  for (const auto& in : em.instructions()) {
    if (in.kind == InstrKind::Gadget1 || in.kind == InstrKind::Gadget2)
      prog.gadget_cycles[in.name] +=
          template_cycles_per_level(in.name, depth, templates)[0];
    else if (in.kind == InstrKind::Move)
      prog.gadget_cycles["move"] += 1;
    else
      prog.gadget_cycles["transfer"] += 1;
  }

  prog.metrics.atoms = static_cast<long>(prog.placement.size());
  prog.metrics.cycles = static_cast<long>(prog.physical.layers.size());
  prog.metrics.spacetime = prog.metrics.atoms * prog.metrics.cycles;
  prog.metrics.compile_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  return prog;
}

}  // namespace

CompiledProgram compile_circuit(const LogicalCircuit& circuit,
                                const ConcatProfile& profile,
                                const CompileOptions& opts) {
  auto t0 = std::chrono::steady_clock::now();
  if (profile.empty()) throw std::invalid_argument("empty profile");
  long k_total = profile_counts(profile).logical;
  if (circuit.qubits > k_total)
    throw std::invalid_argument(
        "circuit needs " + std::to_string(circuit.qubits) +
        " logical qubits; profile provides " + std::to_string(k_total));

  std::vector<CoordMap> layout = workspace_layout(profile);
  GadgetOptions gopts{opts.seed, opts.sched_trials, opts.sequential};
  TemplateLibrary templates = build_templates(profile, layout, gopts);
  TopEmitter em(profile, layout);
  GridPoint data{0, 0};
  if (!opts.assume_encoded) em.prep(data);

  std::vector<uint8_t> fx(k_total, 0), fz(k_total, 0);
  auto lin = [&](const RegisterAddress& a) {
    return address_linear(profile, a);
  };
  for (const auto& g : circuit.gates) {
    RegisterAddress a = resolve(profile, g.a);
    if (g.name == "x") {
      fx[lin(a)] ^= 1;
    } else if (g.name == "z") {
      fz[lin(a)] ^= 1;
    } else if (g.name == "s") {
      throw UnsupportedGate(
          "logical S has no transversal or automorphism gadget for this code "
          "family");
    } else if (g.name == "h") {
      em.addressable_h(data, a);
      std::swap(fx[lin(a)], fz[lin(a)]);
      if (opts.ec == EcPolicy::PerGadget) em.ec_round(data);
    } else if (g.name == "cnot") {
      RegisterAddress b = resolve(profile, g.b);
      em.addressable_cnot(data, a, data, b);
      fx[lin(b)] ^= fx[lin(a)];
      fz[lin(a)] ^= fz[lin(b)];
      if (opts.ec == EcPolicy::PerGadget) em.ec_round(data);
    } else if (g.name == "measure") {
      em.logical_measure(data, a, fx[lin(a)]);
      if (opts.ec == EcPolicy::PerGadget) em.ec_round(data);
    } else {
      throw std::invalid_argument("unknown gate: " + g.name);
    }
  }
  if (opts.final_readout) em.measure_reg(data, 'Z', "readout");
  return finalize(em, profile, layout, templates, opts, fx, t0);
}

CompiledProgram compile_memory(const ConcatProfile& profile,
                               const CompileOptions& opts, int ec_rounds,
                               bool readout) {
  auto t0 = std::chrono::steady_clock::now();
  std::vector<CoordMap> layout = workspace_layout(profile);
  GadgetOptions gopts{opts.seed, opts.sched_trials, opts.sequential};
  TemplateLibrary templates = build_templates(profile, layout, gopts);
  TopEmitter em(profile, layout);
  GridPoint data{0, 0};
  if (!opts.assume_encoded) em.prep(data);
  for (int r = 0; r < ec_rounds; ++r) em.ec_round(data);
  if (readout) em.measure_reg(data, 'Z', "readout");
  std::vector<uint8_t> fx(profile_counts(profile).logical, 0);
  return finalize(em, profile, layout, templates, opts, fx, t0);
}

}  // namespace coniq

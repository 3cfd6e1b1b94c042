// Acceptance gate: twelve end-to-end criteria covering gadget correctness,
// lowering legality, batching efficiency, resource magnitudes, noise
// performance, and determinism. Prints one PASS/FAIL line per criterion and
// exits nonzero when any criterion fails.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include "coniq/experiment.hpp"
#include "coniq/gadgets.hpp"
#include "coniq/machine.hpp"
#include "coniq/oracle.hpp"
#include "coniq/pipeline.hpp"
#include "coniq/serialize.hpp"
#include "dense_sim.hpp"

using namespace coniq;

namespace {

int g_failures = 0;

void report(int num, bool ok, const std::string& what,
            const std::string& detail = "") {
  std::printf("criterion %2d %s: %s%s%s\n", num, ok ? "PASS" : "FAIL",
              what.c_str(), detail.empty() ? "" : " -- ", detail.c_str());
  std::fflush(stdout);
  if (!ok) ++g_failures;
}

double seconds_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
      .count();
}

struct Built {
  ConcatProfile profile;
  std::vector<CoordMap> layout;
  TemplateLibrary lib;
};

Built build(const std::string& s) {
  Built b;
  b.profile = parse_profile(s);
  b.layout = workspace_layout(b.profile);
  b.lib = build_templates(b.profile, b.layout, {});
  return b;
}

struct Lowered {
  std::vector<std::pair<int, GridPoint>> placement;
  Schedule physical;
};

// Serial-lowers the emitter's instruction stream and lays out the data
// register at (0,0) plus every pool register the emitter allocated.
Lowered lower_emitter(const Built& b, const TopEmitter& em) {
  Lowered out;
  Schedule top = schedule_serial(em.instructions(), b.profile.depth());
  out.physical = lower_to_physical(top, b.layout, b.lib);
  int id = 0;
  for (auto& a : register_atoms(b.profile, b.layout, {0, 0}, id))
    out.placement.push_back(a);
  for (int i = 0; i < em.pool_size(); ++i)
    for (auto& a :
         register_atoms(b.profile, b.layout, em.pool_position(i), id))
      out.placement.push_back(a);
  return out;
}

// ---- criterion 1: single-level permutation gadgets act as declared --------

void criterion_1() {
  try {
    Built b = build("4");
    bool ok = true;
    std::string detail;
    for (const char* name : {"swap@1", "cnotf@1", "cnotr@1"}) {
      TopEmitter em(b.profile, b.layout);
      em.automorphism({0, 0}, name);
      Lowered low = lower_emitter(b, em);
      CodeRegion region{b.profile, b.layout, {0, 0}};
      auto res =
          logical_action(low.placement, {region}, {region}, low.physical, 1);
      if (!res.is_logical || res.matrix != automorphism_action(b.profile, name)) {
        ok = false;
        detail += std::string(name) + " wrong; ";
      }
    }
    report(1, ok, "block permutation gadgets realize their logical action",
           detail);
  } catch (const std::exception& e) {
    report(1, false, "block permutation gadgets realize their logical action",
           e.what());
  }
}

// ---- criteria 2 and 3: addressable gates verified by the oracle -----------

void criterion_2() {
  auto t0 = std::chrono::steady_clock::now();
  try {
    Built b = build("4,4");
    long k = profile_counts(b.profile).logical;  // 4 logical qubits
    bool ok = true;
    std::string detail;
    for (long a = 0; a < k && ok; ++a)
      for (long c = 0; c < k && ok; ++c) {
        if (a == c) continue;
        TopEmitter em(b.profile, b.layout);
        em.addressable_cnot({0, 0}, linear_address(b.profile, a), {0, 0},
                            linear_address(b.profile, c));
        Lowered low = lower_emitter(b, em);
        CodeRegion region{b.profile, b.layout, {0, 0}};
        auto res =
            logical_action(low.placement, {region}, {region}, low.physical, 1);
        auto expected = symplectic_identity(static_cast<int>(k));
        symplectic_apply_cnot(expected, static_cast<int>(a),
                              static_cast<int>(c));
        if (!res.is_logical || res.matrix != expected) {
          ok = false;
          detail = "pair " + std::to_string(a) + "->" + std::to_string(c) +
                   (res.is_logical ? " wrong matrix" : " not logical: ") +
                   res.offender;
        }
      }
    double dt = seconds_since(t0);
    if (dt > 300) {
      ok = false;
      detail += " exceeded 300s";
    }
    std::ostringstream os;
    os.precision(3);
    os << dt << "s";
    report(2, ok, "all 12 in-register addressable CNOT pairs exact",
           detail.empty() ? os.str() : detail);
  } catch (const std::exception& e) {
    report(2, false, "all 12 in-register addressable CNOT pairs exact",
           e.what());
  }
}

void criterion_3() {
  try {
    Built b = build("4,4");
    long k = profile_counts(b.profile).logical;
    bool ok = true;
    std::string detail;
    for (long a = 0; a < k && ok; ++a) {
      TopEmitter em(b.profile, b.layout);
      em.addressable_h({0, 0}, linear_address(b.profile, a));
      Lowered low = lower_emitter(b, em);
      CodeRegion region{b.profile, b.layout, {0, 0}};
      auto res =
          logical_action(low.placement, {region}, {region}, low.physical, 1);
      auto expected = symplectic_identity(static_cast<int>(k));
      symplectic_apply_h(expected, static_cast<int>(a));
      if (!res.is_logical || res.matrix != expected) {
        ok = false;
        detail = "address " + std::to_string(a) +
                 (res.is_logical ? " wrong matrix" : " not logical: ") +
                 res.offender;
      }
    }
    report(3, ok, "addressable Hadamard exact on every address", detail);
  } catch (const std::exception& e) {
    report(3, false, "addressable Hadamard exact on every address", e.what());
  }
}

// ---- criterion 4: verified preparation fixes the full stabilizer group ----

void criterion_4() {
  try {
    bool ok = true;
    std::string detail;
    for (const char* s : {"4,4", "4,4,4"}) {
      Built b = build(s);
      TopEmitter em(b.profile, b.layout);
      em.prep({0, 0});
      Lowered low = lower_emitter(b, em);
      MachineState st = MachineState::from_placement(low.placement);
      EventTrace trace = execute(st, low.physical);

      StabilizerTableau tab(static_cast<int>(low.placement.size()));
      std::map<int, int> a2q;
      std::map<std::pair<double, double>, int> cell2q;
      for (std::size_t i = 0; i < low.placement.size(); ++i) {
        a2q[low.placement[i].first] = static_cast<int>(i);
        cell2q[{low.placement[i].second.x, low.placement[i].second.y}] =
            static_cast<int>(i);
      }
      std::mt19937_64 rng(17);
      replay_trace(tab, trace, a2q, rng);

      int nq = static_cast<int>(low.placement.size());
      auto sup = code_stabilizer_supports(b.profile, b.layout, {0, 0});
      for (auto& [type, pts] : sup.generators) {
        std::vector<int> qs;
        for (auto& pt : pts) qs.push_back(cell2q.at({pt.x, pt.y}));
        if (tab.expectation(PauliOperator::from_support(nq, type, qs)) != 1) {
          ok = false;
          detail += std::string(s) + " stabilizer not fixed; ";
        }
      }
      for (auto& addr : all_addresses(b.profile)) {
        auto ls = address_to_physical(b.profile, {0, 0}, addr, b.layout);
        std::vector<int> qs;
        for (auto& pt : ls.z_support) qs.push_back(cell2q.at({pt.x, pt.y}));
        if (tab.expectation(PauliOperator::from_support(nq, 'Z', qs)) != 1) {
          ok = false;
          detail += std::string(s) + " logical Z not fixed; ";
        }
      }
    }
    report(4, ok,
           "preparation fixes the stabilizer group at depths 2 and 3",
           detail);
  } catch (const std::exception& e) {
    report(4, false,
           "preparation fixes the stabilizer group at depths 2 and 3",
           e.what());
  }
}

// ---- criterion 5: random legal register schedules lower legally -----------

void criterion_5() {
  try {
    bool ok = true;
    std::string detail;
    long total = 0;
    std::mt19937_64 rng(99);
    struct Cfg {
      const char* profile;
      int schedules;
      int ops;
    };
    for (Cfg cfg : {Cfg{"4", 400, 5}, Cfg{"4,4", 400, 4}, Cfg{"4,4,4", 200, 2}}) {
      Built b = build(cfg.profile);
      int depth = b.profile.depth();
      GridPoint r0{0, 0}, r1{1, 0};
      for (int sched = 0; sched < cfg.schedules && ok; ++sched) {
        TopEmitter em(b.profile, b.layout);
        for (int op = 0; op < cfg.ops; ++op) {
          GridPoint reg = (rng() & 1) ? r0 : r1;
          switch (rng() % 6) {
            case 0: em.prep(reg); break;
            case 1: em.h_trans(reg); break;
            case 2: em.reset_reg(reg); break;
            case 3: em.measure_reg(reg, 'Z', "check"); break;
            case 4: em.transversal_cnot(reg, reg == r0 ? r1 : r0); break;
            case 5: em.automorphism(reg, "swap@1"); break;
          }
        }
        Schedule top = schedule_serial(em.instructions(), depth);
        // Validate at the register level, then lower and execute physically.
        LevelState ls;
        ls.level = depth;
        ls.state = MachineState::from_placement({{0, r0}, {1, r1}});
        run_level_schedule(ls, top);
        Schedule phys = lower_to_physical(top, b.layout, b.lib);
        int id = 0;
        std::vector<std::pair<int, GridPoint>> placement;
        for (auto& a : register_atoms(b.profile, b.layout, r0, id))
          placement.push_back(a);
        for (auto& a : register_atoms(b.profile, b.layout, r1, id))
          placement.push_back(a);
        MachineState st = MachineState::from_placement(placement);
        execute(st, phys);
        if (!st.aod_empty() || st.atom_count() != placement.size()) {
          ok = false;
          detail = std::string(cfg.profile) + " schedule " +
                   std::to_string(sched) + " left the machine inconsistent";
        }
        ++total;
      }
    }
    report(5, ok,
           std::to_string(total) +
               " random register schedules lowered and executed legally",
           detail);
  } catch (const std::exception& e) {
    report(5, false, "random register schedules lower legally", e.what());
  }
}

// ---- criterion 6: declared cycle counts survive lowering ------------------

void criterion_6() {
  try {
    bool ok = true;
    std::string detail;
    for (const char* s : {"4,4", "4,4,4"}) {
      Built b = build(s);
      int depth = b.profile.depth();
      for (const auto& [key, tmpl] : b.lib) {
        if (key.second != depth) continue;
        Schedule top;
        top.level = depth;
        top.layers = {{key.first == "cnot"
                           ? Instruction::gadget2(key.first, {0}, {0})
                           : Instruction::gadget1(key.first, {0}, {0})}};
        Schedule phys = lower_to_physical(top, b.layout, b.lib);
        auto cycles = template_cycles_per_level(key.first, depth, b.lib);
        if (static_cast<int>(cycles.size()) != depth ||
            static_cast<long>(phys.layers.size()) != cycles[0] ||
            cycles[depth - 1] != tmpl.cycles) {
          ok = false;
          detail += std::string(s) + "/" + key.first + " cycle mismatch; ";
        }
      }
    }
    report(6, ok, "gadget cycle declarations match actual lowering", detail);
  } catch (const std::exception& e) {
    report(6, false, "gadget cycle declarations match actual lowering",
           e.what());
  }
}

// ---- criterion 7: batching advantage grows with depth ---------------------

void criterion_7() {
  try {
    std::vector<double> ratios;
    for (const char* s : {"4,4", "4,4,4", "4,4,4,4"}) {
      CompileOptions batched;
      batched.seed = 3;
      CompileOptions serial = batched;
      serial.sequential = true;
      CompiledProgram a = compile_memory(parse_profile(s), batched, 0, false);
      CompiledProgram b = compile_memory(parse_profile(s), serial, 0, false);
      ratios.push_back(static_cast<double>(b.metrics.spacetime) /
                       static_cast<double>(a.metrics.spacetime));
    }
    bool ok = ratios[0] >= 2.0 && ratios[1] > ratios[0] &&
              ratios[2] > ratios[1];
    std::ostringstream os;
    os.precision(3);
    os << "serial/batched spacetime " << ratios[0] << " -> " << ratios[1]
       << " -> " << ratios[2];
    report(7, ok, "batching advantage >=2 at depth 2 and strictly growing",
           os.str());
  } catch (const std::exception& e) {
    report(7, false, "batching advantage >=2 at depth 2 and strictly growing",
           e.what());
  }
}

// ---- criterion 8: resource magnitudes and compile time --------------------

void criterion_8() {
  try {
    bool ok = true;
    std::ostringstream os;
    auto within = [](double v, double target) {
      return v >= target / 10 && v <= target * 10;
    };

    CompileOptions prep_opts;
    prep_opts.seed = 3;
    prep_opts.ec = EcPolicy::None;
    CompiledProgram prep =
        compile_memory(parse_profile("4,4"), prep_opts, 0, false);
    ok = ok && within(static_cast<double>(prep.metrics.spacetime), 7e2);
    os << "prep(4,4)=" << prep.metrics.spacetime;

    LogicalCircuit cnot = parse_circuit("qubits 2\ncnot 0 1\n");
    CompileOptions opts;
    opts.seed = 3;
    CompiledProgram c2 = compile_circuit(cnot, parse_profile("4,4"), opts);
    ok = ok && within(static_cast<double>(c2.metrics.spacetime), 3e4);
    os << " cnot(4,4)=" << c2.metrics.spacetime;

    auto t0 = std::chrono::steady_clock::now();
    CompiledProgram c4 = compile_circuit(cnot, parse_profile("4,4,4,4"), opts);
    double dt = seconds_since(t0);
    ok = ok && within(static_cast<double>(c4.metrics.spacetime), 4.3e6);
    ok = ok && dt < 10.0;
    os.precision(3);
    os << " cnot(4,4,4,4)=" << c4.metrics.spacetime << " compiled in " << dt
       << "s";
    report(8, ok, "qubit-cycle magnitudes within 10x of expectations",
           os.str());
  } catch (const std::exception& e) {
    report(8, false, "qubit-cycle magnitudes within 10x of expectations",
           e.what());
  }
}

// ---- criterion 9: one-round memory scales ~ p^2 ---------------------------

void criterion_9() {
  auto t0 = std::chrono::steady_clock::now();
  try {
    CompileOptions opts;
    opts.seed = 11;
    CompiledProgram prog = compile_memory(parse_profile("4,4"), opts, 1, true);
    std::vector<std::pair<double, double>> pts;
    std::ostringstream os;
    os.precision(4);
    bool enough = true;
    uint64_t seed = 900;
    for (double p : {3e-3, 5e-3, 1e-2}) {
      MemoryPoint pt = memory_point(prog, p, 100000, 5000000, seed++);
      enough = enough && pt.accepted >= 100000;
      pts.push_back({p, pt.rate});
      os << " p=" << p << " rate=" << pt.rate << " (acc " << pt.accepted
         << ")";
    }
    FitResult fit = fit_threshold(pts);
    double dt = seconds_since(t0);
    bool ok = enough && fit.alpha >= 1.5 && fit.alpha <= 2.5 && dt < 3600;
    os << " alpha=" << fit.alpha << " in " << dt << "s";
    report(9, ok, "memory failure rate scales with exponent 2.0 +/- 0.5",
           os.str());
  } catch (const std::exception& e) {
    report(9, false, "memory failure rate scales with exponent 2.0 +/- 0.5",
           e.what());
  }
}

// ---- criterion 10: every single data-qubit Pauli error is corrected -------

void criterion_10() {
  try {
    CompileOptions opts;
    opts.seed = 11;
    opts.assume_encoded = true;  // injected errors must survive to the EC round
    CompiledProgram prog = compile_memory(parse_profile("4,4"), opts, 1, true);
    FrameSimulator sim(prog.placement, prog.physical, NoiseModel::ideal(), 5);
    std::vector<uint8_t> expected = reference_readout(prog, sim);
    bool ok = true;
    std::string detail;
    for (int id = 0; id < 16 && ok; ++id) {
      ShotDecode dx = decode_shot(prog, sim, sim.run_shot(0, {id}, {}),
                                  expected);
      ShotDecode dz = decode_shot(prog, sim, sim.run_shot(0, {}, {id}),
                                  expected);
      if (!dx.accepted || dx.failure || !dz.accepted || dz.failure) {
        ok = false;
        detail = "error on data qubit " + std::to_string(id) +
                 " not corrected";
      }
    }
    report(10, ok, "all 16 single X and single Z data errors corrected",
           detail);
  } catch (const std::exception& e) {
    report(10, false, "all 16 single X and single Z data errors corrected",
           e.what());
  }
}

// ---- criterion 11: tableau vs dense statevector differential --------------

void criterion_11() {
  try {
    std::mt19937_64 rng(4242);
    bool ok = true;
    std::string detail;
    for (int trial = 0; trial < 500 && ok; ++trial) {
      int n = 2 + static_cast<int>(rng() % 9);  // 2..10 qubits
      StabilizerTableau tab(n);
      dense::StateVector sv(n);
      int ops = 20 + static_cast<int>(rng() % 21);
      for (int op = 0; op < ops && ok; ++op) {
        int q = static_cast<int>(rng() % n);
        int r = static_cast<int>(rng() % n);
        if (r == q) r = (q + 1) % n;
        switch (rng() % 8) {
          case 0: tab.h(q); sv.h(q); break;
          case 1: tab.s(q); sv.s(q); break;
          case 2: tab.sdg(q); sv.sdg(q); break;
          case 3: tab.x(q); sv.x(q); break;
          case 4: tab.z(q); sv.z(q); break;
          case 5: tab.cx(q, r); sv.cx(q, r); break;
          case 6: tab.cz(q, r); sv.cz(q, r); break;
          case 7: {
            auto m = tab.measure(q, rng);
            double p = sv.measure_forced(q, m.outcome);
            double want = m.deterministic ? 1.0 : 0.5;
            if (std::abs(p - want) > 1e-9) {
              ok = false;
              detail = "trial " + std::to_string(trial) +
                       ": outcome probability " + std::to_string(p) +
                       " expected " + std::to_string(want);
            }
            break;
          }
        }
      }
      for (int i = 0; i < n && ok; ++i) {
        dense::cplx e = sv.expectation(tab.stabilizer(i));
        if (std::abs(e - dense::cplx(1.0)) > 1e-9) {
          ok = false;
          detail = "trial " + std::to_string(trial) + ": stabilizer " +
                   std::to_string(i) + " expectation off";
        }
      }
    }
    report(11, ok, "500 random circuits agree with a dense statevector",
           detail);
  } catch (const std::exception& e) {
    report(11, false, "500 random circuits agree with a dense statevector",
           e.what());
  }
}

// ---- criterion 12: byte-identical determinism -----------------------------

void criterion_12() {
  try {
    LogicalCircuit c = parse_circuit("qubits 2\nh 0\ncnot 0 1\nmeasure 1\n");
    CompileOptions opts;
    opts.seed = 777;
    opts.final_readout = true;
    std::string j1 = program_to_json(compile_circuit(c, parse_profile("4,4"),
                                                     opts));
    std::string j2 = program_to_json(compile_circuit(c, parse_profile("4,4"),
                                                     opts));
    bool ok = j1 == j2;

    CompileOptions mo;
    mo.seed = 11;
    CompiledProgram prog = compile_memory(parse_profile("4,4"), mo, 1, true);
    MemoryPoint a = memory_point(prog, 5e-3, 5000, 100000, 31);
    MemoryPoint b = memory_point(prog, 5e-3, 5000, 100000, 31);
    ok = ok && a.shots == b.shots && a.accepted == b.accepted &&
         a.failures == b.failures;
    report(12, ok, "repeat compilation and simulation are byte-identical",
           ok ? "" : "outputs diverged");
  } catch (const std::exception& e) {
    report(12, false, "repeat compilation and simulation are byte-identical",
           e.what());
  }
}

}  // namespace

int main() {
  criterion_1();
  criterion_2();
  criterion_3();
  criterion_4();
  criterion_5();
  criterion_6();
  criterion_7();
  criterion_8();
  criterion_9();
  criterion_10();
  criterion_11();
  criterion_12();
  std::printf("%d of 12 criteria passed\n", 12 - g_failures);
  return g_failures == 0 ? 0 : 1;
}

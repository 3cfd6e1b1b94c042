#include <cstdlib>
#include <fstream>
#include <iostream>
#include <sstream>

#include "CLI11.hpp"
#include "coniq/experiment.hpp"
#include "coniq/gadgets.hpp"
#include "coniq/machine.hpp"
#include "coniq/oracle.hpp"
#include "coniq/pipeline.hpp"
#include "coniq/serialize.hpp"
#include "coniq/vair.hpp"
#include "json.hpp"

using namespace coniq;

namespace {

constexpr int kExitParse = 1;
constexpr int kExitCompile = 2;
constexpr int kExitViolation = 3;
constexpr int kExitSim = 4;

uint64_t default_seed() {
  if (const char* env = std::getenv("CONIQ_SEED")) {
    try {
      return std::stoull(env);
    } catch (const std::exception&) {
      std::cerr << "warning: ignoring unparseable CONIQ_SEED\n";
    }
  }
  return 0;
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot read file: " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

int cmd_compile(const std::string& code, const std::string& circuit_path,
                const std::string& out_path, uint64_t seed, int trials,
                const std::string& ec_policy, bool sequential) {
  ConcatProfile profile;
  LogicalCircuit circuit;
  try {
    profile = parse_profile(code);
    circuit = parse_circuit(read_file(circuit_path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    CompileOptions opts;
    opts.seed = seed;
    opts.sched_trials = trials;
    opts.sequential = sequential;
    opts.final_readout = true;
    if (ec_policy == "none") opts.ec = EcPolicy::None;
    else if (ec_policy == "per-gadget") opts.ec = EcPolicy::PerGadget;
    else {
      std::cerr << "compile error: unknown EC policy: " << ec_policy << "\n";
      return kExitCompile;
    }
    CompiledProgram prog = compile_circuit(circuit, profile, opts);
    std::string text = program_to_json(prog);
    if (!out_path.empty()) {
      std::ofstream out(out_path);
      if (!out) throw std::runtime_error("cannot write file: " + out_path);
      out << text << "\n";
    } else {
      std::cout << text << "\n";
    }
    nlohmann::json line;
    line["atoms"] = prog.metrics.atoms;
    line["cycles"] = prog.metrics.cycles;
    line["spacetime"] = prog.metrics.spacetime;
    line["compile_seconds"] = prog.metrics.compile_seconds;
    std::cout << line.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "compile error: " << e.what() << "\n";
    return kExitCompile;
  }
}

int cmd_validate(const std::string& path) {
  CompiledProgram prog;
  try {
    prog = program_from_json(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    if (prog.physical.level == 0) {
      MachineState st = MachineState::from_placement(prog.placement);
      execute(st, prog.physical);
    } else {
      LevelState st;
      st.level = prog.physical.level;
      st.state = MachineState::from_placement(prog.placement);
      run_level_schedule(st, prog.physical);
    }
    std::cout << "valid: " << prog.physical.layers.size() << " cycles, "
              << prog.placement.size() << " atoms (level "
              << prog.physical.level << ")\n";
    return 0;
  } catch (const ValidationError& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kExitViolation;
  } catch (const std::exception& e) {
    std::cerr << "violation: " << e.what() << "\n";
    return kExitViolation;
  }
}

int cmd_simulate(const std::string& path, const std::string& noise_arg,
                 long shots, uint64_t seed, const std::string& sweep) {
  CompiledProgram prog;
  try {
    prog = program_from_json(read_file(path));
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
  try {
    if (shots <= 0) throw std::invalid_argument("shots must be positive");
    if (prog.physical.level != 0)
      throw std::invalid_argument("simulation requires a level-0 schedule");

    std::vector<double> sweep_p;
    if (!sweep.empty()) {
      std::stringstream ss(sweep);
      std::string tok;
      while (std::getline(ss, tok, ',')) sweep_p.push_back(std::stod(tok));
    }

    auto run_point = [&](const NoiseModel& nm,
                         double p_label) -> MemoryPoint {
      FrameSimulator sim(prog.placement, prog.physical, nm, seed);
      std::vector<uint8_t> expected = reference_readout(prog, sim);
      MemoryPoint pt;
      pt.p = p_label;
      for (long s = 0; s < shots; ++s) {
        std::vector<uint8_t> bits = sim.run_shot(s);
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
    };

    std::cout << "p,shots,accepted,failures,rate,wilson_lo,wilson_hi\n";
    std::vector<std::pair<double, double>> fit_pts;
    if (!sweep_p.empty()) {
      for (double p : sweep_p) {
        MemoryPoint pt = run_point(NoiseModel::scaled(p), p);
        std::cout << pt.p << "," << pt.shots << "," << pt.accepted << ","
                  << pt.failures << "," << pt.rate << "," << pt.lo << ","
                  << pt.hi << "\n";
        if (pt.rate > 0) fit_pts.push_back({pt.p, pt.rate});
      }
      try {
        FitResult fit = fit_threshold(fit_pts);
        std::cout << "# fit alpha=" << fit.alpha << " p_th=" << fit.p_th
                  << "\n";
      } catch (const DegenerateFit& e) {
        std::cout << "# fit degenerate: " << e.what() << "\n";
      }
    } else {
      NoiseModel nm;
      if (noise_arg == "default") nm = NoiseModel::standard();
      else if (noise_arg == "none") nm = NoiseModel::ideal();
      else {
        nlohmann::json j = nlohmann::json::parse(read_file(noise_arg));
        nm.e_1q = j.value("e_1q", 0.0);
        nm.e_2q = j.value("e_2q", 0.0);
        nm.e_move = j.value("e_move", 0.0);
        nm.e_reset = j.value("e_reset", 0.0);
        nm.e_meas = j.value("e_meas", 0.0);
      }
      MemoryPoint pt = run_point(nm, nm.e_2q);
      std::cout << pt.p << "," << pt.shots << "," << pt.accepted << ","
                << pt.failures << "," << pt.rate << "," << pt.lo << ","
                << pt.hi << "\n";
    }
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "simulation error: " << e.what() << "\n";
    return kExitSim;
  }
}

void print_matrix(const std::vector<std::vector<uint8_t>>& m) {
  for (const auto& row : m) {
    std::cout << "    ";
    for (uint8_t v : row) std::cout << static_cast<int>(v);
    std::cout << "\n";
  }
}

int cmd_report(const std::string& path, bool gadgets,
               const std::string& code) {
  try {
    if (gadgets) {
      ConcatProfile profile = parse_profile(code);
      if (profile.empty())
        throw std::invalid_argument("--gadgets requires --code");
      auto layout = workspace_layout(profile);
      TemplateLibrary lib = build_templates(profile, layout, GadgetOptions{});
      std::cout << "gadget catalog for D_{" << profile.str() << "}\n";
      for (const auto& [key, t] : lib) {
        auto cycles = template_cycles_per_level(key.first, key.second, lib);
        std::cout << "  " << key.first << " @ level " << key.second
                  << ": " << t.cycles << " layers, " << cycles[0]
                  << " physical cycles — " << t.summary << "\n";
        if (key.second == profile.depth() &&
            key.first.find('@') != std::string::npos) {
          try {
            std::cout << "  logical action (rows: X images then Z images):\n";
            print_matrix(automorphism_action(profile, key.first));
          } catch (const UnsupportedGate&) {
            std::cout << "    (no closed-form logical action for this "
                         "dimension size)\n";
          }
        }
      }
      bool all4 = true;
      for (int n : profile.levels) all4 = all4 && n == 4;
      if (all4 && profile_counts(profile).logical >= 2) {
        LogicalCircuit c;
        c.qubits = 2;
        c.gates.push_back({"cnot", linear_address(profile, 0),
                           linear_address(profile, 1)});
        CompileOptions opts;
        opts.assume_encoded = true;
        opts.ec = EcPolicy::None;
        CompiledProgram prog = compile_circuit(c, profile, opts);
        std::cout << "  addressable_cnot (non-EC): " << prog.metrics.cycles
                  << " physical cycles, " << prog.metrics.atoms << " atoms\n";
      }
      return 0;
    }
    CompiledProgram prog = program_from_json(read_file(path));
    nlohmann::json j;
    j["atoms"] = prog.metrics.atoms;
    j["cycles"] = prog.metrics.cycles;
    j["spacetime"] = prog.metrics.spacetime;
    j["spacetime_1e6"] = prog.metrics.spacetime / 1e6;
    j["compile_seconds"] = prog.metrics.compile_seconds;
    std::cout << "atoms: " << prog.metrics.atoms << "\n"
              << "cycles: " << prog.metrics.cycles << "\n"
              << "spacetime: " << prog.metrics.spacetime << " qubit-cycles ("
              << prog.metrics.spacetime / 1e6 << " x 10^6)\n";
    if (!prog.gadget_cycles.empty()) {
      std::cout << "per-gadget physical cycles:\n";
      for (const auto& [name, cycles] : prog.gadget_cycles)
        std::cout << "  " << name << ": " << cycles << "\n";
    }
    std::cout << j.dump() << "\n";
    return 0;
  } catch (const std::exception& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return kExitParse;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"coniq: concatenated-code compiler for neutral-atom arrays"};
  app.set_version_flag("--version",
                       "coniq schedule format v" +
                           std::to_string(schedule_format_version()));
  app.require_subcommand(1);
  uint64_t seed = default_seed();

  auto* compile = app.add_subcommand("compile", "compile a logical circuit");
  std::string code, circuit, out, ec_policy = "per-gadget";
  int trials = 4;
  bool sequential = false;
  compile->add_option("--code", code, "concatenation profile, e.g. 4,4")
      ->required();
  compile->add_option("--circuit", circuit, "circuit file")->required();
  compile->add_option("--out", out, "schedule output path (default stdout)");
  compile->add_option("--seed", seed, "deterministic seed");
  compile->add_option("--sched-trials", trials, "scheduler seeds to try");
  compile->add_option("--ec-policy", ec_policy, "per-gadget | none");
  compile->add_flag("--sequential", sequential, "serial baseline scheduling");

  auto* validate = app.add_subcommand("validate", "validate a schedule file");
  std::string vpath;
  validate->add_option("schedule", vpath, "schedule JSON file")->required();

  auto* simulate = app.add_subcommand("simulate", "Monte Carlo noise run");
  std::string spath, noise = "default", sweep;
  long shots = 10000;
  simulate->add_option("schedule", spath, "schedule JSON file")->required();
  simulate->add_option("--noise", noise, "default | none | <json file>");
  simulate->add_option("--shots", shots, "shots per point");
  simulate->add_option("--seed", seed, "deterministic seed");
  simulate->add_option("--sweep", sweep, "comma-separated two-qubit rates");

  auto* report = app.add_subcommand("report", "metrics and gadget catalog");
  std::string rpath, rcode;
  bool gadgets = false;
  report->add_option("schedule", rpath, "schedule JSON file");
  report->add_flag("--gadgets", gadgets, "print the gadget catalog");
  report->add_option("--code", rcode, "profile for --gadgets");

  CLI11_PARSE(app, argc, argv);

  if (compile->parsed())
    return cmd_compile(code, circuit, out, seed, trials, ec_policy,
                       sequential);
  if (validate->parsed()) return cmd_validate(vpath);
  if (simulate->parsed())
    return cmd_simulate(spath, noise, shots, seed, sweep);
  if (report->parsed()) return cmd_report(rpath, gadgets, rcode);
  return 0;
}

// Python bindings for the compiler and simulator: profile inspection,
// circuit compilation, schedule validation, JSON (de)serialization, and the
// Monte Carlo memory experiment.

#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "coniq/experiment.hpp"
#include "coniq/machine.hpp"
#include "coniq/pipeline.hpp"
#include "coniq/serialize.hpp"

namespace py = pybind11;
using namespace coniq;

namespace {

CompileOptions make_options(uint64_t seed, int sched_trials, bool sequential,
                            bool per_gadget_ec, bool assume_encoded,
                            bool final_readout) {
  CompileOptions opts;
  opts.seed = seed;
  opts.sched_trials = sched_trials;
  opts.sequential = sequential;
  opts.ec = per_gadget_ec ? EcPolicy::PerGadget : EcPolicy::None;
  opts.assume_encoded = assume_encoded;
  opts.final_readout = final_readout;
  return opts;
}

py::dict metrics_dict(const CompiledProgram& prog) {
  py::dict d;
  d["atoms"] = prog.metrics.atoms;
  d["cycles"] = prog.metrics.cycles;
  d["spacetime"] = prog.metrics.spacetime;
  d["compile_seconds"] = prog.metrics.compile_seconds;
  py::dict g;
  for (const auto& [name, cycles] : prog.gadget_cycles) g[name.c_str()] = cycles;
  d["gadget_cycles"] = g;
  return d;
}

}  // namespace

PYBIND11_MODULE(_coniq, m) {
  m.doc() =
      "Compiler and Monte Carlo simulator for concatenated error-detecting "
      "codes on a movable-atom grid machine";

  m.def(
      "profile_info",
      [](const std::string& profile) {
        ConcatProfile p = parse_profile(profile);
        ProfileCounts c = profile_counts(p);
        py::dict d;
        d["depth"] = p.depth();
        d["levels"] = p.levels;
        d["physical_qubits"] = c.physical;
        d["logical_qubits"] = c.logical;
        d["rate"] = c.rate;
        return d;
      },
      py::arg("profile"),
      "Qubit counts and encoding rate of a concatenation profile like "
      "'4,4'.");

  m.def(
      "compile_circuit",
      [](const std::string& circuit, const std::string& profile,
         uint64_t seed, int sched_trials, bool sequential, bool per_gadget_ec,
         bool assume_encoded, bool final_readout) {
        LogicalCircuit c = parse_circuit(circuit);
        CompiledProgram prog = compile_circuit(
            c, parse_profile(profile),
            make_options(seed, sched_trials, sequential, per_gadget_ec,
                         assume_encoded, final_readout));
        py::dict d;
        d["json"] = program_to_json(prog);
        d["metrics"] = metrics_dict(prog);
        return d;
      },
      py::arg("circuit"), py::arg("profile"), py::arg("seed") = 0,
      py::arg("sched_trials") = 4, py::arg("sequential") = false,
      py::arg("per_gadget_ec") = true, py::arg("assume_encoded") = false,
      py::arg("final_readout") = false,
      "Compile a logical circuit to a physical schedule; returns the "
      "schedule JSON and resource metrics.");

  m.def(
      "compile_memory",
      [](const std::string& profile, int ec_rounds, bool readout,
         uint64_t seed, int sched_trials, bool sequential,
         bool assume_encoded) {
        CompiledProgram prog = compile_memory(
            parse_profile(profile),
            make_options(seed, sched_trials, sequential, true, assume_encoded,
                         false),
            ec_rounds, readout);
        py::dict d;
        d["json"] = program_to_json(prog);
        d["metrics"] = metrics_dict(prog);
        return d;
      },
      py::arg("profile"), py::arg("ec_rounds") = 1, py::arg("readout") = true,
      py::arg("seed") = 0, py::arg("sched_trials") = 4,
      py::arg("sequential") = false, py::arg("assume_encoded") = false,
      "Compile the memory benchmark: preparation, error-correction rounds, "
      "optional destructive readout.");

  m.def(
      "validate_program",
      [](const std::string& json) {
        CompiledProgram prog = program_from_json(json);
        MachineState st = MachineState::from_placement(prog.placement);
        try {
          execute(st, prog.physical);
        } catch (const ValidationError& e) {
          return std::string(e.what());
        }
        return std::string();
      },
      py::arg("json"),
      "Replay a serialized schedule against the machine rules; returns an "
      "empty string when legal, otherwise the first violation.");

  m.def(
      "memory_point",
      [](const std::string& json, double p, long min_accepted, long max_shots,
         uint64_t seed) {
        CompiledProgram prog = program_from_json(json);
        MemoryPoint pt = memory_point(prog, p, min_accepted, max_shots, seed);
        py::dict d;
        d["p"] = pt.p;
        d["shots"] = pt.shots;
        d["accepted"] = pt.accepted;
        d["failures"] = pt.failures;
        d["rate"] = pt.rate;
        d["rate_lo"] = pt.lo;
        d["rate_hi"] = pt.hi;
        return d;
      },
      py::arg("json"), py::arg("p"), py::arg("min_accepted") = 10000,
      py::arg("max_shots") = 1000000, py::arg("seed") = 0,
      "Monte Carlo logical failure rate of a serialized program at physical "
      "two-qubit error rate p.");

  m.def(
      "fit_threshold",
      [](const std::vector<std::pair<double, double>>& points) {
        FitResult f = fit_threshold(points);
        py::dict d;
        d["alpha"] = f.alpha;
        d["p_th"] = f.p_th;
        return d;
      },
      py::arg("points"),
      "Power-law fit p_l = A * p^alpha over (p, p_l) points, returning the "
      "exponent and pseudo-threshold.");

  m.def("schedule_format_version", &schedule_format_version,
        "Version number of the JSON schedule format.");
}

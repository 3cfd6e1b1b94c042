#include "coniq/serialize.hpp"

#include "json.hpp"

namespace coniq {

using nlohmann::json;

int schedule_format_version() { return 1; }

namespace {

const char* kind_name(InstrKind k) {
  switch (k) {
    case InstrKind::TransferStoA: return "transfer_sa";
    case InstrKind::TransferAtoS: return "transfer_as";
    case InstrKind::Move: return "move";
    case InstrKind::Gadget1: return "gadget1";
    case InstrKind::Gadget2: return "gadget2";
  }
  return "?";
}

InstrKind kind_from(const std::string& s) {
  if (s == "transfer_sa") return InstrKind::TransferStoA;
  if (s == "transfer_as") return InstrKind::TransferAtoS;
  if (s == "move") return InstrKind::Move;
  if (s == "gadget1") return InstrKind::Gadget1;
  if (s == "gadget2") return InstrKind::Gadget2;
  throw FormatError("unknown instruction kind: " + s);
}

json instr_to_json(const Instruction& in) {
  json j;
  j["op"] = kind_name(in.kind);
  if (!in.name.empty()) j["name"] = in.name;
  j["cols"] = in.cols;
  j["rows"] = in.rows;
  return j;
}

Instruction instr_from_json(const json& j) {
  Instruction in;
  in.kind = kind_from(j.at("op").get<std::string>());
  if (j.contains("name")) in.name = j.at("name").get<std::string>();
  in.cols = j.at("cols").get<std::vector<double>>();
  in.rows = j.at("rows").get<std::vector<double>>();
  return in;
}

json check_to_json(const CheckRecord& r) {
  json j;
  j["purpose"] = r.purpose;
  j["profile"] = r.profile.levels;
  j["basis"] = std::string(1, r.basis);
  json cells = json::array();
  for (const auto& c : r.cells) cells.push_back({c.x, c.y});
  j["cells"] = cells;
  j["occurrence"] = r.occurrence;
  if (!r.address.indices.empty()) j["address"] = r.address.indices;
  if (r.frame_flip) j["frame_flip"] = true;
  return j;
}

CheckRecord check_from_json(const json& j) {
  CheckRecord r;
  r.purpose = j.at("purpose").get<std::string>();
  r.profile.levels = j.at("profile").get<std::vector<int>>();
  r.basis = j.at("basis").get<std::string>().at(0);
  for (const auto& c : j.at("cells"))
    r.cells.push_back({c.at(0).get<double>(), c.at(1).get<double>()});
  r.occurrence = j.at("occurrence").get<std::vector<int>>();
  if (j.contains("address"))
    r.address.indices = j.at("address").get<std::vector<int>>();
  if (j.contains("frame_flip") && j.at("frame_flip").get<bool>())
    r.frame_flip = 1;
  return r;
}

}  // namespace

std::string program_to_json(const CompiledProgram& prog) {
  json j;
  j["version"] = schedule_format_version();
  j["profile"] = prog.profile.levels;
  j["level"] = prog.physical.level;
  json atoms = json::array();
  for (const auto& [id, p] : prog.placement) atoms.push_back({id, p.x, p.y});
  j["atoms"] = atoms;
  json layers = json::array();
  for (const auto& layer : prog.physical.layers) {
    json l = json::array();
    for (const auto& in : layer) l.push_back(instr_to_json(in));
    layers.push_back(l);
  }
  j["layers"] = layers;
  json meta;
  meta["seed"] = prog.seed;
  json checks = json::array();
  for (const auto& r : prog.checks) checks.push_back(check_to_json(r));
  meta["gadget_annotations"] = checks;
  meta["readout_frame"] = prog.readout_frame;
  json gc = json::object();
  for (const auto& [name, cycles] : prog.gadget_cycles) gc[name] = cycles;
  meta["gadget_cycles"] = gc;
  j["metadata"] = meta;
  json metrics;
  metrics["atoms"] = prog.metrics.atoms;
  metrics["cycles"] = prog.metrics.cycles;
  metrics["spacetime"] = prog.metrics.spacetime;
  // compile_seconds is wall-clock time, deliberately not serialized so that
  // identical compilations produce byte-identical files.
  j["metrics"] = metrics;
  return j.dump(2);
}

CompiledProgram program_from_json(const std::string& text) {
  json j;
  try {
    j = json::parse(text);
  } catch (const json::exception& e) {
    throw FormatError(std::string("invalid JSON: ") + e.what());
  }
  try {
    if (j.at("version").get<int>() != schedule_format_version())
      throw FormatError("unsupported schedule file version");
    CompiledProgram prog;
    prog.profile.levels = j.at("profile").get<std::vector<int>>();
    prog.layout = workspace_layout(prog.profile);
    prog.physical.level = j.at("level").get<int>();
    for (const auto& a : j.at("atoms"))
      prog.placement.push_back(
          {a.at(0).get<int>(),
           GridPoint{a.at(1).get<double>(), a.at(2).get<double>()}});
    for (const auto& layer : j.at("layers")) {
      std::vector<Instruction> l;
      for (const auto& in : layer) l.push_back(instr_from_json(in));
      prog.physical.layers.push_back(std::move(l));
    }
    const json& meta = j.at("metadata");
    prog.seed = meta.at("seed").get<uint64_t>();
    for (const auto& r : meta.at("gadget_annotations"))
      prog.checks.push_back(check_from_json(r));
    prog.readout_frame = meta.at("readout_frame").get<std::vector<uint8_t>>();
    if (meta.contains("gadget_cycles"))
      for (const auto& [name, cycles] : meta.at("gadget_cycles").items())
        prog.gadget_cycles[name] = cycles.get<long>();
    const json& metrics = j.at("metrics");
    prog.metrics.atoms = metrics.at("atoms").get<long>();
    prog.metrics.cycles = metrics.at("cycles").get<long>();
    prog.metrics.spacetime = metrics.at("spacetime").get<long>();
    return prog;
  } catch (const json::exception& e) {
    throw FormatError(std::string("malformed schedule file: ") + e.what());
  }
}

}  // namespace coniq

#pragma once

#include <string>
#include <vector>

namespace coniq {

// One instruction at any level. Transfers and gadgets carry row/column
// selector sets (I', J'); Move carries the full replacement coordinate lists
// (I_new, J_new). At level 0, Gadget1 names are the physical primitives
// {x, z, h, s, sdg, measure_z, reset} and Gadget2 is "cz"; at higher levels
// names refer to gadget templates.
enum class InstrKind { TransferStoA, TransferAtoS, Move, Gadget1, Gadget2 };

struct Instruction {
  InstrKind kind = InstrKind::Move;
  std::string name;
  std::vector<double> cols;
  std::vector<double> rows;

  static Instruction move(std::vector<double> cols, std::vector<double> rows) {
    Instruction in;
    in.kind = InstrKind::Move;
    in.cols = std::move(cols);
    in.rows = std::move(rows);
    return in;
  }
  static Instruction transfer(bool to_aod, std::vector<double> cols,
                              std::vector<double> rows) {
    Instruction in;
    in.kind = to_aod ? InstrKind::TransferStoA : InstrKind::TransferAtoS;
    in.cols = std::move(cols);
    in.rows = std::move(rows);
    return in;
  }
  static Instruction gadget1(std::string name, std::vector<double> cols,
                             std::vector<double> rows) {
    Instruction in;
    in.kind = InstrKind::Gadget1;
    in.name = std::move(name);
    in.cols = std::move(cols);
    in.rows = std::move(rows);
    return in;
  }
  static Instruction gadget2(std::string name, std::vector<double> cols,
                             std::vector<double> rows) {
    Instruction in;
    in.kind = InstrKind::Gadget2;
    in.name = std::move(name);
    in.cols = std::move(cols);
    in.rows = std::move(rows);
    return in;
  }
  bool operator==(const Instruction& o) const {
    return kind == o.kind && name == o.name && cols == o.cols && rows == o.rows;
  }
};

// Time-ordered parallel layers; one layer executes in one cycle.
struct Schedule {
  int level = 0;
  std::vector<std::vector<Instruction>> layers;

  std::size_t num_instructions() const {
    std::size_t n = 0;
    for (const auto& l : layers) n += l.size();
    return n;
  }
};

struct Violation {
  std::string kind;     // OrderViolation, SelectorError, SizeMismatch, ...
  std::string detail;
  std::string str() const { return kind + ": " + detail; }
};

struct ValidationError : std::exception {
  Violation violation;
  int cycle = -1;
  std::string msg;
  ValidationError(Violation v, int cy) : violation(std::move(v)), cycle(cy) {
    msg = "cycle " + std::to_string(cycle) + ": " + violation.str();
  }
  const char* what() const noexcept override { return msg.c_str(); }
};

}  // namespace coniq

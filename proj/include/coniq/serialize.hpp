#pragma once

#include <string>

#include "coniq/pipeline.hpp"

namespace coniq {

struct FormatError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Versioned JSON schedule file: profile, atom placement, physical layers,
// measurement annotations, frame data, and metrics. The register-granular
// top schedule is not serialized; round-tripped programs carry an empty one.
std::string program_to_json(const CompiledProgram& prog);
CompiledProgram program_from_json(const std::string& text);

int schedule_format_version();

}  // namespace coniq

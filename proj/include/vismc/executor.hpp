#pragma once
// Routine interpreter: runs a program against one image through a
// perception backend and folds every fault into the verdict. Nothing
// escapes; the caller always receives exactly one of the three
// outcomes.

#include "vismc/backend.hpp"
#include "vismc/geometry.hpp"
#include "vismc/program.hpp"
#include "vismc/types.hpp"

namespace vismc::vm {

// Satisfied iff the final boolean register is true; Violated iff false;
// Indeterminate(BackendFailure) when the backend throws and
// Indeterminate(BadRoutineExecution) on runtime faults such as READ_TEXT
// against a backend without OCR. Evidence records the witnesses of every
// assertion that held.
Verdict execute(const RoutineProgram& program, const std::string& image_id,
                PerceptionBackend& backend, const VmConfig& cfg);

}  // namespace vismc::vm

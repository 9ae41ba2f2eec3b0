#pragma once
// Deterministic compiler from triplets to routine programs. One routine
// per triplet; templates instantiate per predicate class, and counting
// composes by asserting a minimum detection count on the counted side.

#include <cstdint>
#include <string>

#include "vismc/lexicon.hpp"
#include "vismc/program.hpp"
#include "vismc/types.hpp"

namespace vismc::synth {

// Raised for triplets that cannot yield a meaningful routine (empty
// heads, relational words as attributes). Always classed BadTriplet.
struct SynthesisError : std::runtime_error {
    SynthesisError(ErrorClass cls, const std::string& msg)
        : std::runtime_error(msg), error_class(cls) {}
    ErrorClass error_class;
};

// Pure function of (triplet, lexicon); the result always passes
// static_check.
RoutineProgram synthesize(const Triplet& t, const PredicateLexicon& lex);

// External routine JSON. Throws MalformedInput on JSON/schema problems,
// StaticCheckError when register discipline or the boolean tail fails
// (the bad-code-generation signal).
RoutineProgram ingest_routine(const std::string& json_bytes);

struct StateCount {
    std::uint64_t triplet_local = 0;  // n: one routine per triplet
    std::uint64_t cartesian = 0;      // 2^n - 1: non-empty subgraph states avoided
};

// Diagnostic: how many verification states triplet-local checking visits
// versus the full subgraph lattice.
StateCount estimate_state_count(const Specification& spec);

}  // namespace vismc::synth

#pragma once
// Deterministic parser for the constrained query language: clauses of
// subject NP, verb phrase, object NP, prepositional adjuncts, with
// "and"/comma coordination. Anything outside the grammar raises
// ParseError; callers may fall back to a single whole-query composite
// triplet or ingest externally produced triplet JSON instead.

#include <string>

#include "vismc/types.hpp"

namespace vismc::parse {

// P(q) = phi. Same input always yields the same triplet list, in clause
// order. Throws ParseError on empty input, negation, or unrecognized
// clause structure.
Specification parse_query(const QueryText& q);

// (whole phrase, depicts, literal query) stand-in used when the grammar
// rejects a query and the composite fallback is enabled.
Specification composite_fallback(const QueryText& q);

// External triplet JSON (the boundary for any external parser). Throws
// MalformedInput naming the JSON path, or InvalidSpecification wrapping
// the validation list.
Specification ingest_triplets(const std::string& json_bytes);

}  // namespace vismc::parse

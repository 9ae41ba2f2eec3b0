#pragma once
// Shared domain types. Everything here is immutable after construction
// and safe to share between workers.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "vismc/rational.hpp"

namespace vismc {

// ---------------------------------------------------------------------------
// Errors

struct ParseError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct MalformedInput : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct InvalidSpecification : std::runtime_error {
    explicit InvalidSpecification(std::vector<std::string> errs)
        : std::runtime_error(errs.empty() ? "invalid specification" : errs.front()),
          errors(std::move(errs)) {}
    std::vector<std::string> errors;
};

struct StaticCheckError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// ---------------------------------------------------------------------------
// Query and triplets

struct QueryText {
    std::string raw;

    bool valid() const;
};

struct NounPhrase {
    std::string head;                       // singular canonical category noun
    std::optional<int> count;               // explicit numeral ("two boats" -> 2)
    std::vector<std::string> attributes;    // premodifiers ("brick", "white")
    std::optional<std::string> literal;     // target text for reading predicates

    // Open-vocabulary detection phrase: attributes followed by the head.
    std::string detection_query() const;

    bool operator==(const NounPhrase&) const = default;
};

struct Triplet {
    int id = 0;
    NounPhrase subject;
    std::string predicate;
    NounPhrase object;

    bool operator==(const Triplet&) const = default;
};

enum class SpecSource { Grammar, ExternalJson };

struct Specification {
    QueryText query;
    std::vector<Triplet> triplets;
    SpecSource source = SpecSource::Grammar;
};

// Structural equality over query text and triplets; source records how the
// specification was produced and is excluded.
bool same_content(const Specification& a, const Specification& b);

// Empty iff every invariant holds; each message names the offending
// triplet id and field.
std::vector<std::string> validate_specification(const Specification& spec);

// ---------------------------------------------------------------------------
// Boxes and verdicts

struct Box {
    double x0 = 0, y0 = 0, x1 = 0, y1 = 0;  // normalized, x0<x1, y0<y1
    double score = 1.0;
    std::string label;

    double width() const { return x1 - x0; }
    double height() const { return y1 - y0; }
    double area() const { return width() * height(); }
    double cx() const { return (x0 + x1) / 2.0; }
    double cy() const { return (y0 + y1) / 2.0; }
    bool valid() const {
        return x0 >= 0 && y0 >= 0 && x1 <= 1 && y1 <= 1 && x0 < x1 && y0 < y1 &&
               score >= 0 && score <= 1;
    }
};

enum class Outcome { Satisfied, Violated, Indeterminate };
enum class ErrorClass { BadTriplet, BadRoutineGeneration, BadRoutineExecution, BackendFailure };

// Witnesses that made one assertion true: boxes for detection/relations,
// strings for OCR matches, a count for counting assertions.
struct Evidence {
    int instr_index = 0;
    std::string op;
    std::vector<Box> boxes;
    std::vector<std::string> texts;
    std::optional<int> count;
};

struct Verdict {
    std::string image_id;
    int triplet_id = 0;
    Outcome outcome = Outcome::Indeterminate;
    std::vector<Evidence> evidence;
    std::optional<ErrorClass> error_class;
};

// ---------------------------------------------------------------------------
// Scores and rankings

struct TruthScore {
    std::int64_t satisfied = 0;
    std::int64_t total = 1;
    bool all_indeterminate = false;  // Exclude policy, no verdict usable

    Rational value() const { return Rational(satisfied, total); }

    bool operator==(const TruthScore& o) const {
        return satisfied == o.satisfied && total == o.total &&
               all_indeterminate == o.all_indeterminate;
    }
};

struct RankedEntry {
    std::string image_id;
    TruthScore truth_score;
    std::optional<Rational> rerank_score;
    std::optional<int> baseline_rank;
};

struct RankedList {
    std::vector<RankedEntry> entries;
};

const char* outcome_name(Outcome o);
Outcome outcome_from_name(const std::string& name);
const char* error_class_name(ErrorClass e);
ErrorClass error_class_from_name(const std::string& name);

}  // namespace vismc

#pragma once
// The verification DSL: a small register machine. Registers hold box
// lists, string lists, or booleans; the final instruction of a program
// must produce a boolean. There is no negation, which makes every
// program monotone in the detection threshold.

#include <optional>
#include <string>
#include <vector>

#include "vismc/types.hpp"

namespace vismc {

enum class OpCode {
    Detect,          // DETECT query -> boxes
    ReadText,        // READ_TEXT in(boxes) -> strings
    AssertRelation,  // ASSERT_RELATION rel a(boxes) b(boxes) -> bool
    AssertCount,     // ASSERT_COUNT in(boxes) min [exact] -> bool
    AssertTextMatch, // ASSERT_TEXT_MATCH in(strings) literal -> bool
    NonEmpty,        // NONEMPTY in(boxes|strings) -> bool
    And,             // AND args(bool...) -> bool
    Or,              // OR args(bool...) -> bool
    Const,           // CONST value -> bool
};

enum class Relation { On, Under, Above, Below, LeftOf, RightOf, Near, Inside, OverlapOrNear };

struct Instruction {
    OpCode op = OpCode::Const;
    std::string out;

    std::string query;                 // Detect
    Relation rel = Relation::Near;     // AssertRelation
    std::string a, b;                  // AssertRelation inputs
    std::string in;                    // ReadText/AssertCount/AssertTextMatch/NonEmpty
    int min_count = 1;                 // AssertCount
    bool exact_count = false;          // AssertCount strict mode
    std::string literal;               // AssertTextMatch
    std::vector<std::string> args;     // And/Or
    bool const_value = false;          // Const

    bool operator==(const Instruction&) const = default;
};

enum class Provenance { Synthesized, ExternalCode };

struct RoutineProgram {
    int triplet_id = 0;
    std::vector<Instruction> instructions;
    Provenance provenance = Provenance::Synthesized;
    // Set on degenerate stand-in programs (constant false) so the verdict
    // stream can annotate the Violated outcome with its cause.
    std::optional<ErrorClass> defect;
};

const char* opcode_name(OpCode op);
OpCode opcode_from_name(const std::string& name);
const char* relation_name(Relation r);
Relation relation_from_name(const std::string& name);

bool is_register_name(const std::string& name);  // r<digits>

// Register discipline and typing: every read previously written, operand
// registers carry the right kind of value, AND/OR arity >= 2, non-empty
// instruction list whose last instruction produces a boolean.
// Returns problems; empty means the program is well formed.
std::vector<std::string> static_check(const RoutineProgram& program);

// Constant-false stand-in carrying the error class of the failure that
// prevented real synthesis or ingestion.
RoutineProgram degenerate_program(int triplet_id, ErrorClass defect);

}  // namespace vismc

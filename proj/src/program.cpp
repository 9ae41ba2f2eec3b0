#include "vismc/program.hpp"

#include <cctype>
#include <unordered_map>

namespace vismc {

namespace {

enum class RegKind { Boxes, Strings, Bool };

const char* kind_name(RegKind k) {
    switch (k) {
        case RegKind::Boxes: return "boxes";
        case RegKind::Strings: return "strings";
        case RegKind::Bool: return "bool";
    }
    return "?";
}

}  // namespace

const char* opcode_name(OpCode op) {
    switch (op) {
        case OpCode::Detect: return "DETECT";
        case OpCode::ReadText: return "READ_TEXT";
        case OpCode::AssertRelation: return "ASSERT_RELATION";
        case OpCode::AssertCount: return "ASSERT_COUNT";
        case OpCode::AssertTextMatch: return "ASSERT_TEXT_MATCH";
        case OpCode::NonEmpty: return "NONEMPTY";
        case OpCode::And: return "AND";
        case OpCode::Or: return "OR";
        case OpCode::Const: return "CONST";
    }
    return "CONST";
}

OpCode opcode_from_name(const std::string& name) {
    static const std::unordered_map<std::string, OpCode> table = {
        {"DETECT", OpCode::Detect},
        {"READ_TEXT", OpCode::ReadText},
        {"ASSERT_RELATION", OpCode::AssertRelation},
        {"ASSERT_COUNT", OpCode::AssertCount},
        {"ASSERT_TEXT_MATCH", OpCode::AssertTextMatch},
        {"NONEMPTY", OpCode::NonEmpty},
        {"AND", OpCode::And},
        {"OR", OpCode::Or},
        {"CONST", OpCode::Const},
    };
    auto it = table.find(name);
    if (it == table.end()) throw MalformedInput("unknown opcode: " + name);
    return it->second;
}

const char* relation_name(Relation r) {
    switch (r) {
        case Relation::On: return "on";
        case Relation::Under: return "under";
        case Relation::Above: return "above";
        case Relation::Below: return "below";
        case Relation::LeftOf: return "left_of";
        case Relation::RightOf: return "right_of";
        case Relation::Near: return "near";
        case Relation::Inside: return "inside";
        case Relation::OverlapOrNear: return "overlap_or_near";
    }
    return "near";
}

Relation relation_from_name(const std::string& name) {
    static const std::unordered_map<std::string, Relation> table = {
        {"on", Relation::On},         {"under", Relation::Under},
        {"above", Relation::Above},   {"below", Relation::Below},
        {"left_of", Relation::LeftOf},{"right_of", Relation::RightOf},
        {"near", Relation::Near},     {"inside", Relation::Inside},
        {"overlap_or_near", Relation::OverlapOrNear},
    };
    auto it = table.find(name);
    if (it == table.end()) throw MalformedInput("unknown relation: " + name);
    return it->second;
}

bool is_register_name(const std::string& name) {
    if (name.size() < 2 || name[0] != 'r') return false;
    for (size_t i = 1; i < name.size(); ++i)
        if (!std::isdigit(static_cast<unsigned char>(name[i]))) return false;
    return true;
}

std::vector<std::string> static_check(const RoutineProgram& program) {
    std::vector<std::string> problems;
    if (program.instructions.empty()) {
        problems.push_back("instruction list empty");
        return problems;
    }

    std::unordered_map<std::string, RegKind> regs;
    auto expect = [&](const std::string& name, RegKind kind, size_t idx) {
        std::string at = "instr " + std::to_string(idx) + ": ";
        if (!is_register_name(name)) {
            problems.push_back(at + "bad register name '" + name + "'");
            return;
        }
        auto it = regs.find(name);
        if (it == regs.end()) {
            problems.push_back(at + "register " + name + " read before write");
        } else if (it->second != kind) {
            problems.push_back(at + "register " + name + " holds " + kind_name(it->second) +
                               ", expected " + kind_name(kind));
        }
    };

    for (size_t i = 0; i < program.instructions.size(); ++i) {
        const Instruction& ins = program.instructions[i];
        std::string at = "instr " + std::to_string(i) + ": ";
        RegKind out_kind = RegKind::Bool;
        switch (ins.op) {
            case OpCode::Detect:
                if (ins.query.empty()) problems.push_back(at + "DETECT with empty query");
                out_kind = RegKind::Boxes;
                break;
            case OpCode::ReadText:
                expect(ins.in, RegKind::Boxes, i);
                out_kind = RegKind::Strings;
                break;
            case OpCode::AssertRelation:
                expect(ins.a, RegKind::Boxes, i);
                expect(ins.b, RegKind::Boxes, i);
                break;
            case OpCode::AssertCount:
                expect(ins.in, RegKind::Boxes, i);
                if (ins.min_count < 1) problems.push_back(at + "ASSERT_COUNT with min < 1");
                break;
            case OpCode::AssertTextMatch:
                expect(ins.in, RegKind::Strings, i);
                if (ins.literal.empty()) problems.push_back(at + "ASSERT_TEXT_MATCH with empty literal");
                break;
            case OpCode::NonEmpty: {
                // boxes or strings both legal
                if (!is_register_name(ins.in)) {
                    problems.push_back(at + "bad register name '" + ins.in + "'");
                } else if (auto it = regs.find(ins.in); it == regs.end()) {
                    problems.push_back(at + "register " + ins.in + " read before write");
                } else if (it->second == RegKind::Bool) {
                    problems.push_back(at + "NONEMPTY over a boolean register");
                }
                break;
            }
            case OpCode::And:
            case OpCode::Or:
                if (ins.args.size() < 2) problems.push_back(at + "AND/OR arity < 2");
                for (const auto& r : ins.args) expect(r, RegKind::Bool, i);
                break;
            case OpCode::Const:
                break;
        }
        if (!is_register_name(ins.out)) {
            problems.push_back(at + "bad output register '" + ins.out + "'");
        } else {
            regs[ins.out] = out_kind;
        }
    }

    const Instruction& last = program.instructions.back();
    bool bool_tail = last.op != OpCode::Detect && last.op != OpCode::ReadText;
    if (!bool_tail) problems.push_back("last instruction does not produce a boolean");
    return problems;
}

RoutineProgram degenerate_program(int triplet_id, ErrorClass defect) {
    RoutineProgram p;
    p.triplet_id = triplet_id;
    Instruction c;
    c.op = OpCode::Const;
    c.const_value = false;
    c.out = "r0";
    p.instructions.push_back(c);
    p.defect = defect;
    return p;
}

}  // namespace vismc

#include "vismc/executor.hpp"

#include <unordered_map>
#include <variant>

namespace vismc::vm {

namespace {

using Value = std::variant<std::vector<Box>, std::vector<std::string>, bool>;

struct RuntimeFault : std::runtime_error {
    using std::runtime_error::runtime_error;
};

const std::vector<Box>& boxes_at(const std::unordered_map<std::string, Value>& regs,
                                 const std::string& name) {
    auto it = regs.find(name);
    if (it == regs.end()) throw RuntimeFault("register " + name + " unset");
    if (!std::holds_alternative<std::vector<Box>>(it->second))
        throw RuntimeFault("register " + name + " does not hold boxes");
    return std::get<std::vector<Box>>(it->second);
}

const std::vector<std::string>& strings_at(const std::unordered_map<std::string, Value>& regs,
                                           const std::string& name) {
    auto it = regs.find(name);
    if (it == regs.end()) throw RuntimeFault("register " + name + " unset");
    if (!std::holds_alternative<std::vector<std::string>>(it->second))
        throw RuntimeFault("register " + name + " does not hold strings");
    return std::get<std::vector<std::string>>(it->second);
}

bool bool_at(const std::unordered_map<std::string, Value>& regs, const std::string& name) {
    auto it = regs.find(name);
    if (it == regs.end()) throw RuntimeFault("register " + name + " unset");
    if (!std::holds_alternative<bool>(it->second))
        throw RuntimeFault("register " + name + " does not hold a boolean");
    return std::get<bool>(it->second);
}

}  // namespace

Verdict execute(const RoutineProgram& program, const std::string& image_id,
                PerceptionBackend& backend, const VmConfig& cfg) {
    Verdict verdict;
    verdict.image_id = image_id;
    verdict.triplet_id = program.triplet_id;

    std::unordered_map<std::string, Value> regs;
    std::vector<Evidence> evidence;

    try {
        if (program.instructions.empty()) throw RuntimeFault("empty program");
        for (size_t i = 0; i < program.instructions.size(); ++i) {
            const Instruction& ins = program.instructions[i];
            switch (ins.op) {
                case OpCode::Detect: {
                    std::vector<Box> found = backend.detect(image_id, ins.query);
                    std::vector<Box> kept;
                    for (const Box& b : found)
                        if (b.score >= cfg.detect_threshold) kept.push_back(b);
                    regs[ins.out] = std::move(kept);
                    break;
                }
                case OpCode::ReadText: {
                    if (!backend.has_ocr())
                        throw RuntimeFault("READ_TEXT requires an OCR-capable backend");
                    std::vector<std::string> texts;
                    for (const Box& region : boxes_at(regs, ins.in)) {
                        for (auto& s : backend.read_text(image_id, region)) texts.push_back(std::move(s));
                    }
                    regs[ins.out] = std::move(texts);
                    break;
                }
                case OpCode::AssertRelation: {
                    RelationResult r =
                        eval_relation(ins.rel, boxes_at(regs, ins.a), boxes_at(regs, ins.b), cfg);
                    if (r.holds && r.witness) {
                        Evidence e;
                        e.instr_index = static_cast<int>(i);
                        e.op = opcode_name(ins.op);
                        e.boxes = {r.witness->first, r.witness->second};
                        evidence.push_back(std::move(e));
                    }
                    regs[ins.out] = r.holds;
                    break;
                }
                case OpCode::AssertCount: {
                    const auto& boxes = boxes_at(regs, ins.in);
                    int n = static_cast<int>(boxes.size());
                    bool ok = ins.exact_count ? n == ins.min_count : n >= ins.min_count;
                    if (ok) {
                        Evidence e;
                        e.instr_index = static_cast<int>(i);
                        e.op = opcode_name(ins.op);
                        e.boxes = boxes;
                        e.count = n;
                        evidence.push_back(std::move(e));
                    }
                    regs[ins.out] = ok;
                    break;
                }
                case OpCode::AssertTextMatch: {
                    const auto& texts = strings_at(regs, ins.in);
                    bool ok = match_text(texts, ins.literal);
                    if (ok) {
                        Evidence e;
                        e.instr_index = static_cast<int>(i);
                        e.op = opcode_name(ins.op);
                        e.texts = texts;
                        evidence.push_back(std::move(e));
                    }
                    regs[ins.out] = ok;
                    break;
                }
                case OpCode::NonEmpty: {
                    auto it = regs.find(ins.in);
                    if (it == regs.end()) throw RuntimeFault("register " + ins.in + " unset");
                    bool ok = false;
                    Evidence e;
                    e.instr_index = static_cast<int>(i);
                    e.op = opcode_name(ins.op);
                    if (auto* bx = std::get_if<std::vector<Box>>(&it->second)) {
                        ok = !bx->empty();
                        if (ok) e.boxes = *bx;
                    } else if (auto* st = std::get_if<std::vector<std::string>>(&it->second)) {
                        ok = !st->empty();
                        if (ok) e.texts = *st;
                    } else {
                        throw RuntimeFault("NONEMPTY over a boolean register");
                    }
                    if (ok) evidence.push_back(std::move(e));
                    regs[ins.out] = ok;
                    break;
                }
                case OpCode::And: {
                    bool acc = true;
                    for (const auto& r : ins.args) acc = bool_at(regs, r) && acc;
                    regs[ins.out] = acc;
                    break;
                }
                case OpCode::Or: {
                    bool acc = false;
                    for (const auto& r : ins.args) acc = bool_at(regs, r) || acc;
                    regs[ins.out] = acc;
                    break;
                }
                case OpCode::Const:
                    regs[ins.out] = ins.const_value;
                    break;
            }
        }
        bool final_value = bool_at(regs, program.instructions.back().out);
        verdict.outcome = final_value ? Outcome::Satisfied : Outcome::Violated;
        if (final_value) {
            verdict.evidence = std::move(evidence);
        } else if (program.defect &&
                   (*program.defect == ErrorClass::BadTriplet ||
                    *program.defect == ErrorClass::BadRoutineGeneration)) {
            // degenerate stand-in program: annotate the violation's cause
            verdict.error_class = program.defect;
        }
    } catch (const BackendError& e) {
        verdict.outcome = Outcome::Indeterminate;
        verdict.error_class = ErrorClass::BackendFailure;
        (void)e;
    } catch (const RuntimeFault&) {
        verdict.outcome = Outcome::Indeterminate;
        verdict.error_class = ErrorClass::BadRoutineExecution;
    }
    return verdict;
}

}  // namespace vismc::vm

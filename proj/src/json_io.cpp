#include "vismc/json_io.hpp"

namespace vismc {

namespace {

const json& require(const json& j, const char* key, const std::string& path) {
    if (!j.is_object()) throw MalformedInput(path + ": expected object");
    auto it = j.find(key);
    if (it == j.end()) throw MalformedInput(path + "." + key + ": missing");
    return *it;
}

std::string require_string(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_string()) throw MalformedInput(path + "." + key + ": expected string");
    return v.get<std::string>();
}

int require_int(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number_integer()) throw MalformedInput(path + "." + key + ": expected integer");
    return v.get<int>();
}

double require_number(const json& j, const char* key, const std::string& path) {
    const json& v = require(j, key, path);
    if (!v.is_number()) throw MalformedInput(path + "." + key + ": expected number");
    return v.get<double>();
}

}  // namespace

json parse_json(const std::string& bytes, const std::string& what) {
    json j = json::parse(bytes, nullptr, false);
    if (j.is_discarded()) throw MalformedInput(what + ": not valid JSON");
    return j;
}

// ---------------------------------------------------------------------------
// Writers

json to_json(const NounPhrase& np) {
    json j = json::object();
    if (!np.head.empty()) j["head"] = np.head;
    if (np.count) j["count"] = *np.count;
    if (!np.attributes.empty()) j["attributes"] = np.attributes;
    if (np.literal) j["literal"] = *np.literal;
    return j;
}

json to_json(const Triplet& t) {
    return json{{"id", t.id}, {"s", to_json(t.subject)}, {"p", t.predicate}, {"o", to_json(t.object)}};
}

json to_json(const Specification& spec) {
    json triplets = json::array();
    for (const auto& t : spec.triplets) triplets.push_back(to_json(t));
    return json{{"query", spec.query.raw}, {"triplets", triplets}};
}

json to_json(const Box& b) {
    json j = json{{"x0", b.x0}, {"y0", b.y0}, {"x1", b.x1}, {"y1", b.y1}, {"score", b.score}};
    if (!b.label.empty()) j["label"] = b.label;
    return j;
}

json to_json(const Evidence& e) {
    json j = json{{"instr", e.instr_index}, {"op", e.op}};
    if (!e.boxes.empty()) {
        json boxes = json::array();
        for (const auto& b : e.boxes) boxes.push_back(to_json(b));
        j["boxes"] = boxes;
    }
    if (!e.texts.empty()) j["texts"] = e.texts;
    if (e.count) j["count"] = *e.count;
    return j;
}

json to_json(const Verdict& v) {
    json evidence = json::array();
    for (const auto& e : v.evidence) evidence.push_back(to_json(e));
    json j = json{{"image", v.image_id},
                  {"triplet", v.triplet_id},
                  {"outcome", outcome_name(v.outcome)},
                  {"evidence", evidence}};
    if (v.error_class) j["error"] = error_class_name(*v.error_class);
    return j;
}

json to_json(const TruthScore& s) {
    json j = json{{"satisfied", s.satisfied}, {"total", s.total}};
    if (s.all_indeterminate) j["all_indeterminate"] = true;
    return j;
}

json to_json(const Rational& r) {
    return json{{"num", r.num()}, {"den", r.den()}};
}

json to_json(const Instruction& ins) {
    json j = json{{"op", opcode_name(ins.op)}, {"out", ins.out}};
    switch (ins.op) {
        case OpCode::Detect:
            j["query"] = ins.query;
            break;
        case OpCode::ReadText:
            j["in"] = ins.in;
            break;
        case OpCode::AssertRelation:
            j["rel"] = relation_name(ins.rel);
            j["a"] = ins.a;
            j["b"] = ins.b;
            break;
        case OpCode::AssertCount:
            j["in"] = ins.in;
            j["min"] = ins.min_count;
            if (ins.exact_count) j["exact"] = true;
            break;
        case OpCode::AssertTextMatch:
            j["in"] = ins.in;
            j["literal"] = ins.literal;
            break;
        case OpCode::NonEmpty:
            j["in"] = ins.in;
            break;
        case OpCode::And:
        case OpCode::Or:
            j["args"] = ins.args;
            break;
        case OpCode::Const:
            j["value"] = ins.const_value;
            break;
    }
    return j;
}

json to_json(const RoutineProgram& p) {
    json instructions = json::array();
    for (const auto& ins : p.instructions) instructions.push_back(to_json(ins));
    json j = json{{"triplet_id", p.triplet_id}, {"instructions", instructions}};
    if (p.defect) j["defect"] = error_class_name(*p.defect);
    return j;
}

json to_json(const RankedEntry& e) {
    json j = json{{"image_id", e.image_id}, {"truth_score", to_json(e.truth_score)}};
    if (e.rerank_score) j["rerank_score"] = to_json(*e.rerank_score);
    if (e.baseline_rank) j["baseline_rank"] = *e.baseline_rank;
    return j;
}

json to_json(const RankedList& l) {
    json entries = json::array();
    for (const auto& e : l.entries) entries.push_back(to_json(e));
    return json{{"entries", entries}};
}

// ---------------------------------------------------------------------------
// Readers

NounPhrase noun_phrase_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw MalformedInput(path + ": expected object");
    NounPhrase np;
    if (auto it = j.find("head"); it != j.end()) {
        if (!it->is_string()) throw MalformedInput(path + ".head: expected string");
        np.head = it->get<std::string>();
    }
    if (auto it = j.find("count"); it != j.end()) {
        if (!it->is_number_integer()) throw MalformedInput(path + ".count: expected integer");
        np.count = it->get<int>();
    }
    if (auto it = j.find("attributes"); it != j.end()) {
        if (!it->is_array()) throw MalformedInput(path + ".attributes: expected array");
        for (size_t i = 0; i < it->size(); ++i) {
            const json& a = (*it)[i];
            if (!a.is_string())
                throw MalformedInput(path + ".attributes[" + std::to_string(i) + "]: expected string");
            np.attributes.push_back(a.get<std::string>());
        }
    }
    if (auto it = j.find("literal"); it != j.end()) {
        if (!it->is_string()) throw MalformedInput(path + ".literal: expected string");
        np.literal = it->get<std::string>();
    }
    return np;
}

Triplet triplet_from_json(const json& j, const std::string& path) {
    Triplet t;
    t.id = require_int(j, "id", path);
    t.subject = noun_phrase_from_json(require(j, "s", path), path + ".s");
    t.predicate = require_string(j, "p", path);
    t.object = noun_phrase_from_json(require(j, "o", path), path + ".o");
    return t;
}

Specification specification_from_json(const json& j) {
    Specification spec;
    spec.query.raw = require_string(j, "query", "$");
    const json& triplets = require(j, "triplets", "$");
    if (!triplets.is_array()) throw MalformedInput("$.triplets: expected array");
    for (size_t i = 0; i < triplets.size(); ++i) {
        spec.triplets.push_back(triplet_from_json(triplets[i], "$.triplets[" + std::to_string(i) + "]"));
    }
    spec.source = SpecSource::ExternalJson;
    return spec;
}

Box box_from_json(const json& j, const std::string& path) {
    Box b;
    b.x0 = require_number(j, "x0", path);
    b.y0 = require_number(j, "y0", path);
    b.x1 = require_number(j, "x1", path);
    b.y1 = require_number(j, "y1", path);
    if (auto it = j.find("score"); it != j.end()) b.score = it->get<double>();
    if (auto it = j.find("label"); it != j.end()) b.label = it->get<std::string>();
    if (!b.valid()) throw MalformedInput(path + ": box coordinates out of range or unordered");
    return b;
}

Evidence evidence_from_json(const json& j, const std::string& path) {
    Evidence e;
    e.instr_index = require_int(j, "instr", path);
    e.op = require_string(j, "op", path);
    if (auto it = j.find("boxes"); it != j.end()) {
        for (size_t i = 0; i < it->size(); ++i)
            e.boxes.push_back(box_from_json((*it)[i], path + ".boxes[" + std::to_string(i) + "]"));
    }
    if (auto it = j.find("texts"); it != j.end()) e.texts = it->get<std::vector<std::string>>();
    if (auto it = j.find("count"); it != j.end()) e.count = it->get<int>();
    return e;
}

Verdict verdict_from_json(const json& j) {
    Verdict v;
    v.image_id = require_string(j, "image", "$");
    v.triplet_id = require_int(j, "triplet", "$");
    v.outcome = outcome_from_name(require_string(j, "outcome", "$"));
    if (auto it = j.find("evidence"); it != j.end()) {
        for (size_t i = 0; i < it->size(); ++i)
            v.evidence.push_back(evidence_from_json((*it)[i], "$.evidence[" + std::to_string(i) + "]"));
    }
    if (auto it = j.find("error"); it != j.end() && !it->is_null())
        v.error_class = error_class_from_name(it->get<std::string>());
    return v;
}

TruthScore truth_score_from_json(const json& j) {
    TruthScore s;
    s.satisfied = require_int(j, "satisfied", "$");
    s.total = require_int(j, "total", "$");
    if (auto it = j.find("all_indeterminate"); it != j.end()) s.all_indeterminate = it->get<bool>();
    return s;
}

Rational rational_from_json(const json& j, const std::string& path) {
    if (!j.is_object()) throw MalformedInput(path + ": expected object");
    return Rational(require_int(j, "num", path), require_int(j, "den", path));
}

Instruction instruction_from_json(const json& j, const std::string& path) {
    Instruction ins;
    ins.op = opcode_from_name(require_string(j, "op", path));
    ins.out = require_string(j, "out", path);
    switch (ins.op) {
        case OpCode::Detect:
            ins.query = require_string(j, "query", path);
            break;
        case OpCode::ReadText:
            ins.in = require_string(j, "in", path);
            break;
        case OpCode::AssertRelation:
            ins.rel = relation_from_name(require_string(j, "rel", path));
            ins.a = require_string(j, "a", path);
            ins.b = require_string(j, "b", path);
            break;
        case OpCode::AssertCount:
            ins.in = require_string(j, "in", path);
            ins.min_count = require_int(j, "min", path);
            if (auto it = j.find("exact"); it != j.end()) ins.exact_count = it->get<bool>();
            break;
        case OpCode::AssertTextMatch:
            ins.in = require_string(j, "in", path);
            ins.literal = require_string(j, "literal", path);
            break;
        case OpCode::NonEmpty:
            ins.in = require_string(j, "in", path);
            break;
        case OpCode::And:
        case OpCode::Or: {
            const json& args = require(j, "args", path);
            if (!args.is_array()) throw MalformedInput(path + ".args: expected array");
            ins.args = args.get<std::vector<std::string>>();
            break;
        }
        case OpCode::Const: {
            const json& v = require(j, "value", path);
            if (!v.is_boolean()) throw MalformedInput(path + ".value: expected boolean");
            ins.const_value = v.get<bool>();
            break;
        }
    }
    return ins;
}

RoutineProgram routine_from_json(const json& j) {
    RoutineProgram p;
    p.triplet_id = require_int(j, "triplet_id", "$");
    const json& instructions = require(j, "instructions", "$");
    if (!instructions.is_array()) throw MalformedInput("$.instructions: expected array");
    for (size_t i = 0; i < instructions.size(); ++i) {
        p.instructions.push_back(
            instruction_from_json(instructions[i], "$.instructions[" + std::to_string(i) + "]"));
    }
    if (auto it = j.find("defect"); it != j.end() && !it->is_null())
        p.defect = error_class_from_name(it->get<std::string>());
    p.provenance = Provenance::ExternalCode;
    return p;
}

RankedList ranked_list_from_json(const json& j) {
    RankedList l;
    const json& entries = require(j, "entries", "$");
    for (size_t i = 0; i < entries.size(); ++i) {
        const json& je = entries[i];
        std::string path = "$.entries[" + std::to_string(i) + "]";
        RankedEntry e;
        e.image_id = require_string(je, "image_id", path);
        e.truth_score = truth_score_from_json(require(je, "truth_score", path));
        if (auto it = je.find("rerank_score"); it != je.end())
            e.rerank_score = rational_from_json(*it, path + ".rerank_score");
        if (auto it = je.find("baseline_rank"); it != je.end()) e.baseline_rank = it->get<int>();
        l.entries.push_back(std::move(e));
    }
    return l;
}

}  // namespace vismc

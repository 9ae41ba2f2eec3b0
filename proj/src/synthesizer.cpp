#include "vismc/synthesizer.hpp"

#include <unordered_set>

#include "vismc/json_io.hpp"
#include "vismc/text.hpp"

namespace vismc::synth {

namespace {

// Relational/prepositional words that cannot serve as an attribute; a
// copular triplet pointing at one of these is a parse gone wrong
// ("snow is under").
bool is_relational_word(const std::string& w) {
    static const std::unordered_set<std::string> words = {
        "on", "under", "above", "below", "near", "by", "in", "inside", "behind",
        "left", "right", "front", "of", "with", "at", "over", "beneath", "beside"};
    return words.count(w) > 0;
}

class ProgramBuilder {
public:
    explicit ProgramBuilder(int triplet_id) { program_.triplet_id = triplet_id; }

    std::string detect(const std::string& query) {
        Instruction i;
        i.op = OpCode::Detect;
        i.query = query;
        i.out = fresh();
        program_.instructions.push_back(i);
        return i.out;
    }

    std::string read_text(const std::string& in) {
        Instruction i;
        i.op = OpCode::ReadText;
        i.in = in;
        i.out = fresh();
        program_.instructions.push_back(i);
        return i.out;
    }

    std::string relation(Relation rel, const std::string& a, const std::string& b) {
        Instruction i;
        i.op = OpCode::AssertRelation;
        i.rel = rel;
        i.a = a;
        i.b = b;
        i.out = fresh();
        program_.instructions.push_back(i);
        return i.out;
    }

    std::string count(const std::string& in, int min, bool exact) {
        Instruction i;
        i.op = OpCode::AssertCount;
        i.in = in;
        i.min_count = min;
        i.exact_count = exact;
        i.out = fresh();
        program_.instructions.push_back(i);
        return i.out;
    }

    std::string text_match(const std::string& in, const std::string& literal) {
        Instruction i;
        i.op = OpCode::AssertTextMatch;
        i.in = in;
        i.literal = literal;
        i.out = fresh();
        program_.instructions.push_back(i);
        return i.out;
    }

    std::string nonempty(const std::string& in) {
        Instruction i;
        i.op = OpCode::NonEmpty;
        i.in = in;
        i.out = fresh();
        program_.instructions.push_back(i);
        return i.out;
    }

    // Ties the boolean results together; a single condition is already
    // the program tail.
    RoutineProgram finish(const std::vector<std::string>& bools) {
        if (bools.size() > 1) {
            Instruction i;
            i.op = OpCode::And;
            i.args = bools;
            i.out = fresh();
            program_.instructions.push_back(i);
        }
        program_.provenance = Provenance::Synthesized;
        return std::move(program_);
    }

private:
    std::string fresh() { return "r" + std::to_string(next_reg_++); }

    RoutineProgram program_;
    int next_reg_ = 0;
};

}  // namespace

RoutineProgram synthesize(const Triplet& t, const PredicateLexicon& lex) {
    if (t.subject.head.empty())
        throw SynthesisError(ErrorClass::BadTriplet, "triplet " + std::to_string(t.id) + ": subject head empty");
    if (t.predicate.empty())
        throw SynthesisError(ErrorClass::BadTriplet, "triplet " + std::to_string(t.id) + ": predicate empty");
    if (t.object.head.empty() && !t.object.literal)
        throw SynthesisError(ErrorClass::BadTriplet,
                             "triplet " + std::to_string(t.id) + ": object head and literal both absent");

    // whole-query fallback: detect the phrase itself
    if (t.predicate == "depicts") {
        ProgramBuilder b(t.id);
        std::string query = t.object.literal ? *t.object.literal : t.subject.head;
        std::string d = b.detect(text::to_lower(query));
        return b.finish({b.nonempty(d)});
    }

    PredicateClass cls = classify_predicate(t, lex);

    if (cls.base == BaseClass::Attribute && !t.object.head.empty() && is_relational_word(t.object.head))
        throw SynthesisError(ErrorClass::BadTriplet, "triplet " + std::to_string(t.id) +
                                                         ": relational word '" + t.object.head +
                                                         "' used as attribute");
    if ((cls.base == BaseClass::Spatial || cls.base == BaseClass::Existence) && t.object.head.empty())
        throw SynthesisError(ErrorClass::BadTriplet,
                             "triplet " + std::to_string(t.id) + ": spatial predicate over literal text");

    const std::string subj_query = t.subject.detection_query();
    const std::string obj_query =
        t.object.head.empty() ? text::to_lower(*t.object.literal) : t.object.detection_query();
    const bool strict = lex.strict_counting();

    ProgramBuilder b(t.id);
    std::vector<std::string> bools;

    switch (cls.base) {
        case BaseClass::Spatial:
        case BaseClass::Existence: {
            std::string s = b.detect(subj_query);
            std::string o = b.detect(obj_query);
            if (t.subject.count) bools.push_back(b.count(s, *t.subject.count, strict));
            if (t.object.count) bools.push_back(b.count(o, *t.object.count, strict));
            Relation rel = cls.base == BaseClass::Existence ? Relation::OverlapOrNear
                                                            : cls.relation.value_or(Relation::Near);
            bools.push_back(b.relation(rel, s, o));
            break;
        }
        case BaseClass::Reading: {
            std::string s = b.detect(subj_query);
            if (t.subject.count) bools.push_back(b.count(s, *t.subject.count, strict));
            std::string txt = b.read_text(s);
            std::string literal = t.object.literal ? *t.object.literal : obj_query;
            bools.push_back(b.text_match(txt, literal));
            break;
        }
        case BaseClass::Attribute: {
            std::string composite = obj_query + " " + subj_query;
            std::string d = b.detect(composite);
            if (t.subject.count) {
                bools.push_back(b.count(d, *t.subject.count, strict));
            } else {
                bools.push_back(b.nonempty(d));
            }
            break;
        }
        case BaseClass::ActionComposite: {
            std::string composite = subj_query + " " + t.predicate + " " + obj_query;
            std::string dc = b.detect(composite);
            bools.push_back(b.nonempty(dc));
            std::string s = b.detect(subj_query);
            bools.push_back(b.nonempty(s));
            std::string o = b.detect(obj_query);
            bools.push_back(b.nonempty(o));
            if (t.subject.count) bools.push_back(b.count(s, *t.subject.count, strict));
            if (t.object.count) bools.push_back(b.count(o, *t.object.count, strict));
            // no relation in this template; counting corroborates proximity
            if (cls.counting && !t.object.head.empty())
                bools.push_back(b.relation(Relation::Near, s, o));
            break;
        }
    }
    return b.finish(bools);
}

RoutineProgram ingest_routine(const std::string& json_bytes) {
    json j = parse_json(json_bytes, "routine document");
    RoutineProgram p = routine_from_json(j);
    auto problems = static_check(p);
    if (!problems.empty()) {
        std::string msg = "routine fails static checks: " + problems.front();
        if (problems.size() > 1) msg += " (+" + std::to_string(problems.size() - 1) + " more)";
        throw StaticCheckError(msg);
    }
    return p;
}

StateCount estimate_state_count(const Specification& spec) {
    const size_t n = spec.triplets.size();
    if (n == 0 || n > 62) throw std::invalid_argument("state count defined for 1..62 triplets");
    StateCount c;
    c.triplet_local = n;
    c.cartesian = (std::uint64_t{1} << n) - 1;
    return c;
}

}  // namespace vismc::synth

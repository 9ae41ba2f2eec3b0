#include "vismc/lexicon.hpp"

#include <vector>

#include "vismc/json_io.hpp"
#include "vismc/text.hpp"

namespace vismc::synth {

const char* base_class_name(BaseClass c) {
    switch (c) {
        case BaseClass::Spatial: return "spatial";
        case BaseClass::Reading: return "reading";
        case BaseClass::Attribute: return "attribute";
        case BaseClass::Existence: return "existence";
        case BaseClass::ActionComposite: return "action";
    }
    return "action";
}

BaseClass base_class_from_name(const std::string& name) {
    if (name == "spatial") return BaseClass::Spatial;
    if (name == "reading") return BaseClass::Reading;
    if (name == "attribute") return BaseClass::Attribute;
    if (name == "existence") return BaseClass::Existence;
    if (name == "action") return BaseClass::ActionComposite;
    throw MalformedInput("unknown predicate class: " + name);
}

PredicateLexicon PredicateLexicon::builtin() {
    PredicateLexicon lex;
    const std::vector<std::pair<const char*, Relation>> spatial = {
        {"on", Relation::On},           {"under", Relation::Under},
        {"above", Relation::Above},     {"below", Relation::Below},
        {"near", Relation::Near},       {"by", Relation::Near},
        {"located by", Relation::Near}, {"left of", Relation::LeftOf},
        {"right of", Relation::RightOf},{"in", Relation::Inside},
        {"inside", Relation::Inside},
        // depth relations have no 2D box semantics; co-location stands in
        {"behind", Relation::OverlapOrNear},
        {"in front of", Relation::OverlapOrNear},
    };
    for (const auto& [pred, rel] : spatial) {
        lex.entries_[pred] = BaseClass::Spatial;
        lex.relations_[pred] = rel;
    }
    for (const char* pred : {"reads", "says", "labeled", "displays"})
        lex.entries_[pred] = BaseClass::Reading;
    for (const char* pred : {"is", "made of"})
        lex.entries_[pred] = BaseClass::Attribute;
    for (const char* pred : {"with", "has", "have", "holding", "holds", "hold",
                             "containing", "contains", "contain", "carrying"})
        lex.entries_[pred] = BaseClass::Existence;
    // reserved fallback predicate of the CLI composite path
    lex.entries_["depicts"] = BaseClass::ActionComposite;
    return lex;
}

PredicateLexicon PredicateLexicon::load(const std::string& json_bytes) {
    PredicateLexicon lex = builtin();
    json j = parse_json(json_bytes, "lexicon");
    const json* map = &j;
    if (j.is_object() && j.contains("predicates")) {
        map = &j.at("predicates");
        if (auto it = j.find("strict_counting"); it != j.end()) lex.strict_counting_ = it->get<bool>();
    }
    if (!map->is_object()) throw MalformedInput("lexicon: expected an object of predicate -> class");
    for (auto it = map->begin(); it != map->end(); ++it) {
        if (!it.value().is_string()) throw MalformedInput("lexicon." + it.key() + ": expected class name");
        lex.entries_[text::to_lower(it.key())] = base_class_from_name(it.value().get<std::string>());
    }
    return lex;
}

void PredicateLexicon::set_entry(const std::string& predicate, BaseClass cls) {
    entries_[predicate] = cls;
}

std::string PredicateLexicon::fingerprint() const {
    std::string out = strict_counting_ ? "strict;" : "lenient;";
    for (const auto& [pred, cls] : entries_) {
        out += pred;
        out += '=';
        out += base_class_name(cls);
        out += ';';
    }
    return out;
}

std::optional<BaseClass> PredicateLexicon::exact(const std::string& predicate) const {
    auto it = entries_.find(predicate);
    if (it == entries_.end()) return std::nullopt;
    return it->second;
}

namespace {

// Longest entry that equals the predicate or ends it at a word boundary.
template <typename Map>
auto suffix_lookup(const Map& map, const std::string& predicate) -> const typename Map::mapped_type* {
    const typename Map::mapped_type* best = nullptr;
    size_t best_len = 0;
    for (const auto& [key, value] : map) {
        if (key.size() > predicate.size()) continue;
        if (predicate.compare(predicate.size() - key.size(), key.size(), key) != 0) continue;
        bool word_boundary = key.size() == predicate.size() ||
                             predicate[predicate.size() - key.size() - 1] == ' ';
        if (word_boundary && key.size() >= best_len) {
            best = &value;
            best_len = key.size();
        }
    }
    return best;
}

}  // namespace

BaseClass PredicateLexicon::resolve(const std::string& predicate) const {
    if (auto it = entries_.find(predicate); it != entries_.end()) return it->second;
    if (const BaseClass* cls = suffix_lookup(entries_, predicate)) return *cls;
    return BaseClass::ActionComposite;
}

std::optional<Relation> PredicateLexicon::relation_for(const std::string& predicate) const {
    if (auto it = relations_.find(predicate); it != relations_.end()) return it->second;
    if (const Relation* rel = suffix_lookup(relations_, predicate)) return *rel;
    return std::nullopt;
}

PredicateClass classify_predicate(const Triplet& t, const PredicateLexicon& lex) {
    PredicateClass result;
    result.counting = (t.subject.count.has_value() || t.object.count.has_value());

    if (auto cls = lex.exact(t.predicate)) {
        result.base = *cls;
    } else if (t.object.literal) {
        result.base = BaseClass::Reading;
    } else {
        result.base = lex.resolve(t.predicate);
    }
    if (result.base == BaseClass::Spatial) result.relation = lex.relation_for(t.predicate);
    return result;
}

}  // namespace vismc::synth

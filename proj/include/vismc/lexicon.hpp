#pragma once
// Predicate lexicon: maps predicate strings to routine template classes.
// Data-driven (loadable JSON) with a built-in default; resolution is
// longest match (exact, then longest trailing word suffix, e.g.
// "standing in" -> "in"), falling back to the composite-action class.

#include <map>
#include <optional>
#include <string>

#include "vismc/program.hpp"
#include "vismc/types.hpp"

namespace vismc::synth {

enum class BaseClass { Spatial, Reading, Attribute, Existence, ActionComposite };

struct PredicateClass {
    BaseClass base = BaseClass::ActionComposite;
    bool counting = false;                       // composes with the base class
    std::optional<Relation> relation;            // set for Spatial
};

class PredicateLexicon {
public:
    static PredicateLexicon builtin();
    // Flat {"predicate":"class"} map, or {"predicates":{...},
    // "strict_counting":bool}. Entries override the builtin defaults.
    static PredicateLexicon load(const std::string& json_bytes);

    void set_entry(const std::string& predicate, BaseClass cls);
    std::optional<BaseClass> exact(const std::string& predicate) const;

    // Longest-match class of a bare predicate string (no triplet context).
    BaseClass resolve(const std::string& predicate) const;

    // Relation carried by a spatial predicate (suffix-matched the same way).
    std::optional<Relation> relation_for(const std::string& predicate) const;

    bool strict_counting() const { return strict_counting_; }
    void set_strict_counting(bool v) { strict_counting_ = v; }

    // Deterministic digest of the entry table, for plan hashing.
    std::string fingerprint() const;

private:
    std::map<std::string, BaseClass> entries_;
    std::map<std::string, Relation> relations_;
    bool strict_counting_ = false;
};

const char* base_class_name(BaseClass c);
BaseClass base_class_from_name(const std::string& name);

// Total function: Spatial/Reading/Attribute/Existence by lexicon (with
// the literal-object override for reading), ActionComposite otherwise;
// the counting flag set when either argument carries an explicit count.
PredicateClass classify_predicate(const Triplet& t, const PredicateLexicon& lex);

}  // namespace vismc::synth

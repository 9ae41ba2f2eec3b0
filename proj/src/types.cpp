#include "vismc/types.hpp"

#include <algorithm>
#include <unordered_set>

#include "vismc/text.hpp"

namespace vismc {

namespace {

bool is_lower_canonical(const std::string& s) {
    return s == text::to_lower(s);
}

}  // namespace

bool QueryText::valid() const {
    std::string t = text::trim(raw);
    return !t.empty() && raw.size() <= 4096;
}

std::string NounPhrase::detection_query() const {
    std::vector<std::string> parts = attributes;
    if (!head.empty()) parts.push_back(head);
    return text::join(parts);
}

bool same_content(const Specification& a, const Specification& b) {
    return a.query.raw == b.query.raw && a.triplets == b.triplets;
}

std::vector<std::string> validate_specification(const Specification& spec) {
    std::vector<std::string> errors;
    if (!spec.query.valid()) errors.push_back("query: empty or exceeds 4096 characters");
    if (spec.triplets.empty()) {
        errors.push_back("empty specification: no triplets");
        return errors;
    }
    std::unordered_set<int> seen;
    for (size_t i = 0; i < spec.triplets.size(); ++i) {
        const Triplet& t = spec.triplets[i];
        std::string at = "triplet " + std::to_string(t.id);
        if (!seen.insert(t.id).second) errors.push_back(at + ": duplicate id " + std::to_string(t.id));
        if (t.predicate.empty()) errors.push_back(at + ": predicate empty");
        if (!is_lower_canonical(t.predicate)) errors.push_back(at + ": predicate not lowercase");
        auto check_np = [&](const NounPhrase& np, const char* field, bool subject) {
            if (np.head.empty() && (subject || !np.literal)) {
                errors.push_back(at + ": " + field + ".head empty");
            }
            if (!is_lower_canonical(np.head)) errors.push_back(at + ": " + field + ".head not lowercase");
            if (np.count && *np.count < 1) errors.push_back(at + ": " + field + ".count < 1");
            for (const auto& a : np.attributes) {
                if (a.empty() || !is_lower_canonical(a))
                    errors.push_back(at + ": " + field + ".attributes not lowercase-canonical");
            }
            if (np.literal && np.literal->empty())
                errors.push_back(at + ": " + field + ".literal empty");
        };
        check_np(t.subject, "subject", true);
        check_np(t.object, "object", false);
    }
    // ids must be exactly 0..n-1
    std::vector<int> ids;
    ids.reserve(spec.triplets.size());
    for (const auto& t : spec.triplets) ids.push_back(t.id);
    std::sort(ids.begin(), ids.end());
    for (size_t i = 0; i < ids.size(); ++i) {
        if (ids[i] != static_cast<int>(i)) {
            errors.push_back("triplet ids not contiguous 0.." + std::to_string(ids.size() - 1));
            break;
        }
    }
    return errors;
}

const char* outcome_name(Outcome o) {
    switch (o) {
        case Outcome::Satisfied: return "satisfied";
        case Outcome::Violated: return "violated";
        case Outcome::Indeterminate: return "indeterminate";
    }
    return "indeterminate";
}

Outcome outcome_from_name(const std::string& name) {
    if (name == "satisfied") return Outcome::Satisfied;
    if (name == "violated") return Outcome::Violated;
    if (name == "indeterminate") return Outcome::Indeterminate;
    throw MalformedInput("unknown outcome: " + name);
}

const char* error_class_name(ErrorClass e) {
    switch (e) {
        case ErrorClass::BadTriplet: return "bad_triplet";
        case ErrorClass::BadRoutineGeneration: return "bad_routine_generation";
        case ErrorClass::BadRoutineExecution: return "bad_routine_execution";
        case ErrorClass::BackendFailure: return "backend_failure";
    }
    return "backend_failure";
}

ErrorClass error_class_from_name(const std::string& name) {
    if (name == "bad_triplet") return ErrorClass::BadTriplet;
    if (name == "bad_routine_generation") return ErrorClass::BadRoutineGeneration;
    if (name == "bad_routine_execution") return ErrorClass::BadRoutineExecution;
    if (name == "backend_failure") return ErrorClass::BackendFailure;
    throw MalformedInput("unknown error class: " + name);
}

}  // namespace vismc

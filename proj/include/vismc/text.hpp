#pragma once
// Shared text utilities: tokenization, lowercasing, singularization,
// numeral words, verb-form folding, and OCR match normalization.
// Every module goes through these so phrase equality is consistent.

#include <optional>
#include <string>
#include <vector>

namespace vismc::text {

std::string to_lower(std::string_view s);
std::string trim(std::string_view s);

// Whitespace split after punctuation stripping (quotes are kept by the
// query tokenizer, which handles them before calling this).
std::vector<std::string> words(std::string_view s);

std::string join(const std::vector<std::string>& parts, std::string_view sep = " ");

// Plural -> singular by suffix rules (ies/es/s) with an irregular table
// (people/person, men/man, ...). Words of length <= 3 pass through.
std::string singularize(std::string_view word);

// "two" -> 2, "3" -> 3; nullopt when the word is not a numeral.
std::optional<int> numeral_value(std::string_view word);

// Candidate base forms of an inflected verb ("riding" -> {riding, rid, ride}).
// Two predicates match when their candidate sets intersect; auxiliaries
// (is/are/was/were/being) are dropped before folding.
std::vector<std::string> fold_verb(std::string_view word);
bool verbs_match(std::string_view a, std::string_view b);
bool is_auxiliary(std::string_view word);

// Lowercase, punctuation to spaces, whitespace collapsed. Used by the
// OCR substring match and by detection-query comparison.
std::string normalize_for_match(std::string_view s);

}  // namespace vismc::text

#pragma once
// Canonical JSON forms. Field names here are the wire contract for the
// ingestion path and the result store; keep them stable.
//
//   Triplet        {"id":0,"s":{"head":"man"},"p":"riding","o":{"head":"horse"}}
//   Specification  {"query":"...","triplets":[...]}
//   Routine        {"triplet_id":0,"instructions":[{"op":"DETECT","query":"man","out":"r1"},...]}
//   Verdict        {"image":"...","triplet":0,"outcome":"satisfied","evidence":[...],"error":...}

#include <nlohmann/json.hpp>

#include "vismc/program.hpp"
#include "vismc/types.hpp"

namespace vismc {

using json = nlohmann::json;

json to_json(const NounPhrase& np);
json to_json(const Triplet& t);
json to_json(const Specification& spec);
json to_json(const Box& b);
json to_json(const Evidence& e);
json to_json(const Verdict& v);
json to_json(const TruthScore& s);
json to_json(const Rational& r);
json to_json(const Instruction& ins);
json to_json(const RoutineProgram& p);
json to_json(const RankedEntry& e);
json to_json(const RankedList& l);

// Parsers throw MalformedInput naming the JSON path of the offence.
NounPhrase noun_phrase_from_json(const json& j, const std::string& path);
Triplet triplet_from_json(const json& j, const std::string& path);
Specification specification_from_json(const json& j);
Box box_from_json(const json& j, const std::string& path);
Evidence evidence_from_json(const json& j, const std::string& path);
Verdict verdict_from_json(const json& j);
TruthScore truth_score_from_json(const json& j);
Rational rational_from_json(const json& j, const std::string& path);
Instruction instruction_from_json(const json& j, const std::string& path);
RoutineProgram routine_from_json(const json& j);
RankedList ranked_list_from_json(const json& j);

json parse_json(const std::string& bytes, const std::string& what);

}  // namespace vismc

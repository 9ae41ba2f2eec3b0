#pragma once
// Evaluation harness: Easy/Hard splits from baseline performance
// (top/bottom quartiles by the baseline's rank of the ground truth),
// Recall@K, and per-system comparison tables.

#include <map>
#include <string>
#include <vector>

#include "vismc/json_io.hpp"
#include "vismc/types.hpp"

namespace vismc::eval {

struct EvalError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct EvalCase {
    std::string query_id;
    std::string query;
    std::string ground_truth;
    std::vector<std::string> pool;
};

enum class Split { Easy, Hard, Middle };

struct SplitAssignment {
    std::map<std::string, Split> by_case;
    std::size_t easy_count = 0;
    std::size_t hard_count = 0;
};

// Position of the ground truth in a baseline ranking (0-based); cases
// whose ground truth is absent get default_rank (the pool size).
int rank_of(const std::vector<std::string>& ranking, const std::string& ground_truth,
            int default_rank);

// Sort by baseline rank ascending (ties by query_id); first floor(n/4)
// cases are Easy, last floor(n/4) Hard, the rest Middle. Throws
// EvalError for n < 4. Invariant to the input case order.
SplitAssignment build_splits(const std::vector<EvalCase>& cases,
                             const std::map<std::string, int>& baseline_rank);

// 1 iff the ground truth appears within the first k entries.
int recall_at_k(const RankedList& ranking, const std::string& ground_truth, int k);

struct EvalTable {
    std::vector<int> ks;
    // system -> split -> k -> mean recall
    std::map<std::string, std::map<std::string, std::map<int, double>>> mean_recall;
    std::map<std::string, std::size_t> split_sizes;
    std::string note;

    json to_json() const;
    std::string to_text() const;
};

// systems: name -> (query_id -> RankedList). Splits reported: Easy,
// Hard, Combined (= Easy u Hard), All. Throws EvalError when a system
// lacks a ranking for some case.
EvalTable evaluate(const std::vector<EvalCase>& cases,
                   const std::map<std::string, std::map<std::string, RankedList>>& systems,
                   const SplitAssignment& splits, std::vector<int> ks = {1, 3, 5, 10});

std::vector<EvalCase> cases_from_jsonl(const std::string& bytes);

}  // namespace vismc::eval

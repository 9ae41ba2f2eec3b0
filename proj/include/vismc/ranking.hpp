#pragma once
// Truth scores, verification ranking, and baseline re-ranking:
//   rerank_score_i = (K - i) * satisfied/total,  i = 0-based baseline rank.
// All arithmetic is exact rational.

#include <map>
#include <string>
#include <vector>

#include "vismc/types.hpp"

namespace vismc::rank {

enum class IndeterminatePolicy {
    CountInTotal,  // default: unverified counts against the score
    Exclude,       // drop indeterminate verdicts from the denominator
};

struct RankingError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

// Verdicts for one image; ids must cover 0..total_triplets-1 exactly
// once. Throws RankingError on a missing or duplicated triplet id.
TruthScore truth_score(const std::vector<Verdict>& verdicts, int total_triplets,
                       IndeterminatePolicy policy = IndeterminatePolicy::CountInTotal);

// Score plus the tie-break key (total Satisfied evidence items).
struct ScoredImage {
    TruthScore score;
    std::size_t evidence_items = 0;
};

std::size_t satisfied_evidence_items(const std::vector<Verdict>& verdicts);

// Descending by score; ties by more evidence, then lexicographic id.
// Output is independent of the input image order.
RankedList rank(const std::vector<std::string>& images,
                const std::map<std::string, ScoredImage>& scores);

struct BaselineRanking {
    std::string query_id;
    std::vector<std::string> entries;  // rank 0 = best

    int k() const { return static_cast<int>(entries.size()); }
};

struct RerankResult {
    RankedList list;
    std::vector<std::string> warnings;  // entries that had no score
};

// Images outside the baseline top-K are not re-ranked. Missing scores
// are treated as zero with a warning. Ties broken by baseline rank then
// image id.
RerankResult rerank(const BaselineRanking& base, const std::map<std::string, TruthScore>& scores);

}  // namespace vismc::rank

#include "vismc/ranking.hpp"

#include <algorithm>

namespace vismc::rank {

TruthScore truth_score(const std::vector<Verdict>& verdicts, int total_triplets,
                       IndeterminatePolicy policy) {
    if (total_triplets < 1) throw RankingError("specification has no triplets");
    std::vector<int> seen(static_cast<size_t>(total_triplets), 0);
    int satisfied = 0;
    int indeterminate = 0;
    for (const auto& v : verdicts) {
        if (v.triplet_id < 0 || v.triplet_id >= total_triplets)
            throw RankingError("verdict for unknown triplet " + std::to_string(v.triplet_id));
        if (++seen[static_cast<size_t>(v.triplet_id)] > 1)
            throw RankingError("duplicate verdict for triplet " + std::to_string(v.triplet_id));
        if (v.outcome == Outcome::Satisfied) ++satisfied;
        if (v.outcome == Outcome::Indeterminate) ++indeterminate;
    }
    for (int id = 0; id < total_triplets; ++id) {
        if (!seen[static_cast<size_t>(id)])
            throw RankingError("missing verdict for triplet " + std::to_string(id));
    }

    TruthScore score;
    score.satisfied = satisfied;
    if (policy == IndeterminatePolicy::CountInTotal) {
        score.total = total_triplets;
    } else {
        int usable = total_triplets - indeterminate;
        if (usable == 0) {
            score.total = total_triplets;
            score.all_indeterminate = true;
        } else {
            score.total = usable;
        }
    }
    return score;
}

std::size_t satisfied_evidence_items(const std::vector<Verdict>& verdicts) {
    std::size_t n = 0;
    for (const auto& v : verdicts)
        if (v.outcome == Outcome::Satisfied) n += v.evidence.size();
    return n;
}

RankedList rank(const std::vector<std::string>& images,
                const std::map<std::string, ScoredImage>& scores) {
    std::vector<RankedEntry> entries;
    std::vector<std::size_t> evidence;
    entries.reserve(images.size());
    for (const auto& id : images) {
        auto it = scores.find(id);
        if (it == scores.end()) throw RankingError("missing score for image " + id);
        RankedEntry e;
        e.image_id = id;
        e.truth_score = it->second.score;
        entries.push_back(std::move(e));
        evidence.push_back(it->second.evidence_items);
    }
    std::vector<size_t> order(entries.size());
    for (size_t i = 0; i < order.size(); ++i) order[i] = i;
    std::sort(order.begin(), order.end(), [&](size_t a, size_t b) {
        Rational va = entries[a].truth_score.value();
        Rational vb = entries[b].truth_score.value();
        if (va != vb) return vb < va;
        if (evidence[a] != evidence[b]) return evidence[a] > evidence[b];
        return entries[a].image_id < entries[b].image_id;
    });
    RankedList out;
    out.entries.reserve(entries.size());
    for (size_t i : order) out.entries.push_back(std::move(entries[i]));
    return out;
}

RerankResult rerank(const BaselineRanking& base, const std::map<std::string, TruthScore>& scores) {
    if (base.entries.empty()) throw RankingError("empty baseline ranking");
    const int K = base.k();
    RerankResult result;
    std::vector<RankedEntry> entries;
    entries.reserve(base.entries.size());
    for (int i = 0; i < K; ++i) {
        const std::string& id = base.entries[static_cast<size_t>(i)];
        RankedEntry e;
        e.image_id = id;
        e.baseline_rank = i;
        auto it = scores.find(id);
        if (it == scores.end()) {
            e.truth_score = TruthScore{0, 1, false};
            result.warnings.push_back("no truth score for baseline entry " + id +
                                      " (treated as 0)");
        } else {
            e.truth_score = it->second;
        }
        e.rerank_score = e.truth_score.value() * (K - i);
        entries.push_back(std::move(e));
    }
    std::sort(entries.begin(), entries.end(), [](const RankedEntry& a, const RankedEntry& b) {
        if (*a.rerank_score != *b.rerank_score) return *b.rerank_score < *a.rerank_score;
        if (*a.baseline_rank != *b.baseline_rank) return *a.baseline_rank < *b.baseline_rank;
        return a.image_id < b.image_id;
    });
    result.list.entries = std::move(entries);
    return result;
}

}  // namespace vismc::rank

#include "vismc/eval.hpp"

#include <algorithm>
#include <cstdio>
#include <sstream>

namespace vismc::eval {

int rank_of(const std::vector<std::string>& ranking, const std::string& ground_truth,
            int default_rank) {
    for (size_t i = 0; i < ranking.size(); ++i)
        if (ranking[i] == ground_truth) return static_cast<int>(i);
    return default_rank;
}

SplitAssignment build_splits(const std::vector<EvalCase>& cases,
                             const std::map<std::string, int>& baseline_rank) {
    const size_t n = cases.size();
    if (n < 4) throw EvalError("insufficient cases for quartile splits: " + std::to_string(n));

    std::vector<std::pair<int, std::string>> order;  // (rank, query_id)
    order.reserve(n);
    for (const auto& c : cases) {
        auto it = baseline_rank.find(c.query_id);
        if (it == baseline_rank.end())
            throw EvalError("no baseline rank for case " + c.query_id);
        order.emplace_back(it->second, c.query_id);
    }
    std::sort(order.begin(), order.end());

    const size_t quarter = n / 4;
    SplitAssignment out;
    out.easy_count = quarter;
    out.hard_count = quarter;
    for (size_t i = 0; i < n; ++i) {
        Split s = Split::Middle;
        if (i < quarter) s = Split::Easy;
        else if (i >= n - quarter) s = Split::Hard;
        out.by_case[order[i].second] = s;
    }
    return out;
}

int recall_at_k(const RankedList& ranking, const std::string& ground_truth, int k) {
    if (k < 1) throw EvalError("recall@k requires k >= 1");
    const size_t limit = std::min(ranking.entries.size(), static_cast<size_t>(k));
    for (size_t i = 0; i < limit; ++i)
        if (ranking.entries[i].image_id == ground_truth) return 1;
    return 0;
}

namespace {

const char* kSplits[] = {"easy", "hard", "combined", "all"};

bool in_split(Split s, const std::string& name) {
    if (name == "all") return true;
    if (name == "combined") return s == Split::Easy || s == Split::Hard;
    if (name == "easy") return s == Split::Easy;
    if (name == "hard") return s == Split::Hard;
    return false;
}

}  // namespace

EvalTable evaluate(const std::vector<EvalCase>& cases,
                   const std::map<std::string, std::map<std::string, RankedList>>& systems,
                   const SplitAssignment& splits, std::vector<int> ks) {
    EvalTable table;
    table.ks = std::move(ks);
    table.note =
        "combined = easy union hard (joint evaluation of the two quartile splits); "
        "all covers every case";

    for (const char* split : kSplits) {
        size_t count = 0;
        for (const auto& c : cases) {
            auto it = splits.by_case.find(c.query_id);
            Split s = it == splits.by_case.end() ? Split::Middle : it->second;
            if (in_split(s, split)) ++count;
        }
        table.split_sizes[split] = count;
    }

    for (const auto& [system, rankings] : systems) {
        for (const char* split : kSplits) {
            std::map<int, double> sums;
            size_t count = 0;
            for (const auto& c : cases) {
                auto sit = splits.by_case.find(c.query_id);
                Split s = sit == splits.by_case.end() ? Split::Middle : sit->second;
                if (!in_split(s, split)) continue;
                auto rit = rankings.find(c.query_id);
                if (rit == rankings.end())
                    throw EvalError("system " + system + " has no ranking for case " + c.query_id);
                ++count;
                for (int k : table.ks) sums[k] += recall_at_k(rit->second, c.ground_truth, k);
            }
            for (int k : table.ks)
                table.mean_recall[system][split][k] = count == 0 ? 0.0 : sums[k] / double(count);
        }
    }
    return table;
}

json EvalTable::to_json() const {
    json j = json{{"note", note}};
    json sizes = json::object();
    for (const auto& [split, n] : split_sizes) sizes[split] = n;
    j["split_sizes"] = sizes;
    json systems = json::object();
    for (const auto& [system, by_split] : mean_recall) {
        json js = json::object();
        for (const auto& [split, by_k] : by_split) {
            json jk = json::object();
            for (const auto& [k, v] : by_k) jk["rec@" + std::to_string(k)] = v;
            js[split] = jk;
        }
        systems[system] = js;
    }
    j["systems"] = systems;
    return j;
}

std::string EvalTable::to_text() const {
    std::ostringstream out;
    size_t name_width = 6;
    for (const auto& [system, _] : mean_recall) name_width = std::max(name_width, system.size());

    out << std::string(name_width, ' ') << "  split     n  ";
    for (int k : ks) {
        char head[16];
        std::snprintf(head, sizeof head, "%7s", ("rec@" + std::to_string(k)).c_str());
        out << head;
    }
    out << "\n";
    for (const auto& [system, by_split] : mean_recall) {
        for (const char* split : kSplits) {
            auto it = by_split.find(split);
            if (it == by_split.end()) continue;
            char line[64];
            std::snprintf(line, sizeof line, "%-*s  %-8s %3zu  ", static_cast<int>(name_width),
                          system.c_str(), split, split_sizes.at(split));
            out << line;
            for (int k : ks) {
                char cell[16];
                std::snprintf(cell, sizeof cell, "%7.3f", it->second.at(k));
                out << cell;
            }
            out << "\n";
        }
    }
    out << "note: " << note << "\n";
    return out.str();
}

std::vector<EvalCase> cases_from_jsonl(const std::string& bytes) {
    std::vector<EvalCase> cases;
    std::istringstream in(bytes);
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded())
            throw MalformedInput("cases line " + std::to_string(lineno) + ": not valid JSON");
        EvalCase c;
        try {
            c.query_id = j.at("query_id").get<std::string>();
            c.query = j.at("query").get<std::string>();
            c.ground_truth = j.at("ground_truth").get<std::string>();
            c.pool = j.at("pool").get<std::vector<std::string>>();
        } catch (const json::exception& e) {
            throw MalformedInput("cases line " + std::to_string(lineno) + ": " + e.what());
        }
        if (c.pool.size() < 2)
            throw MalformedInput("cases line " + std::to_string(lineno) + ": pool size < 2");
        if (std::find(c.pool.begin(), c.pool.end(), c.ground_truth) == c.pool.end())
            throw MalformedInput("cases line " + std::to_string(lineno) +
                                 ": ground truth not in pool");
        cases.push_back(std::move(c));
    }
    return cases;
}

}  // namespace vismc::eval

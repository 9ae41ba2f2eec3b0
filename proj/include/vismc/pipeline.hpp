#pragma once
// Producer-consumer orchestration of the three stages over bounded work
// queues: parse and synthesis on the light pool, perception-heavy
// execution on the heavy pool. Routines are synthesized once per
// triplet and reused across every image. All stage functions are pure,
// so the final store contents are identical for any pool sizes and any
// interleaving.

#include <functional>
#include <string>
#include <vector>

#include "vismc/backend.hpp"
#include "vismc/geometry.hpp"
#include "vismc/lexicon.hpp"
#include "vismc/store.hpp"

namespace vismc::pipeline {

struct QueryJob {
    std::string query_id;
    std::string text;
};

struct PipelineConfig {
    VmConfig vm;
    synth::PredicateLexicon lexicon = synth::PredicateLexicon::builtin();
    bool fallback_composite = false;
    int light_pool = 2;
    int heavy_pool = 4;
    int max_retries = 2;
    // Testing hook: stop dispatching once the store has written this
    // many records, leaving a resumable partial store. -1 disables.
    long interrupt_after_writes = -1;
    std::function<void(const std::string&)> progress;
};

struct Task {
    enum class Kind { Parse, Synthesize, Execute };
    Kind kind = Kind::Parse;
    std::string query_id;
    int triplet_id = -1;
    std::string image_id;
    int attempts = 0;
};

struct Plan {
    std::vector<QueryJob> queries;
    std::vector<std::string> corpus;
    json inputs;        // hashed into the store metadata
    std::string hash;
    std::vector<Task> roots;  // one Parse per query; the rest materializes lazily
};

struct RunReport {
    std::size_t parse_done = 0, parse_failed = 0, parse_skipped = 0;
    std::size_t synth_done = 0, synth_degenerate = 0, synth_skipped = 0;
    std::size_t exec_done = 0, exec_failed = 0, exec_skipped = 0;
    std::size_t retries = 0;
    bool completed = false;
    double wall_ms = 0;
};

// Throws std::invalid_argument on empty queries or corpus.
Plan plan(const std::vector<QueryJob>& queries, const std::vector<std::string>& corpus_ids,
          const PipelineConfig& cfg, const std::string& backend_name);

// Blocking; opens the store under the plan hash (PlanMismatch if it was
// created for different inputs), fills every gap, finalizes on
// completion. Running against a partial store is the resume path;
// running against a complete store is a no-op.
RunReport run(const Plan& p, PerceptionBackend& backend, ResultStore& store,
              const PipelineConfig& cfg);

}  // namespace vismc::pipeline

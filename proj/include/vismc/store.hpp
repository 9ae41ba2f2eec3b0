#pragma once
// Persistent result store: a write-ahead JSONL log during the run,
// compacted on finalize into canonical key-sorted segments plus a
// manifest carrying the plan hash and each segment's content hash.
// Upserts are idempotent, so retried tasks never duplicate results and
// the final bytes are independent of worker interleaving.

#include <atomic>
#include <filesystem>
#include <map>
#include <mutex>
#include <optional>
#include <string>

#include "vismc/json_io.hpp"

namespace vismc::pipeline {

struct StoreError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct PlanMismatch : std::runtime_error {
    using std::runtime_error::runtime_error;
};

std::string fnv1a_hex(const std::string& data);

class ResultStore {
public:
    explicit ResultStore(std::string dir);

    // Creates the directory (or loads an existing WAL). An existing
    // store opened under a different plan hash raises PlanMismatch.
    void open(const std::string& plan_hash);

    // true when the key was new; false means the result already existed
    bool put_spec(const std::string& query_id, const json& record);
    bool put_routine(const std::string& query_id, int triplet_id, const json& record);
    bool put_verdict(const std::string& query_id, int triplet_id, const std::string& image_id,
                     const json& record);

    std::optional<json> get_spec(const std::string& query_id) const;
    std::optional<json> get_routine(const std::string& query_id, int triplet_id) const;
    std::optional<json> get_verdict(const std::string& query_id, int triplet_id,
                                    const std::string& image_id) const;

    // All verdict records for one query, key-sorted.
    std::vector<json> verdicts_for(const std::string& query_id) const;
    std::vector<json> all_specs() const;

    std::size_t writes() const { return writes_; }
    bool finalized() const;

    // Compacts the WAL into sorted segments and writes the manifest
    // atomically. Safe to call on a complete store again.
    void finalize();

    std::string manifest_path() const { return (dir_ / "manifest.json").string(); }
    std::string dir() const { return dir_.string(); }

    static std::string plan_hash(const json& plan_inputs);

private:
    void append_wal(const std::string& table, const std::string& key, const json& record);
    bool put(const std::string& table, const std::string& key, const json& record);
    std::optional<json> get(const std::string& table, const std::string& key) const;

    std::filesystem::path dir_;
    std::string plan_hash_;
    mutable std::mutex mutex_;
    // table -> key -> canonical record text
    std::map<std::string, std::map<std::string, std::string>> tables_;
    std::atomic<std::size_t> writes_{0};
};

}  // namespace vismc::pipeline

#pragma once
// Write-through replay cache over any perception backend. Entries are
// keyed by (image, task, query, region, threshold) and persisted as
// checksummed JSONL, so recorded runs replay byte-identically without
// the inner backend.

#include <atomic>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>

#include "vismc/backend.hpp"

namespace vismc::backend {

struct StoreCorrupt : std::runtime_error {
    using std::runtime_error::runtime_error;
};

enum class CacheMode {
    Record,  // miss -> inner backend, result appended to the store
    Replay,  // miss -> BackendFailure; serves only recorded entries
};

class CacheBackend : public PerceptionBackend {
public:
    // inner may be null in replay mode. threshold annotates the
    // calibration under which entries were recorded.
    CacheBackend(std::shared_ptr<PerceptionBackend> inner, std::string store_path, CacheMode mode,
                 double threshold = 0.0);

    std::vector<Box> detect(const std::string& image_id, const std::string& query) override;
    std::vector<std::string> read_text(const std::string& image_id, const Box& region) override;
    bool has_ocr() const override;
    std::string name() const override;

    std::size_t entries() const;
    std::size_t hits() const { return hits_; }
    std::size_t misses() const { return misses_; }

private:
    void load();
    void append(const std::string& key, const std::string& value);

    std::shared_ptr<PerceptionBackend> inner_;
    std::string path_;
    CacheMode mode_;
    double threshold_;
    mutable std::shared_mutex mutex_;
    std::map<std::string, std::string> store_;  // key json -> value json
    std::atomic<std::size_t> hits_{0};
    std::atomic<std::size_t> misses_{0};
};

std::shared_ptr<PerceptionBackend> cache_wrap(std::shared_ptr<PerceptionBackend> inner,
                                              const std::string& store_path,
                                              CacheMode mode = CacheMode::Record,
                                              double threshold = 0.0);

}  // namespace vismc::backend

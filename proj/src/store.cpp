#include "vismc/store.hpp"

#include <fstream>

namespace vismc::pipeline {

namespace fs = std::filesystem;

std::string fnv1a_hex(const std::string& data) {
    std::uint64_t h = 1469598103934665603ull;
    for (unsigned char c : data) {
        h ^= c;
        h *= 1099511628211ull;
    }
    char buf[17];
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
    return buf;
}

namespace {

std::string routine_key(const std::string& query_id, int triplet_id) {
    return query_id + "\x1f" + std::to_string(triplet_id);
}

std::string verdict_key(const std::string& query_id, int triplet_id, const std::string& image_id) {
    return query_id + "\x1f" + std::to_string(triplet_id) + "\x1f" + image_id;
}

const char* kTables[] = {"specs", "routines", "verdicts"};

}  // namespace

ResultStore::ResultStore(std::string dir) : dir_(std::move(dir)) {
    for (const char* t : kTables) tables_[t];
}

void ResultStore::open(const std::string& plan_hash) {
    plan_hash_ = plan_hash;
    std::error_code ec;
    fs::create_directories(dir_, ec);
    if (ec) throw StoreError("cannot create store directory " + dir_.string());

    const fs::path meta = dir_ / "meta.json";
    if (fs::exists(meta)) {
        std::ifstream in(meta);
        std::string bytes((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
        json j = json::parse(bytes, nullptr, false);
        if (j.is_discarded() || !j.contains("plan_hash"))
            throw StoreError(meta.string() + ": unreadable store metadata");
        std::string existing = j.at("plan_hash").get<std::string>();
        if (existing != plan_hash)
            throw PlanMismatch("store was created for plan " + existing + ", not " + plan_hash);
    } else {
        std::ofstream out(meta);
        out << json{{"plan_hash", plan_hash}}.dump() << "\n";
        if (!out) throw StoreError("cannot write " + meta.string());
    }

    const fs::path wal = dir_ / "wal.jsonl";
    if (fs::exists(wal)) {
        std::ifstream in(wal);
        std::string line;
        while (std::getline(in, line)) {
            if (line.empty()) continue;
            json j = json::parse(line, nullptr, false);
            if (j.is_discarded()) continue;  // torn tail from an interrupt; recomputed on resume
            if (!j.contains("table") || !j.contains("key") || !j.contains("record")) continue;
            tables_[j.at("table").get<std::string>()][j.at("key").get<std::string>()] =
                j.at("record").dump();
        }
    }
}

void ResultStore::append_wal(const std::string& table, const std::string& key, const json& record) {
    std::ofstream out(dir_ / "wal.jsonl", std::ios::app);
    if (!out) throw StoreError("cannot append to WAL in " + dir_.string());
    out << json{{"table", table}, {"key", key}, {"record", record}}.dump() << "\n";
    out.flush();
    if (!out) throw StoreError("WAL write failed in " + dir_.string());
}

bool ResultStore::put(const std::string& table, const std::string& key, const json& record) {
    std::lock_guard lock(mutex_);
    auto& t = tables_.at(table);
    if (t.count(key)) return false;  // idempotent upsert
    t[key] = record.dump();
    append_wal(table, key, record);
    ++writes_;
    return true;
}

std::optional<json> ResultStore::get(const std::string& table, const std::string& key) const {
    std::lock_guard lock(mutex_);
    const auto& t = tables_.at(table);
    auto it = t.find(key);
    if (it == t.end()) return std::nullopt;
    return json::parse(it->second);
}

bool ResultStore::put_spec(const std::string& query_id, const json& record) {
    return put("specs", query_id, record);
}

bool ResultStore::put_routine(const std::string& query_id, int triplet_id, const json& record) {
    return put("routines", routine_key(query_id, triplet_id), record);
}

bool ResultStore::put_verdict(const std::string& query_id, int triplet_id,
                              const std::string& image_id, const json& record) {
    return put("verdicts", verdict_key(query_id, triplet_id, image_id), record);
}

std::optional<json> ResultStore::get_spec(const std::string& query_id) const {
    return get("specs", query_id);
}

std::optional<json> ResultStore::get_routine(const std::string& query_id, int triplet_id) const {
    return get("routines", routine_key(query_id, triplet_id));
}

std::optional<json> ResultStore::get_verdict(const std::string& query_id, int triplet_id,
                                             const std::string& image_id) const {
    return get("verdicts", verdict_key(query_id, triplet_id, image_id));
}

std::vector<json> ResultStore::verdicts_for(const std::string& query_id) const {
    std::lock_guard lock(mutex_);
    std::vector<json> out;
    const std::string prefix = query_id + "\x1f";
    for (const auto& [key, record] : tables_.at("verdicts")) {
        if (key.size() > prefix.size() && key.compare(0, prefix.size(), prefix) == 0)
            out.push_back(json::parse(record));
    }
    return out;
}

std::vector<json> ResultStore::all_specs() const {
    std::lock_guard lock(mutex_);
    std::vector<json> out;
    for (const auto& [key, record] : tables_.at("specs")) out.push_back(json::parse(record));
    return out;
}

bool ResultStore::finalized() const { return fs::exists(dir_ / "manifest.json"); }

void ResultStore::finalize() {
    std::lock_guard lock(mutex_);
    json segments = json::object();
    for (const char* table : kTables) {
        std::string content;
        for (const auto& [key, record] : tables_.at(table)) {
            content += record;
            content += "\n";
        }
        const std::string filename = std::string(table) + ".jsonl";
        const fs::path target = dir_ / filename;
        const fs::path tmp = dir_ / (filename + ".tmp");
        {
            std::ofstream out(tmp, std::ios::trunc);
            out << content;
            if (!out) throw StoreError("cannot write segment " + target.string());
        }
        fs::rename(tmp, target);
        segments[filename] = fnv1a_hex(content);
    }
    json manifest = json{{"plan_hash", plan_hash_}, {"segments", segments}};
    const fs::path tmp = dir_ / "manifest.json.tmp";
    {
        std::ofstream out(tmp, std::ios::trunc);
        out << manifest.dump(2) << "\n";
        if (!out) throw StoreError("cannot write manifest");
    }
    fs::rename(tmp, dir_ / "manifest.json");
}

std::string ResultStore::plan_hash(const json& plan_inputs) {
    return fnv1a_hex(plan_inputs.dump());
}

}  // namespace vismc::pipeline

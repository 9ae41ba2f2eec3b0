#include "vismc/cache.hpp"

#include <filesystem>
#include <fstream>
#include <mutex>
#include <sstream>

#include "vismc/json_io.hpp"

namespace vismc::backend {

namespace {

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

std::string detect_key(const std::string& image_id, const std::string& query, double threshold) {
    return json{{"image", image_id}, {"task", "detect"}, {"query", query}, {"threshold", threshold}}
        .dump();
}

std::string ocr_key(const std::string& image_id, const Box& region, double threshold) {
    return json{{"image", image_id},
                {"task", "ocr"},
                {"region", json{{"x0", region.x0}, {"y0", region.y0}, {"x1", region.x1}, {"y1", region.y1}}},
                {"threshold", threshold}}
        .dump();
}

std::string boxes_value(const std::vector<Box>& boxes) {
    json list = json::array();
    for (const auto& b : boxes) list.push_back(to_json(b));
    return list.dump();
}

std::string texts_value(const std::vector<std::string>& texts) {
    return json(texts).dump();
}

}  // namespace

CacheBackend::CacheBackend(std::shared_ptr<PerceptionBackend> inner, std::string store_path,
                           CacheMode mode, double threshold)
    : inner_(std::move(inner)), path_(std::move(store_path)), mode_(mode), threshold_(threshold) {
    if (mode_ == CacheMode::Record && !inner_)
        throw std::invalid_argument("record mode requires an inner backend");
    load();
}

void CacheBackend::load() {
    std::ifstream in(path_);
    if (!in) return;  // fresh store
    std::string line;
    size_t lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        json j = json::parse(line, nullptr, false);
        if (j.is_discarded() || !j.is_object() || !j.contains("key") || !j.contains("value") ||
            !j.contains("crc"))
            throw StoreCorrupt(path_ + ":" + std::to_string(lineno) + ": unreadable cache line");
        std::string key = j.at("key").dump();
        std::string value = j.at("value").dump();
        if (fnv1a_hex(key + value) != j.at("crc").get<std::string>())
            throw StoreCorrupt(path_ + ":" + std::to_string(lineno) + ": checksum mismatch");
        store_[key] = value;
    }
    if (in.bad()) throw StoreCorrupt(path_ + ": read error");
}

void CacheBackend::append(const std::string& key, const std::string& value) {
    json line = json{{"key", json::parse(key)}, {"value", json::parse(value)},
                     {"crc", fnv1a_hex(key + value)}};
    std::ofstream out(path_, std::ios::app);
    if (!out) throw StoreCorrupt(path_ + ": cannot open for append");
    out << line.dump() << "\n";
    out.flush();
}

std::vector<Box> CacheBackend::detect(const std::string& image_id, const std::string& query) {
    const std::string key = detect_key(image_id, query, threshold_);
    {
        std::shared_lock lock(mutex_);
        if (auto it = store_.find(key); it != store_.end()) {
            ++hits_;
            json list = json::parse(it->second);
            std::vector<Box> boxes;
            for (size_t i = 0; i < list.size(); ++i)
                boxes.push_back(box_from_json(list[i], "cache value"));
            return boxes;
        }
    }
    ++misses_;
    if (mode_ == CacheMode::Replay)
        throw BackendError(BackendErrorCode::ModelFailure, "replay miss: " + key);
    std::vector<Box> boxes = inner_->detect(image_id, query);
    {
        std::unique_lock lock(mutex_);
        if (!store_.count(key)) {
            store_[key] = boxes_value(boxes);
            append(key, store_[key]);
        }
    }
    return boxes;
}

std::vector<std::string> CacheBackend::read_text(const std::string& image_id, const Box& region) {
    const std::string key = ocr_key(image_id, region, threshold_);
    {
        std::shared_lock lock(mutex_);
        if (auto it = store_.find(key); it != store_.end()) {
            ++hits_;
            return json::parse(it->second).get<std::vector<std::string>>();
        }
    }
    ++misses_;
    if (mode_ == CacheMode::Replay)
        throw BackendError(BackendErrorCode::ModelFailure, "replay miss: " + key);
    std::vector<std::string> texts = inner_->read_text(image_id, region);
    {
        std::unique_lock lock(mutex_);
        if (!store_.count(key)) {
            store_[key] = texts_value(texts);
            append(key, store_[key]);
        }
    }
    return texts;
}

bool CacheBackend::has_ocr() const { return inner_ ? inner_->has_ocr() : true; }

std::string CacheBackend::name() const {
    return std::string("cache(") + (inner_ ? inner_->name() : "replay") + ")";
}

std::size_t CacheBackend::entries() const {
    std::shared_lock lock(mutex_);
    return store_.size();
}

std::shared_ptr<PerceptionBackend> cache_wrap(std::shared_ptr<PerceptionBackend> inner,
                                              const std::string& store_path, CacheMode mode,
                                              double threshold) {
    return std::make_shared<CacheBackend>(std::move(inner), store_path, mode, threshold);
}

}  // namespace vismc::backend

#pragma once
// Deterministic scene-graph oracle: the testing backend. Read-only and
// freely concurrent.

#include <memory>

#include "vismc/backend.hpp"
#include "vismc/scene.hpp"

namespace vismc::backend {

class OracleBackend : public PerceptionBackend {
public:
    explicit OracleBackend(std::shared_ptr<const SceneCorpus> corpus, bool ocr = true)
        : corpus_(std::move(corpus)), ocr_(ocr) {}

    std::vector<Box> detect(const std::string& image_id, const std::string& query) override {
        return oracle_detect(scene(image_id), query);
    }

    std::vector<std::string> read_text(const std::string& image_id, const Box& region) override {
        return oracle_read_text(scene(image_id), region);
    }

    bool has_ocr() const override { return ocr_; }
    std::string name() const override { return "oracle"; }

private:
    const SceneDocument& scene(const std::string& image_id) const {
        auto it = corpus_->find(image_id);
        if (it == corpus_->end())
            throw BackendError(BackendErrorCode::UnknownImage, "unknown image: " + image_id);
        return it->second;
    }

    std::shared_ptr<const SceneCorpus> corpus_;
    bool ocr_;
};

}  // namespace vismc::backend

#include <mutex>

#include "vismc/backend.hpp"

namespace vismc {

namespace {

class SerializingBackend : public PerceptionBackend {
public:
    explicit SerializingBackend(std::shared_ptr<PerceptionBackend> inner)
        : inner_(std::move(inner)) {}

    std::vector<Box> detect(const std::string& image_id, const std::string& query) override {
        std::lock_guard lock(mutex_);
        return inner_->detect(image_id, query);
    }

    std::vector<std::string> read_text(const std::string& image_id, const Box& region) override {
        std::lock_guard lock(mutex_);
        return inner_->read_text(image_id, region);
    }

    bool has_ocr() const override { return inner_->has_ocr(); }
    std::string name() const override { return inner_->name(); }

private:
    std::shared_ptr<PerceptionBackend> inner_;
    std::mutex mutex_;
};

}  // namespace

std::shared_ptr<PerceptionBackend> serialize_backend(std::shared_ptr<PerceptionBackend> inner) {
    return std::make_shared<SerializingBackend>(std::move(inner));
}

}  // namespace vismc

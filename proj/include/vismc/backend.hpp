#pragma once
// Pluggable perception boundary. Implementations must be deterministic
// for the same image and query, return detections sorted by score
// descending, and be safe for concurrent calls (or wrapped in the
// serializing adapter).

#include <memory>
#include <string>
#include <vector>

#include "vismc/types.hpp"

namespace vismc {

// Mirrors the wire protocol error codes.
enum class BackendErrorCode { UnknownImage = 1, BadRequest = 2, ModelFailure = 3, Transport = 4 };

struct BackendError : std::runtime_error {
    BackendError(BackendErrorCode c, const std::string& msg)
        : std::runtime_error(msg), code(c) {}
    BackendErrorCode code;
};

class PerceptionBackend {
public:
    virtual ~PerceptionBackend() = default;

    virtual std::vector<Box> detect(const std::string& image_id, const std::string& query) = 0;
    virtual std::vector<std::string> read_text(const std::string& image_id, const Box& region) = 0;
    virtual bool has_ocr() const = 0;
    virtual std::string name() const = 0;
};

// Serializing adapter for backends that are not concurrency-safe.
std::shared_ptr<PerceptionBackend> serialize_backend(std::shared_ptr<PerceptionBackend> inner);

}  // namespace vismc

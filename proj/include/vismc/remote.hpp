#pragma once
// Remote detector client. Retries idempotently on transport failure
// with exponential backoff under a total deadline; protocol and remote
// errors are not retried. In-flight requests per endpoint are bounded.

#include <memory>

#include "vismc/backend.hpp"
#include "vismc/wire.hpp"

namespace vismc::backend {

struct TransportError : BackendError {
    explicit TransportError(const std::string& msg)
        : BackendError(BackendErrorCode::Transport, msg) {}
};

struct ProtocolError : BackendError {
    explicit ProtocolError(const std::string& msg)
        : BackendError(BackendErrorCode::BadRequest, msg) {}
};

struct RemoteError : BackendError {
    RemoteError(int remote, const std::string& msg)
        : BackendError(remote == 1 ? BackendErrorCode::UnknownImage
                                   : remote == 2 ? BackendErrorCode::BadRequest
                                                 : BackendErrorCode::ModelFailure,
                       msg),
          remote_code(remote) {}
    int remote_code;
};

struct RemoteConfig {
    int retries = 2;           // attempts = retries + 1
    int timeout_ms = 5000;     // total deadline across attempts
    int backoff_base_ms = 50;  // doubles per retry
    int max_inflight = 8;
    bool ocr = true;           // advertised capability of the endpoint
};

// One request/response exchange against http://host:port. Throws
// TransportError (connect/read failure, 5xx, deadline), ProtocolError
// (malformed response JSON), RemoteError (error payload).
DetectorWireResponse remote_detect(const std::string& endpoint, const DetectorWireRequest& req,
                                   const RemoteConfig& cfg);

class RemoteBackend : public PerceptionBackend {
public:
    RemoteBackend(std::string endpoint, RemoteConfig cfg = {}, double threshold = 0.0);
    ~RemoteBackend() override;

    std::vector<Box> detect(const std::string& image_id, const std::string& query) override;
    std::vector<std::vector<Box>> detect_batch(const std::string& image_id,
                                               const std::vector<std::string>& queries);
    std::vector<std::string> read_text(const std::string& image_id, const Box& region) override;
    bool has_ocr() const override;
    std::string name() const override { return "remote:" + endpoint_; }

private:
    struct Inflight;
    std::string endpoint_;
    RemoteConfig cfg_;
    double threshold_;
    std::unique_ptr<Inflight> inflight_;
};

}  // namespace vismc::backend

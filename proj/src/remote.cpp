#include "vismc/remote.hpp"

#include <chrono>
#include <condition_variable>
#include <mutex>
#include <thread>

#include <httplib.h>

namespace vismc::backend {

namespace {

using Clock = std::chrono::steady_clock;

}  // namespace

DetectorWireResponse remote_detect(const std::string& endpoint, const DetectorWireRequest& req,
                                   const RemoteConfig& cfg) {
    const std::string body = to_json(req).dump();
    const auto deadline = Clock::now() + std::chrono::milliseconds(cfg.timeout_ms);
    std::string last_failure = "no attempt made";

    for (int attempt = 0; attempt <= cfg.retries; ++attempt) {
        if (attempt > 0) {
            auto backoff = std::chrono::milliseconds(cfg.backoff_base_ms << (attempt - 1));
            if (Clock::now() + backoff >= deadline)
                throw TransportError("deadline exceeded after " + std::to_string(attempt) +
                                     " attempts: " + last_failure);
            std::this_thread::sleep_for(backoff);
        }
        auto remaining =
            std::chrono::duration_cast<std::chrono::milliseconds>(deadline - Clock::now());
        if (remaining.count() <= 0)
            throw TransportError("deadline exceeded: " + last_failure);

        httplib::Client client(endpoint);
        client.set_connection_timeout(std::chrono::milliseconds(remaining));
        client.set_read_timeout(std::chrono::milliseconds(remaining));
        client.set_write_timeout(std::chrono::milliseconds(remaining));

        httplib::Result res = client.Post(kPerceiveRoute, body, "application/json");
        if (!res) {
            last_failure = "transport: " + httplib::to_string(res.error());
            continue;  // retryable
        }
        if (res->status >= 500) {
            last_failure = "server status " + std::to_string(res->status);
            continue;  // retryable
        }
        if (res->status != 200)
            throw ProtocolError("unexpected status " + std::to_string(res->status));

        json j = json::parse(res->body, nullptr, false);
        if (j.is_discarded()) throw ProtocolError("response is not valid JSON");
        DetectorWireResponse resp;
        try {
            resp = wire_response_from_json(j);
        } catch (const MalformedInput& e) {
            throw ProtocolError(e.what());
        }
        if (resp.error) throw RemoteError(resp.error->code, resp.error->message);
        return resp;
    }
    throw TransportError("retries exhausted: " + last_failure);
}

// bounded in-flight requests per endpoint
struct RemoteBackend::Inflight {
    explicit Inflight(int limit) : available(limit) {}

    void acquire() {
        std::unique_lock lock(mutex);
        cv.wait(lock, [this] { return available > 0; });
        --available;
    }
    void release() {
        {
            std::lock_guard lock(mutex);
            ++available;
        }
        cv.notify_one();
    }

    std::mutex mutex;
    std::condition_variable cv;
    int available;
};

RemoteBackend::RemoteBackend(std::string endpoint, RemoteConfig cfg, double threshold)
    : endpoint_(std::move(endpoint)),
      cfg_(cfg),
      threshold_(threshold),
      inflight_(std::make_unique<Inflight>(cfg.max_inflight)) {}

RemoteBackend::~RemoteBackend() = default;

std::vector<Box> RemoteBackend::detect(const std::string& image_id, const std::string& query) {
    auto lists = detect_batch(image_id, {query});
    return lists.empty() ? std::vector<Box>{} : std::move(lists.front());
}

std::vector<std::vector<Box>> RemoteBackend::detect_batch(const std::string& image_id,
                                                          const std::vector<std::string>& queries) {
    DetectorWireRequest req;
    req.image_id = image_id;
    req.queries = queries;
    req.task = "detect";
    req.threshold = threshold_;
    inflight_->acquire();
    struct Release {
        Inflight* s;
        ~Release() { s->release(); }
    } release{inflight_.get()};
    DetectorWireResponse resp = remote_detect(endpoint_, req, cfg_);
    if (resp.results.size() != queries.size())
        throw ProtocolError("response has " + std::to_string(resp.results.size()) +
                            " result lists for " + std::to_string(queries.size()) + " queries");
    return std::move(resp.results);
}

std::vector<std::string> RemoteBackend::read_text(const std::string& image_id, const Box& region) {
    DetectorWireRequest req;
    req.image_id = image_id;
    req.task = "ocr";
    req.region = region;
    req.threshold = threshold_;
    inflight_->acquire();
    struct Release {
        Inflight* s;
        ~Release() { s->release(); }
    } release{inflight_.get()};
    DetectorWireResponse resp = remote_detect(endpoint_, req, cfg_);
    return std::move(resp.texts);
}

bool RemoteBackend::has_ocr() const { return cfg_.ocr; }

}  // namespace vismc::backend

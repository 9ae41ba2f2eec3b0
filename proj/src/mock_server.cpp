#include "vismc/mock_server.hpp"

#include <chrono>

#include <httplib.h>

#include "vismc/wire.hpp"

namespace vismc::backend {

namespace {

DetectorWireResponse error_response(int code, const std::string& message) {
    DetectorWireResponse resp;
    resp.error = DetectorWireError{code, message};
    return resp;
}

DetectorWireResponse handle(const SceneCorpus& corpus, const DetectorWireRequest& req) {
    auto it = corpus.find(req.image_id);
    if (it == corpus.end()) return error_response(1, "unknown_image: " + req.image_id);
    const SceneDocument& scene = it->second;

    DetectorWireResponse resp;
    resp.model = "mock-oracle";
    resp.latency_ms = 0;
    if (req.task == "detect") {
        for (const auto& query : req.queries) {
            std::vector<Box> boxes = oracle_detect(scene, query);
            std::vector<Box> kept;
            for (const Box& b : boxes)
                if (b.score >= req.threshold) kept.push_back(b);
            resp.results.push_back(std::move(kept));
        }
    } else {
        resp.is_ocr = true;
        resp.texts = oracle_read_text(scene, *req.region);
    }
    return resp;
}

}  // namespace

MockDetectorServer::MockDetectorServer(std::shared_ptr<const SceneCorpus> corpus, int port)
    : corpus_(std::move(corpus)), server_(std::make_unique<httplib::Server>()), port_(port) {}

MockDetectorServer::~MockDetectorServer() { stop(); }

void MockDetectorServer::start() {
    server_->Post(kPerceiveRoute, [this](const httplib::Request& req, httplib::Response& res) {
        if (int d = faults_.delay_ms.load(); d > 0)
            std::this_thread::sleep_for(std::chrono::milliseconds(d));
        if (faults_.drop_next.load() > 0) {
            --faults_.drop_next;
            res.status = 500;
            return;
        }
        if (faults_.malformed_next.load() > 0) {
            --faults_.malformed_next;
            res.set_content("{\"results\": [[", "application/json");
            return;
        }
        if (faults_.error_next.load() > 0) {
            --faults_.error_next;
            res.set_content(to_json(error_response(faults_.error_code.load(), "injected fault")).dump(),
                            "application/json");
            return;
        }
        json body = json::parse(req.body, nullptr, false);
        if (body.is_discarded()) {
            res.set_content(to_json(error_response(2, "request is not valid JSON")).dump(),
                            "application/json");
            return;
        }
        DetectorWireResponse resp;
        try {
            resp = handle(*corpus_, wire_request_from_json(body));
        } catch (const MalformedInput& e) {
            resp = error_response(2, e.what());
        } catch (const std::exception& e) {
            resp = error_response(3, e.what());
        }
        res.set_content(to_json(resp).dump(), "application/json");
    });

    if (port_ == 0) {
        port_ = server_->bind_to_any_port("127.0.0.1");
        if (port_ <= 0) throw std::runtime_error("mock server: cannot bind a port");
        thread_ = std::thread([this] { server_->listen_after_bind(); });
    } else {
        if (!server_->bind_to_port("127.0.0.1", port_))
            throw std::runtime_error("mock server: cannot bind port " + std::to_string(port_));
        thread_ = std::thread([this] { server_->listen_after_bind(); });
    }
    server_->wait_until_ready();
}

void MockDetectorServer::stop() {
    if (server_) server_->stop();
    if (thread_.joinable()) thread_.join();
}

}  // namespace vismc::backend

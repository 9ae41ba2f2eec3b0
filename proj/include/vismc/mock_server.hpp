#pragma once
// Mock detector server: speaks the wire protocol backed by scene
// documents, so the remote path is integration-testable without GPUs.
// Fault injection (drop, delay, malformed payloads, error payloads) is
// settable at runtime for client robustness tests.

#include <atomic>
#include <memory>
#include <thread>

#include "vismc/scene.hpp"

namespace httplib {
class Server;
}

namespace vismc::backend {

struct FaultPlan {
    std::atomic<int> drop_next{0};       // answer with an empty 500
    std::atomic<int> malformed_next{0};  // answer with invalid JSON
    std::atomic<int> error_next{0};      // answer with an error payload
    std::atomic<int> error_code{3};
    std::atomic<int> delay_ms{0};        // sleep before answering
};

class MockDetectorServer {
public:
    // port 0 binds an ephemeral port; see port() after start().
    MockDetectorServer(std::shared_ptr<const SceneCorpus> corpus, int port = 0);
    ~MockDetectorServer();

    void start();
    void stop();
    int port() const { return port_; }
    std::string endpoint() const { return "http://127.0.0.1:" + std::to_string(port_); }
    FaultPlan& faults() { return faults_; }

private:
    std::shared_ptr<const SceneCorpus> corpus_;
    std::unique_ptr<httplib::Server> server_;
    std::thread thread_;
    int port_;
    FaultPlan faults_;
};

}  // namespace vismc::backend

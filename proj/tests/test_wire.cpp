#include <doctest.h>

#include <cmath>

#include "vismc/mock_server.hpp"
#include "vismc/oracle_backend.hpp"
#include "vismc/remote.hpp"
#include "vismc/wire.hpp"

using namespace vismc;
using namespace vismc::backend;

namespace {

Box box(double x0, double y0, double x1, double y1) { return Box{x0, y0, x1, y1, 1.0, ""}; }

std::shared_ptr<const SceneCorpus> small_corpus() {
    auto corpus = std::make_shared<SceneCorpus>();
    SceneDocument s;
    s.image_id = "i1";
    SceneObject man;
    man.id = 1;
    man.category = "man";
    man.bbox = box(0.3, 0.2, 0.5, 0.7);
    SceneObject sign;
    sign.id = 2;
    sign.category = "sign";
    sign.bbox = box(0.1, 0.1, 0.3, 0.4);
    sign.text = "Norfolk";
    s.objects = {man, sign};
    (*corpus)["i1"] = s;
    return corpus;
}

RemoteConfig fast_config() {
    RemoteConfig cfg;
    cfg.retries = 2;
    cfg.timeout_ms = 3000;
    cfg.backoff_base_ms = 5;
    return cfg;
}

}  // namespace

TEST_CASE("wire request/response JSON round trip") {
    DetectorWireRequest req;
    req.image_id = "i1";
    req.queries = {"man"};
    req.task = "detect";
    req.threshold = 0.3;
    DetectorWireRequest back = wire_request_from_json(to_json(req));
    CHECK(back.image_id == "i1");
    CHECK(back.queries == std::vector<std::string>{"man"});
    CHECK(back.threshold == doctest::Approx(0.3));

    DetectorWireResponse resp;
    resp.model = "m";
    resp.latency_ms = 3;
    resp.results = {{box(0.1, 0.1, 0.2, 0.2)}};
    DetectorWireResponse rback = wire_response_from_json(to_json(resp));
    REQUIRE(rback.results.size() == 1);
    REQUIRE(rback.results[0].size() == 1);
    CHECK(rback.results[0][0].x0 == doctest::Approx(0.1));
}

TEST_CASE("wire response without results or error violates the schema") {
    CHECK_THROWS_AS(wire_response_from_json(json{{"model", "m"}}), MalformedInput);
    // error and results are mutually exclusive
    json both = json{{"results", json::array()}, {"error", json{{"code", 1}, {"message", "x"}}}};
    CHECK_THROWS_AS(wire_response_from_json(both), MalformedInput);
}

TEST_CASE("wire request validation") {
    CHECK_THROWS_AS(wire_request_from_json(json{{"task", "detect"}}), MalformedInput);
    CHECK_THROWS_AS(
        wire_request_from_json(json{{"image_id", "i"}, {"task", "detect"}, {"queries", json::array()}}),
        MalformedInput);
    CHECK_THROWS_AS(wire_request_from_json(json{{"image_id", "i"}, {"task", "ocr"}}), MalformedInput);
    CHECK_THROWS_AS(wire_request_from_json(json{{"image_id", "i"}, {"task", "fly"}}), MalformedInput);
}

TEST_CASE("mock server and remote client agree with the in-process oracle") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);
    OracleBackend oracle(corpus);

    const char* queries[] = {"man", "sign", "zebra"};
    for (const char* q : queries) {
        auto a = remote.detect("i1", q);
        auto b = oracle.detect("i1", q);
        REQUIRE(a.size() == b.size());
        for (size_t i = 0; i < a.size(); ++i) {
            CHECK(std::abs(a[i].x0 - b[i].x0) < 1e-9);
            CHECK(std::abs(a[i].y1 - b[i].y1) < 1e-9);
            CHECK(a[i].label == b[i].label);
        }
    }
    auto texts = remote.read_text("i1", box(0.0, 0.0, 0.5, 0.5));
    REQUIRE(texts.size() == 1);
    CHECK(texts[0] == "Norfolk");
    server.stop();
}

TEST_CASE("remote client batches multiple queries in one request") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);
    auto lists = remote.detect_batch("i1", {"man", "sign", "zebra"});
    REQUIRE(lists.size() == 3);
    CHECK(lists[0].size() == 1);
    CHECK(lists[1].size() == 1);
    CHECK(lists[2].empty());
    server.stop();
}

TEST_CASE("remote client: unknown image surfaces as a remote error") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);
    try {
        remote.detect("nope", "man");
        FAIL("expected RemoteError");
    } catch (const RemoteError& e) {
        CHECK(e.remote_code == 1);
        CHECK(e.code == BackendErrorCode::UnknownImage);
    }
    server.stop();
}

TEST_CASE("remote client retries transient drops then succeeds") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    server.faults().drop_next = 2;
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);  // retries=2 -> 3 attempts
    auto boxes = remote.detect("i1", "man");
    CHECK(boxes.size() == 1);
    CHECK(server.faults().drop_next.load() == 0);
    server.stop();
}

TEST_CASE("remote client exhausts retries on persistent drops") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    server.faults().drop_next = 3;  // one more than the client will attempt
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);
    CHECK_THROWS_AS(remote.detect("i1", "man"), TransportError);
    server.stop();
}

TEST_CASE("remote client: malformed JSON is a protocol error, not retried") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    server.faults().malformed_next = 1;
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);
    CHECK_THROWS_AS(remote.detect("i1", "man"), ProtocolError);
    // the injected fault was consumed by the single (non-retried) attempt
    CHECK(server.faults().malformed_next.load() == 0);
    server.stop();
}

TEST_CASE("remote client: injected error payloads surface as RemoteError") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    server.faults().error_next = 1;
    server.faults().error_code = 3;
    RemoteBackend remote(server.endpoint(), fast_config(), 0.0);
    CHECK_THROWS_AS(remote.detect("i1", "man"), RemoteError);
    server.stop();
}

TEST_CASE("remote client: dead endpoint raises TransportError after retries") {
    RemoteConfig cfg = fast_config();
    cfg.timeout_ms = 1500;
    RemoteBackend remote("http://127.0.0.1:1", cfg, 0.0);
    CHECK_THROWS_AS(remote.detect("i1", "man"), TransportError);
}

TEST_CASE("remote client honors the total deadline under injected delay") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    server.faults().delay_ms = 400;
    RemoteConfig cfg = fast_config();
    cfg.timeout_ms = 100;  // shorter than the injected delay
    RemoteBackend remote(server.endpoint(), cfg, 0.0);
    CHECK_THROWS_AS(remote.detect("i1", "man"), TransportError);
    server.faults().delay_ms = 0;
    server.stop();
}

TEST_CASE("server forwards the request threshold") {
    auto corpus = small_corpus();
    MockDetectorServer server(corpus);
    server.start();
    // oracle scores are 1.0; a threshold above that filters everything
    RemoteBackend strict(server.endpoint(), fast_config(), 1.5);
    CHECK(strict.detect("i1", "man").empty());
    server.stop();
}

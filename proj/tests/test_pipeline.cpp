#include <doctest.h>

#include <filesystem>
#include <fstream>

#include "vismc/oracle_backend.hpp"
#include "vismc/pipeline.hpp"

using namespace vismc;
using namespace vismc::pipeline;
using vismc::backend::OracleBackend;
using vismc::backend::SceneCorpus;
using vismc::backend::SceneDocument;
using vismc::backend::SceneObject;

namespace {

namespace fs = std::filesystem;

Box box(double x0, double y0, double x1, double y1) { return Box{x0, y0, x1, y1, 1.0, ""}; }

std::shared_ptr<const SceneCorpus> test_corpus(int n_images) {
    auto corpus = std::make_shared<SceneCorpus>();
    for (int i = 0; i < n_images; ++i) {
        SceneDocument s;
        char buf[16];
        std::snprintf(buf, sizeof buf, "img_%02d", i);
        s.image_id = buf;
        SceneObject man;
        man.id = 1;
        man.category = "man";
        man.bbox = box(0.3, 0.2, 0.5, 0.7);
        s.objects.push_back(man);
        if (i % 2 == 0) {
            SceneObject horse;
            horse.id = 2;
            horse.category = "horse";
            horse.bbox = box(0.25, 0.4, 0.6, 0.9);
            s.objects.push_back(horse);
            s.relations.push_back({1, "riding", 2});
        }
        (*corpus)[s.image_id] = s;
    }
    return corpus;
}

std::vector<std::string> ids_of(const SceneCorpus& corpus) {
    std::vector<std::string> out;
    for (const auto& [id, _] : corpus) out.push_back(id);
    return out;
}

fs::path fresh_dir(const std::string& name) {
    fs::path dir = fs::temp_directory_path() / ("vismc_pipeline_" + name);
    fs::remove_all(dir);
    return dir;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p);
    return std::string((std::istreambuf_iterator<char>(in)), std::istreambuf_iterator<char>());
}

std::string store_fingerprint(const fs::path& dir) {
    return slurp(dir / "manifest.json") + "|" + slurp(dir / "specs.jsonl") + "|" +
           slurp(dir / "routines.jsonl") + "|" + slurp(dir / "verdicts.jsonl");
}

struct FlakyBackend : PerceptionBackend {
    explicit FlakyBackend(std::shared_ptr<const SceneCorpus> corpus) : oracle(corpus) {}
    std::vector<Box> detect(const std::string& image, const std::string& query) override {
        if (!failed.exchange(true)) throw std::runtime_error("simulated worker crash");
        return oracle.detect(image, query);
    }
    std::vector<std::string> read_text(const std::string& image, const Box& region) override {
        return oracle.read_text(image, region);
    }
    bool has_ocr() const override { return true; }
    std::string name() const override { return "oracle"; }

    OracleBackend oracle;
    std::atomic<bool> failed{false};
};

struct DeadBackend : PerceptionBackend {
    std::vector<Box> detect(const std::string&, const std::string&) override {
        throw BackendError(BackendErrorCode::ModelFailure, "backend down");
    }
    std::vector<std::string> read_text(const std::string&, const Box&) override {
        throw BackendError(BackendErrorCode::ModelFailure, "backend down");
    }
    bool has_ocr() const override { return true; }
    std::string name() const override { return "dead"; }
};

}  // namespace

TEST_CASE("plan: one parse per query, counts flow through the report") {
    auto corpus = test_corpus(10);
    OracleBackend backend(corpus);
    PipelineConfig cfg;
    // 2 triplets: (woman, holding, cup), (cup, near, window)
    std::vector<QueryJob> queries = {{"q1", "a woman holding a cup near a window"}};
    Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
    CHECK(p.roots.size() == 1);

    ResultStore store(fresh_dir("plan_counts").string());
    RunReport report = run(p, backend, store, cfg);
    CHECK(report.completed);
    CHECK(report.parse_done == 1);
    CHECK(report.synth_done == 2);
    CHECK(report.exec_done == 20);  // 2 triplets x 10 images
}

TEST_CASE("plan: empty corpus is a planning error") {
    PipelineConfig cfg;
    CHECK_THROWS_AS(plan({{"q1", "man riding horse"}}, {}, cfg, "oracle"), std::invalid_argument);
    CHECK_THROWS_AS(plan({}, {"img"}, cfg, "oracle"), std::invalid_argument);
}

TEST_CASE("pipeline: one query's parse failure never blocks another") {
    auto corpus = test_corpus(4);
    OracleBackend backend(corpus);
    PipelineConfig cfg;
    std::vector<QueryJob> queries = {{"bad", "a street with no cars"}, {"good", "man riding horse"}};
    Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
    ResultStore store(fresh_dir("isolation").string());
    RunReport report = run(p, backend, store, cfg);
    CHECK(report.completed);
    CHECK(report.parse_failed == 1);
    CHECK(report.parse_done == 1);
    CHECK(report.exec_done == 4);
    auto bad = store.get_spec("bad");
    REQUIRE(bad.has_value());
    CHECK(bad->contains("error"));
    CHECK(store.get_verdict("good", 0, "img_00").has_value());
}

TEST_CASE("pipeline: store bytes are identical for any pool sizes") {
    auto corpus = test_corpus(6);
    std::vector<QueryJob> queries = {{"q1", "man riding horse"},
                                     {"q2", "a woman holding a cup near a window"},
                                     {"q3", "a sign that reads Norfolk"}};
    std::vector<std::pair<int, int>> pools = {{1, 1}, {2, 4}, {8, 8}};
    std::vector<std::string> fingerprints;
    for (auto [light, heavy] : pools) {
        OracleBackend backend(corpus);
        PipelineConfig cfg;
        cfg.light_pool = light;
        cfg.heavy_pool = heavy;
        Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
        fs::path dir = fresh_dir("pools_" + std::to_string(light) + "_" + std::to_string(heavy));
        ResultStore store(dir.string());
        RunReport report = run(p, backend, store, cfg);
        CHECK(report.completed);
        fingerprints.push_back(store_fingerprint(dir));
    }
    CHECK(fingerprints[0] == fingerprints[1]);
    CHECK(fingerprints[0] == fingerprints[2]);
}

TEST_CASE("pipeline: resume after interrupt equals a fresh run") {
    auto corpus = test_corpus(5);
    std::vector<QueryJob> queries = {{"q1", "man riding horse"},
                                     {"q2", "a woman holding a cup near a window"}};

    fs::path fresh = fresh_dir("resume_fresh");
    {
        OracleBackend backend(corpus);
        PipelineConfig cfg;
        Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
        ResultStore store(fresh.string());
        CHECK(run(p, backend, store, cfg).completed);
    }

    for (long cut : {1L, 4L, 9L}) {
        fs::path dir = fresh_dir("resume_cut" + std::to_string(cut));
        {
            OracleBackend backend(corpus);
            PipelineConfig cfg;
            cfg.interrupt_after_writes = cut;
            cfg.light_pool = 1;
            cfg.heavy_pool = 1;
            Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
            ResultStore store(dir.string());
            RunReport report = run(p, backend, store, cfg);
            CHECK_FALSE(report.completed);
            CHECK_FALSE(store.finalized());
        }
        {
            OracleBackend backend(corpus);
            PipelineConfig cfg;
            Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
            ResultStore store(dir.string());
            RunReport report = run(p, backend, store, cfg);
            CHECK(report.completed);
        }
        CHECK(store_fingerprint(dir) == store_fingerprint(fresh));
    }
}

TEST_CASE("pipeline: resume with a changed vm config is a plan mismatch") {
    auto corpus = test_corpus(3);
    std::vector<QueryJob> queries = {{"q1", "man riding horse"}};
    fs::path dir = fresh_dir("mismatch");
    {
        OracleBackend backend(corpus);
        PipelineConfig cfg;
        Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
        ResultStore store(dir.string());
        run(p, backend, store, cfg);
    }
    OracleBackend backend(corpus);
    PipelineConfig changed;
    changed.vm.near_frac = 0.5;
    Plan p = plan(queries, ids_of(*corpus), changed, backend.name());
    ResultStore store(dir.string());
    CHECK_THROWS_AS(run(p, backend, store, changed), PlanMismatch);
}

TEST_CASE("pipeline: rerunning a complete store is a no-op") {
    auto corpus = test_corpus(3);
    std::vector<QueryJob> queries = {{"q1", "man riding horse"}};
    fs::path dir = fresh_dir("noop");
    OracleBackend backend(corpus);
    PipelineConfig cfg;
    Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
    {
        ResultStore store(dir.string());
        run(p, backend, store, cfg);
    }
    ResultStore store(dir.string());
    RunReport report = run(p, backend, store, cfg);
    CHECK(report.completed);
    CHECK(report.parse_done == 0);
    CHECK(report.parse_skipped == 1);
    CHECK(report.synth_skipped == 1);
    CHECK(report.exec_skipped == 3);
    CHECK(report.exec_done == 0);
}

TEST_CASE("pipeline: a crashing worker retries and completes at-most-once") {
    auto corpus = test_corpus(3);
    FlakyBackend backend(corpus);
    PipelineConfig cfg;
    std::vector<QueryJob> queries = {{"q1", "man riding horse"}};
    Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
    fs::path dir = fresh_dir("flaky");
    ResultStore store(dir.string());
    RunReport report = run(p, backend, store, cfg);
    CHECK(report.completed);
    CHECK(report.retries == 1);
    CHECK(report.exec_done == 3);
    CHECK(report.exec_failed == 0);

    // identical to a run against the never-failing oracle
    fs::path ref = fresh_dir("flaky_ref");
    OracleBackend stable(corpus);
    ResultStore ref_store(ref.string());
    run(plan(queries, ids_of(*corpus), cfg, stable.name()), stable, ref_store, cfg);
    CHECK(store_fingerprint(dir) == store_fingerprint(ref));
}

TEST_CASE("pipeline: dead backend degrades to all-indeterminate verdicts") {
    auto corpus = test_corpus(3);
    DeadBackend backend;
    PipelineConfig cfg;
    std::vector<QueryJob> queries = {{"q1", "man riding horse"}};
    Plan p = plan(queries, ids_of(*corpus), cfg, backend.name());
    fs::path dir = fresh_dir("dead");
    ResultStore store(dir.string());
    RunReport report = run(p, backend, store, cfg);
    CHECK(report.completed);
    CHECK(report.exec_done == 3);
    for (const json& record : store.verdicts_for("q1")) {
        Verdict v = verdict_from_json(record);
        CHECK(v.outcome == Outcome::Indeterminate);
        REQUIRE(v.error_class.has_value());
        CHECK(*v.error_class == ErrorClass::BackendFailure);
    }
}

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <fstream>

#include "vismc/cache.hpp"
#include "vismc/oracle_backend.hpp"
#include "vismc/scene.hpp"

using namespace vismc;
using namespace vismc::backend;

namespace {

Box box(double x0, double y0, double x1, double y1) { return Box{x0, y0, x1, y1, 1.0, ""}; }

SceneDocument riding_scene() {
    SceneDocument s;
    s.image_id = "img_riding";
    SceneObject man;
    man.id = 1;
    man.category = "man";
    man.synonyms = {"person"};
    man.bbox = box(0.3, 0.2, 0.5, 0.7);
    SceneObject horse;
    horse.id = 2;
    horse.category = "horse";
    horse.bbox = box(0.25, 0.4, 0.6, 0.9);
    s.objects = {man, horse};
    s.relations = {{1, "riding", 2}};
    return s;
}

SceneDocument bathtub_scene() {
    SceneDocument s;
    s.image_id = "img_tub";
    SceneObject tub;
    tub.id = 1;
    tub.category = "bathtub";
    tub.attributes = {"white"};
    tub.bbox = box(0.2, 0.5, 0.8, 0.9);
    SceneObject sign;
    sign.id = 2;
    sign.category = "sign";
    sign.bbox = box(0.1, 0.1, 0.3, 0.3);
    sign.text = "Norfolk";
    s.objects = {tub, sign};
    return s;
}

struct CountingBackend : PerceptionBackend {
    explicit CountingBackend(std::shared_ptr<const SceneCorpus> corpus) : oracle(corpus) {}
    std::vector<Box> detect(const std::string& image, const std::string& query) override {
        ++detect_calls;
        return oracle.detect(image, query);
    }
    std::vector<std::string> read_text(const std::string& image, const Box& region) override {
        ++ocr_calls;
        return oracle.read_text(image, region);
    }
    bool has_ocr() const override { return true; }
    std::string name() const override { return "counting"; }

    OracleBackend oracle;
    std::atomic<int> detect_calls{0};
    std::atomic<int> ocr_calls{0};
};

}  // namespace

TEST_CASE("oracle_detect: composite action query via relations") {
    SceneDocument s = riding_scene();
    auto boxes = oracle_detect(s, "man riding horse");
    REQUIRE(boxes.size() == 1);
    CHECK(boxes[0].label == "man");
    CHECK(boxes[0].score == 1.0);
    // gerund/plural folding both ways
    CHECK(oracle_detect(s, "man rides horse").size() == 1);
    CHECK(oracle_detect(s, "person riding horse").size() == 1);
}

TEST_CASE("oracle_detect: absent category returns empty") {
    SceneDocument s = riding_scene();
    CHECK(oracle_detect(s, "zebra").empty());
    CHECK(oracle_detect(s, "man riding zebra").empty());
}

TEST_CASE("oracle_detect: attribute-qualified query") {
    SceneDocument s = bathtub_scene();
    auto boxes = oracle_detect(s, "white bathtub");
    REQUIRE(boxes.size() == 1);
    CHECK(boxes[0].label == "bathtub");
    CHECK(oracle_detect(s, "red bathtub").empty());
}

TEST_CASE("oracle_detect: determinism and id ordering") {
    SceneDocument s = riding_scene();
    SceneObject second_man;
    second_man.id = 5;
    second_man.category = "man";
    second_man.bbox = box(0.7, 0.2, 0.9, 0.7);
    s.objects.push_back(second_man);
    auto a = oracle_detect(s, "man");
    auto b = oracle_detect(s, "man");
    REQUIRE(a.size() == 2);
    CHECK(a[0].x0 == b[0].x0);
    CHECK(a[0].x0 == doctest::Approx(0.3));  // id 1 before id 5
    CHECK(a[1].x0 == doctest::Approx(0.7));
}

TEST_CASE("oracle completeness: every relation answers its composite query") {
    for (const SceneDocument& s : {riding_scene(), bathtub_scene()}) {
        for (const auto& rel : s.relations) {
            const SceneObject* subj = s.find_object(rel.subject_id);
            const SceneObject* obj = s.find_object(rel.object_id);
            REQUIRE(subj);
            REQUIRE(obj);
            std::string q = subj->category + " " + rel.predicate + " " + obj->category;
            CHECK_FALSE(oracle_detect(s, q).empty());
        }
    }
}

TEST_CASE("oracle_read_text: overlap and id order") {
    SceneDocument s = bathtub_scene();
    auto texts = oracle_read_text(s, box(0.0, 0.0, 0.5, 0.5));
    REQUIRE(texts.size() == 1);
    CHECK(texts[0] == "Norfolk");
    CHECK(oracle_read_text(s, box(0.6, 0.6, 0.9, 0.9)).empty());

    SceneObject extra;
    extra.id = 0;
    extra.category = "plate";
    extra.bbox = box(0.05, 0.05, 0.2, 0.2);
    extra.text = "alpha";
    s.objects.push_back(extra);
    auto both = oracle_read_text(s, box(0.0, 0.0, 0.5, 0.5));
    REQUIRE(both.size() == 2);
    CHECK(both[0] == "alpha");  // id 0 before id 2
    CHECK(both[1] == "Norfolk");
}

TEST_CASE("scene JSON round trip and validation") {
    SceneDocument s = riding_scene();
    SceneDocument back = scene_from_json(scene_to_json(s));
    CHECK(back.image_id == s.image_id);
    REQUIRE(back.objects.size() == 2);
    CHECK(back.objects[0].synonyms == std::vector<std::string>{"person"});
    REQUIRE(back.relations.size() == 1);
    CHECK(back.relations[0].predicate == "riding");

    CHECK_THROWS_AS(scene_from_json(R"({"image_id":"x","objects":[
        {"id":1,"category":"a","bbox":{"x0":0.1,"y0":0.1,"x1":0.2,"y1":0.2}},
        {"id":1,"category":"b","bbox":{"x0":0.1,"y0":0.1,"x1":0.2,"y1":0.2}}]})"),
                    MalformedInput);
    CHECK_THROWS_AS(scene_from_json(R"({"image_id":"x","objects":[],"relations":[
        {"subject_id":1,"predicate":"p","object_id":2}]})"),
                    MalformedInput);
    CHECK_THROWS_AS(scene_from_json(R"({"image_id":"x","objects":[
        {"id":1,"category":"a","bbox":{"x0":0.5,"y0":0.1,"x1":0.2,"y1":0.2}}]})"),
                    MalformedInput);
}

TEST_CASE("cache: second identical call is served without inner calls") {
    auto corpus = std::make_shared<SceneCorpus>();
    (*corpus)["img_riding"] = riding_scene();
    auto inner = std::make_shared<CountingBackend>(corpus);

    auto dir = std::filesystem::temp_directory_path() / "vismc_cache_test";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto path = (dir / "cache.jsonl").string();

    CacheBackend cache(inner, path, CacheMode::Record);
    auto first = cache.detect("img_riding", "man");
    CHECK(inner->detect_calls == 1);
    auto second = cache.detect("img_riding", "man");
    CHECK(inner->detect_calls == 1);  // hit
    REQUIRE(first.size() == second.size());
    CHECK(first[0].x0 == second[0].x0);
    CHECK(cache.hits() == 1);

    // a fresh instance reloads the persisted entries
    CacheBackend reloaded(inner, path, CacheMode::Record);
    auto third = reloaded.detect("img_riding", "man");
    CHECK(inner->detect_calls == 1);
    CHECK(third.size() == first.size());
}

TEST_CASE("cache transparency: wrapped equals unwrapped") {
    auto corpus = std::make_shared<SceneCorpus>();
    (*corpus)["img_riding"] = riding_scene();
    (*corpus)["img_tub"] = bathtub_scene();
    auto inner = std::make_shared<CountingBackend>(corpus);
    OracleBackend plain(corpus);

    auto dir = std::filesystem::temp_directory_path() / "vismc_cache_transparency";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    CacheBackend cache(inner, (dir / "c.jsonl").string(), CacheMode::Record);

    const char* queries[] = {"man", "horse", "white bathtub", "man riding horse", "zebra"};
    for (const char* img : {"img_riding", "img_tub"}) {
        for (const char* q : queries) {
            auto a = cache.detect(img, q);
            auto b = plain.detect(img, q);
            REQUIRE(a.size() == b.size());
            for (size_t i = 0; i < a.size(); ++i) {
                CHECK(a[i].x0 == b[i].x0);
                CHECK(a[i].score == b[i].score);
            }
        }
    }
}

TEST_CASE("cache: replay mode fails on a miss") {
    auto corpus = std::make_shared<SceneCorpus>();
    (*corpus)["img_riding"] = riding_scene();
    auto inner = std::make_shared<CountingBackend>(corpus);

    auto dir = std::filesystem::temp_directory_path() / "vismc_cache_replay";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto path = (dir / "c.jsonl").string();
    {
        CacheBackend record(inner, path, CacheMode::Record);
        record.detect("img_riding", "man");
    }
    CacheBackend replay(nullptr, path, CacheMode::Replay);
    CHECK_FALSE(replay.detect("img_riding", "man").empty());  // cached
    CHECK_THROWS_AS(replay.detect("img_riding", "horse"), BackendError);
}

TEST_CASE("cache: truncated store is corrupt") {
    auto corpus = std::make_shared<SceneCorpus>();
    (*corpus)["img_riding"] = riding_scene();
    auto inner = std::make_shared<CountingBackend>(corpus);

    auto dir = std::filesystem::temp_directory_path() / "vismc_cache_corrupt";
    std::filesystem::remove_all(dir);
    std::filesystem::create_directories(dir);
    auto path = (dir / "c.jsonl").string();
    {
        CacheBackend record(inner, path, CacheMode::Record);
        record.detect("img_riding", "man");
        record.detect("img_riding", "horse");
    }
    // truncate mid-line
    auto size = std::filesystem::file_size(path);
    std::filesystem::resize_file(path, size - 10);
    CHECK_THROWS_AS(CacheBackend(inner, path, CacheMode::Record), StoreCorrupt);

    // flipped byte fails the checksum
    std::filesystem::remove(path);
    {
        CacheBackend record(inner, path, CacheMode::Record);
        record.detect("img_riding", "man");
    }
    std::fstream f(path, std::ios::in | std::ios::out);
    f.seekp(20);
    f.put('Z');
    f.close();
    CHECK_THROWS_AS(CacheBackend(inner, path, CacheMode::Record), StoreCorrupt);
}

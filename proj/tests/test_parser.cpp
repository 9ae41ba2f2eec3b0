#include <doctest.h>

#include "vismc/json_io.hpp"
#include "vismc/parser.hpp"

using namespace vismc;
using parse::ingest_triplets;
using parse::parse_query;

namespace {

Specification parse_q(const std::string& q) { return parse_query(QueryText{q}); }

}  // namespace

TEST_CASE("parse: man riding horse") {
    Specification spec = parse_q("man riding horse");
    REQUIRE(spec.triplets.size() == 1);
    const Triplet& t = spec.triplets[0];
    CHECK(t.subject.head == "man");
    CHECK(t.predicate == "riding");
    CHECK(t.object.head == "horse");
    CHECK(spec.source == SpecSource::Grammar);
}

TEST_CASE("parse: two horses standing around in a field near a brick building") {
    Specification spec = parse_q("two horses standing around in a field near a brick building");
    REQUIRE(spec.triplets.size() == 2);

    const Triplet& t0 = spec.triplets[0];
    CHECK(t0.subject.head == "horse");
    REQUIRE(t0.subject.count.has_value());
    CHECK(*t0.subject.count == 2);
    CHECK(t0.predicate == "standing in");
    CHECK(t0.object.head == "field");

    const Triplet& t1 = spec.triplets[1];
    CHECK(t1.subject.head == "horse");
    REQUIRE(t1.subject.count.has_value());
    CHECK(*t1.subject.count == 2);
    CHECK(t1.predicate == "near");
    CHECK(t1.object.head == "building");
    REQUIRE(t1.object.attributes.size() == 1);
    CHECK(t1.object.attributes[0] == "brick");
}

TEST_CASE("parse: a sign that reads Norfolk") {
    Specification spec = parse_q("a sign that reads Norfolk");
    REQUIRE(spec.triplets.size() == 1);
    const Triplet& t = spec.triplets[0];
    CHECK(t.subject.head == "sign");
    CHECK(t.predicate == "reads");
    CHECK(t.object.head.empty());
    REQUIRE(t.object.literal.has_value());
    CHECK(*t.object.literal == "Norfolk");
}

TEST_CASE("parse: quoted literals keep their text") {
    Specification spec = parse_q("a sign that says \"GO AROUND\"");
    REQUIRE(spec.triplets.size() == 1);
    CHECK(spec.triplets[0].predicate == "reads");
    CHECK(*spec.triplets[0].object.literal == "GO AROUND");
}

TEST_CASE("parse: empty query raises ParseError") {
    CHECK_THROWS_AS(parse_q(""), ParseError);
    CHECK_THROWS_AS(parse_q("   "), ParseError);
}

TEST_CASE("parse: negation is rejected") {
    CHECK_THROWS_AS(parse_q("a street with no cars"), ParseError);
    CHECK_THROWS_AS(parse_q("a man without a hat"), ParseError);
}

TEST_CASE("parse: copular clause yields predicate is") {
    Specification spec = parse_q("a bathtub that is white");
    REQUIRE(spec.triplets.size() == 1);
    CHECK(spec.triplets[0].subject.head == "bathtub");
    CHECK(spec.triplets[0].predicate == "is");
    CHECK(spec.triplets[0].object.head == "white");
}

TEST_CASE("parse: copula before a preposition becomes the preposition") {
    Specification spec = parse_q("the man is on the bench");
    REQUIRE(spec.triplets.size() == 1);
    CHECK(spec.triplets[0].subject.head == "man");
    CHECK(spec.triplets[0].predicate == "on");
    CHECK(spec.triplets[0].object.head == "bench");
}

TEST_CASE("parse: verbless noun phrase with adjunct") {
    Specification spec = parse_q("a bench by the shore");
    REQUIRE(spec.triplets.size() == 1);
    CHECK(spec.triplets[0].subject.head == "bench");
    CHECK(spec.triplets[0].predicate == "by");
    CHECK(spec.triplets[0].object.head == "shore");
}

TEST_CASE("parse: coordinated objects fan out sharing subject and predicate") {
    Specification spec =
        parse_q("a boxed meal of a sandwich roll, an orange juice and a strawberry yogurt");
    REQUIRE(spec.triplets.size() == 3);
    for (const auto& t : spec.triplets) {
        CHECK(t.subject.head == "meal");
        REQUIRE(t.subject.attributes.size() == 1);
        CHECK(t.subject.attributes[0] == "boxed");
        CHECK(t.predicate == "with");  // possessive "of"
    }
    CHECK(spec.triplets[0].object.head == "roll");
    CHECK(spec.triplets[0].object.attributes == std::vector<std::string>{"sandwich"});
    CHECK(spec.triplets[1].object.head == "juice");
    CHECK(spec.triplets[2].object.head == "yogurt");
}

TEST_CASE("parse: adjunct attaches to the nearest eligible noun phrase") {
    // direct object is the nearest attachment site
    Specification spec = parse_q("a woman holding a cup near a window");
    REQUIRE(spec.triplets.size() == 2);
    CHECK(spec.triplets[0].subject.head == "woman");
    CHECK(spec.triplets[0].predicate == "holding");
    CHECK(spec.triplets[0].object.head == "cup");
    CHECK(spec.triplets[1].subject.head == "cup");
    CHECK(spec.triplets[1].predicate == "near");
    CHECK(spec.triplets[1].object.head == "window");
}

TEST_CASE("parse: relative clause after a reading complement plus adjunct") {
    Specification spec = parse_q("a sign that says STOP near a car");
    REQUIRE(spec.triplets.size() == 2);
    CHECK(spec.triplets[0].predicate == "reads");
    CHECK(*spec.triplets[0].object.literal == "STOP");
    CHECK(spec.triplets[1].subject.head == "sign");
    CHECK(spec.triplets[1].predicate == "near");
    CHECK(spec.triplets[1].object.head == "car");
}

TEST_CASE("parse: clause coordination splits on and + clause") {
    Specification spec = parse_q("a man riding a horse and a dog sleeping on a rug");
    REQUIRE(spec.triplets.size() == 2);
    CHECK(spec.triplets[0].subject.head == "man");
    CHECK(spec.triplets[0].predicate == "riding");
    CHECK(spec.triplets[0].object.head == "horse");
    CHECK(spec.triplets[1].subject.head == "dog");
    CHECK(spec.triplets[1].predicate == "sleeping on");
    CHECK(spec.triplets[1].object.head == "rug");
}

TEST_CASE("parse: subject coordination shares the verb phrase") {
    Specification spec = parse_q("a man and a woman sitting on a bench");
    REQUIRE(spec.triplets.size() == 2);
    CHECK(spec.triplets[0].subject.head == "man");
    CHECK(spec.triplets[1].subject.head == "woman");
    for (const auto& t : spec.triplets) {
        CHECK(t.predicate == "sitting on");
        CHECK(t.object.head == "bench");
    }
}

TEST_CASE("parse: determinism") {
    const std::string q = "two horses standing around in a field near a brick building";
    Specification a = parse_q(q);
    Specification b = parse_q(q);
    CHECK(same_content(a, b));
}

TEST_CASE("parse: triplet ids are 0..n-1 in clause order") {
    Specification spec = parse_q("a woman holding a cup near a window");
    for (size_t i = 0; i < spec.triplets.size(); ++i)
        CHECK(spec.triplets[i].id == static_cast<int>(i));
}

TEST_CASE("round trip: ingest(serialize(parse(q))) equals parse(q)") {
    const char* queries[] = {
        "man riding horse",
        "two horses standing around in a field near a brick building",
        "a sign that reads Norfolk",
        "a lake with two boats",
        "a woman holding a cup near a window",
    };
    for (const char* q : queries) {
        Specification first = parse_q(q);
        Specification back = ingest_triplets(to_json(first).dump());
        CHECK(same_content(first, back));
        CHECK(back.source == SpecSource::ExternalJson);
    }
}

TEST_CASE("monotonicity: appending an adjunct never loses triplets") {
    const char* queries[] = {
        "man riding horse",
        "a bench by the shore",
        "a woman holding a cup",
        "two horses standing around in a field",
    };
    for (const char* q : queries) {
        size_t before = parse_q(q).triplets.size();
        size_t after = parse_q(std::string(q) + " near a brick building").triplets.size();
        CHECK(after >= before);
    }
}

TEST_CASE("ingest_triplets: valid external document") {
    const std::string doc = R"({"query":"bench by the shore","triplets":[
        {"id":0,"s":{"head":"bench"},"p":"located by","o":{"head":"shore"}}]})";
    Specification spec = ingest_triplets(doc);
    CHECK(spec.source == SpecSource::ExternalJson);
    REQUIRE(spec.triplets.size() == 1);
    CHECK(spec.triplets[0].predicate == "located by");
}

TEST_CASE("ingest_triplets: empty triplet list is an invalid specification") {
    CHECK_THROWS_AS(ingest_triplets(R"({"query":"x","triplets":[]})"), InvalidSpecification);
}

TEST_CASE("ingest_triplets: empty predicate is an invalid specification") {
    const std::string doc = R"({"query":"x","triplets":[
        {"id":0,"s":{"head":"bench"},"p":"","o":{"head":"shore"}}]})";
    CHECK_THROWS_AS(ingest_triplets(doc), InvalidSpecification);
}

TEST_CASE("ingest_triplets: malformed JSON names the path") {
    try {
        ingest_triplets(R"({"query":"x","triplets":[{"id":0,"s":{"head":"a"},"p":5,"o":{}}]})");
        FAIL("expected MalformedInput");
    } catch (const MalformedInput& e) {
        CHECK(std::string(e.what()).find("$.triplets[0]") != std::string::npos);
    }
    CHECK_THROWS_AS(ingest_triplets("not json at all"), MalformedInput);
}

TEST_CASE("composite fallback builds the whole-query triplet") {
    Specification spec = parse::composite_fallback(QueryText{"A woman being photographed"});
    REQUIRE(spec.triplets.size() == 1);
    CHECK(spec.triplets[0].predicate == "depicts");
    CHECK(spec.triplets[0].subject.head == "a woman being photographed");
    REQUIRE(spec.triplets[0].object.literal.has_value());
    CHECK(*spec.triplets[0].object.literal == "A woman being photographed");
}

#pragma once
// Annotated scene documents: the ground-truth world model behind the
// oracle backend and the mock detector server. Loaded from
// *.scene.json files.

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "vismc/types.hpp"

namespace vismc::backend {

struct SceneObject {
    int id = 0;
    std::string category;
    std::vector<std::string> synonyms;
    Box bbox;
    std::vector<std::string> attributes;
    std::optional<std::string> text;
};

struct SceneRelation {
    int subject_id = 0;
    std::string predicate;
    int object_id = 0;
};

struct SceneDocument {
    std::string image_id;
    int width = 0, height = 0;
    std::vector<SceneObject> objects;
    std::vector<SceneRelation> relations;

    const SceneObject* find_object(int id) const;
};

using SceneCorpus = std::map<std::string, SceneDocument>;

SceneDocument scene_from_json(const std::string& json_bytes);
std::string scene_to_json(const SceneDocument& scene);

// Reads every *.scene.json under dir (sorted by filename). Throws
// MalformedInput on unreadable or invalid documents.
SceneCorpus load_corpus(const std::string& dir);

// Open-vocabulary matching over the annotation graph:
//   - exact category/synonym match
//   - attribute-qualified phrase ("white bathtub")
//   - composite action phrase ("man riding horse") via relations, with
//     verb-form folding (riding ~ rides ~ ride)
// Results carry score 1.0 and are sorted by object id.
std::vector<Box> oracle_detect(const SceneDocument& scene, const std::string& query);

// Text of every object whose bbox overlaps the region, in object-id order.
std::vector<std::string> oracle_read_text(const SceneDocument& scene, const Box& region);

}  // namespace vismc::backend

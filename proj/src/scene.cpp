#include "vismc/scene.hpp"

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <unordered_set>

#include "vismc/geometry.hpp"
#include "vismc/json_io.hpp"
#include "vismc/text.hpp"

namespace vismc::backend {

namespace fs = std::filesystem;

const SceneObject* SceneDocument::find_object(int id) const {
    for (const auto& o : objects)
        if (o.id == id) return &o;
    return nullptr;
}

SceneDocument scene_from_json(const std::string& json_bytes) {
    json j = parse_json(json_bytes, "scene document");
    SceneDocument scene;
    if (!j.is_object()) throw MalformedInput("scene: expected object");
    scene.image_id = j.at("image_id").get<std::string>();
    scene.width = j.value("width", 0);
    scene.height = j.value("height", 0);
    std::unordered_set<int> ids;
    if (auto it = j.find("objects"); it != j.end()) {
        for (size_t i = 0; i < it->size(); ++i) {
            const json& jo = (*it)[i];
            std::string path = "$.objects[" + std::to_string(i) + "]";
            SceneObject obj;
            obj.id = jo.at("id").get<int>();
            obj.category = jo.at("category").get<std::string>();
            if (auto s = jo.find("synonyms"); s != jo.end())
                obj.synonyms = s->get<std::vector<std::string>>();
            obj.bbox = box_from_json(jo.at("bbox"), path + ".bbox");
            if (auto a = jo.find("attributes"); a != jo.end())
                obj.attributes = a->get<std::vector<std::string>>();
            if (auto t = jo.find("text"); t != jo.end() && !t->is_null())
                obj.text = t->get<std::string>();
            if (!ids.insert(obj.id).second)
                throw MalformedInput(path + ": duplicate object id " + std::to_string(obj.id));
            scene.objects.push_back(std::move(obj));
        }
    }
    if (auto it = j.find("relations"); it != j.end()) {
        for (size_t i = 0; i < it->size(); ++i) {
            const json& jr = (*it)[i];
            std::string path = "$.relations[" + std::to_string(i) + "]";
            SceneRelation rel;
            rel.subject_id = jr.at("subject_id").get<int>();
            rel.predicate = jr.at("predicate").get<std::string>();
            rel.object_id = jr.at("object_id").get<int>();
            if (!ids.count(rel.subject_id) || !ids.count(rel.object_id))
                throw MalformedInput(path + ": relation endpoint does not exist");
            scene.relations.push_back(std::move(rel));
        }
    }
    return scene;
}

std::string scene_to_json(const SceneDocument& scene) {
    json objects = json::array();
    for (const auto& o : scene.objects) {
        json jo = json{{"id", o.id},
                       {"category", o.category},
                       {"bbox", json{{"x0", o.bbox.x0}, {"y0", o.bbox.y0}, {"x1", o.bbox.x1}, {"y1", o.bbox.y1}}}};
        if (!o.synonyms.empty()) jo["synonyms"] = o.synonyms;
        if (!o.attributes.empty()) jo["attributes"] = o.attributes;
        if (o.text) jo["text"] = *o.text;
        objects.push_back(std::move(jo));
    }
    json relations = json::array();
    for (const auto& r : scene.relations) {
        relations.push_back(json{{"subject_id", r.subject_id},
                                 {"predicate", r.predicate},
                                 {"object_id", r.object_id}});
    }
    json j = json{{"image_id", scene.image_id}, {"width", scene.width},
                  {"height", scene.height},     {"objects", objects},
                  {"relations", relations}};
    return j.dump(2);
}

SceneCorpus load_corpus(const std::string& dir) {
    SceneCorpus corpus;
    std::vector<fs::path> files;
    std::error_code ec;
    for (const auto& entry : fs::directory_iterator(dir, ec)) {
        const auto& p = entry.path();
        if (p.string().size() > 11 && p.string().substr(p.string().size() - 11) == ".scene.json")
            files.push_back(p);
    }
    if (ec) throw MalformedInput("cannot read corpus directory: " + dir);
    std::sort(files.begin(), files.end());
    for (const auto& p : files) {
        std::ifstream in(p);
        if (!in) throw MalformedInput("cannot open " + p.string());
        std::stringstream ss;
        ss << in.rdbuf();
        SceneDocument scene = scene_from_json(ss.str());
        if (corpus.count(scene.image_id))
            throw MalformedInput(p.string() + ": duplicate image_id " + scene.image_id);
        corpus[scene.image_id] = std::move(scene);
    }
    return corpus;
}

// ---------------------------------------------------------------------------
// Oracle matching

namespace {

// words[0..k) as qualifiers, words[k..n) as the category phrase
bool object_matches_phrase(const SceneObject& obj, const std::vector<std::string>& words) {
    if (words.empty()) return false;
    for (size_t k = 0; k < words.size(); ++k) {
        std::vector<std::string> head_words(words.begin() + k, words.end());
        std::string head = text::join(head_words);
        bool head_ok = head == obj.category ||
                       std::find(obj.synonyms.begin(), obj.synonyms.end(), head) != obj.synonyms.end();
        if (!head_ok) continue;
        bool quals_ok = true;
        for (size_t q = 0; q < k; ++q) {
            if (std::find(obj.attributes.begin(), obj.attributes.end(), words[q]) ==
                obj.attributes.end()) {
                quals_ok = false;
                break;
            }
        }
        if (quals_ok) return true;
    }
    return false;
}

std::vector<std::string> content_words(const std::string& s) {
    std::vector<std::string> out;
    for (auto& w : text::words(text::to_lower(s)))
        if (!text::is_auxiliary(w)) out.push_back(w);
    return out;
}

bool predicate_matches_at(const std::vector<std::string>& qwords, size_t pos,
                          const std::vector<std::string>& pwords) {
    if (pos + pwords.size() > qwords.size()) return false;
    for (size_t i = 0; i < pwords.size(); ++i) {
        if (!text::verbs_match(qwords[pos + i], pwords[i])) return false;
    }
    return true;
}

Box scored_box(const SceneObject& obj) {
    Box b = obj.bbox;
    b.score = 1.0;
    b.label = obj.category;
    return b;
}

}  // namespace

std::vector<Box> oracle_detect(const SceneDocument& scene, const std::string& query) {
    std::vector<std::string> qwords = content_words(query);
    if (qwords.empty()) return {};

    std::vector<std::pair<int, Box>> hits;
    auto add_object = [&hits](const SceneObject& obj) {
        for (const auto& [id, _] : hits)
            if (id == obj.id) return;
        hits.emplace_back(obj.id, scored_box(obj));
    };

    // category/synonym and attribute-qualified matches
    for (const auto& obj : scene.objects) {
        if (object_matches_phrase(obj, qwords)) add_object(obj);
    }

    // composite action phrase via the relation graph
    if (hits.empty() && qwords.size() >= 2) {
        for (const auto& rel : scene.relations) {
            const SceneObject* subj = scene.find_object(rel.subject_id);
            const SceneObject* obj = scene.find_object(rel.object_id);
            if (!subj || !obj) continue;
            std::vector<std::string> pwords = content_words(rel.predicate);
            if (pwords.empty()) continue;
            // predicate must sit strictly inside the phrase
            for (size_t pos = 1; pos + pwords.size() < qwords.size() + 1; ++pos) {
                if (!predicate_matches_at(qwords, pos, pwords)) continue;
                std::vector<std::string> subj_words(qwords.begin(), qwords.begin() + pos);
                std::vector<std::string> obj_words(qwords.begin() + pos + pwords.size(), qwords.end());
                if (obj_words.empty()) continue;
                if (object_matches_phrase(*subj, subj_words) &&
                    object_matches_phrase(*obj, obj_words)) {
                    add_object(*subj);
                    break;
                }
            }
        }
    }

    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<Box> out;
    out.reserve(hits.size());
    for (auto& [id, box] : hits) out.push_back(std::move(box));
    return out;
}

std::vector<std::string> oracle_read_text(const SceneDocument& scene, const Box& region) {
    std::vector<std::pair<int, std::string>> hits;
    for (const auto& obj : scene.objects) {
        if (!obj.text) continue;
        if (intersection_area(obj.bbox, region) > 0) hits.emplace_back(obj.id, *obj.text);
    }
    std::sort(hits.begin(), hits.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
    std::vector<std::string> out;
    out.reserve(hits.size());
    for (auto& [id, s] : hits) out.push_back(std::move(s));
    return out;
}

}  // namespace vismc::backend

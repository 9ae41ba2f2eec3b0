#include "vismc/wire.hpp"

namespace vismc::backend {

json to_json(const DetectorWireRequest& req) {
    json j = json{{"image_id", req.image_id}, {"task", req.task}, {"threshold", req.threshold}};
    j["queries"] = req.queries;
    if (req.region) j["region"] = vismc::to_json(*req.region);
    return j;
}

json to_json(const DetectorWireResponse& resp) {
    if (resp.error) {
        return json{{"error", json{{"code", resp.error->code}, {"message", resp.error->message}}}};
    }
    json j = json{{"model", resp.model}, {"latency_ms", resp.latency_ms}};
    if (resp.is_ocr) {
        j["texts"] = resp.texts;
    } else {
        json results = json::array();
        for (const auto& boxes : resp.results) {
            json list = json::array();
            for (const auto& b : boxes) list.push_back(vismc::to_json(b));
            results.push_back(std::move(list));
        }
        j["results"] = std::move(results);
    }
    return j;
}

DetectorWireRequest wire_request_from_json(const json& j) {
    if (!j.is_object()) throw MalformedInput("$: expected request object");
    DetectorWireRequest req;
    if (auto it = j.find("image_id"); it != j.end() && it->is_string())
        req.image_id = it->get<std::string>();
    else
        throw MalformedInput("$.image_id: missing or not a string");
    req.task = j.value("task", "detect");
    if (req.task != "detect" && req.task != "ocr")
        throw MalformedInput("$.task: expected \"detect\" or \"ocr\"");
    if (auto it = j.find("queries"); it != j.end()) {
        if (!it->is_array()) throw MalformedInput("$.queries: expected array");
        req.queries = it->get<std::vector<std::string>>();
    }
    if (auto it = j.find("region"); it != j.end() && !it->is_null())
        req.region = box_from_json(*it, "$.region");
    req.threshold = j.value("threshold", 0.0);
    if (req.task == "detect" && req.queries.empty())
        throw MalformedInput("$.queries: detect task requires at least one query");
    if (req.task == "ocr" && !req.region)
        throw MalformedInput("$.region: ocr task requires a region");
    return req;
}

DetectorWireResponse wire_response_from_json(const json& j) {
    if (!j.is_object()) throw MalformedInput("$: expected response object");
    DetectorWireResponse resp;
    bool has_error = j.contains("error") && !j.at("error").is_null();
    bool has_payload = j.contains("results") || j.contains("texts");
    if (has_error && has_payload)
        throw MalformedInput("$: error and results are mutually exclusive");
    if (!has_error && !has_payload)
        throw MalformedInput("$: response carries neither results nor error");
    if (has_error) {
        const json& e = j.at("error");
        resp.error = DetectorWireError{e.value("code", 0), e.value("message", "")};
        return resp;
    }
    resp.model = j.value("model", "");
    resp.latency_ms = j.value("latency_ms", 0);
    if (auto it = j.find("results"); it != j.end()) {
        if (!it->is_array()) throw MalformedInput("$.results: expected array");
        for (size_t q = 0; q < it->size(); ++q) {
            const json& list = (*it)[q];
            if (!list.is_array()) throw MalformedInput("$.results[" + std::to_string(q) + "]: expected array");
            std::vector<Box> boxes;
            for (size_t i = 0; i < list.size(); ++i)
                boxes.push_back(
                    box_from_json(list[i], "$.results[" + std::to_string(q) + "][" + std::to_string(i) + "]"));
            resp.results.push_back(std::move(boxes));
        }
    }
    if (auto it = j.find("texts"); it != j.end()) {
        if (!it->is_array()) throw MalformedInput("$.texts: expected array");
        resp.texts = it->get<std::vector<std::string>>();
        resp.is_ocr = true;
    }
    return resp;
}

}  // namespace vismc::backend

#pragma once
// Detector wire protocol: HTTP POST /v1/perceive with JSON bodies.
// Requests batch multiple queries per image to amortize round-trips.
// Error codes: 1=unknown_image, 2=bad_request, 3=model_failure.

#include <optional>
#include <string>
#include <vector>

#include "vismc/json_io.hpp"
#include "vismc/types.hpp"

namespace vismc::backend {

struct DetectorWireRequest {
    std::string image_id;
    std::vector<std::string> queries;  // detect task
    std::string task = "detect";       // "detect" | "ocr"
    std::optional<Box> region;         // ocr task
    double threshold = 0.0;            // forwarded; calibration stays server-side
};

struct DetectorWireError {
    int code = 0;
    std::string message;
};

struct DetectorWireResponse {
    std::vector<std::vector<Box>> results;  // one list per query
    std::vector<std::string> texts;         // ocr task
    bool is_ocr = false;
    std::string model;
    int latency_ms = 0;
    std::optional<DetectorWireError> error;  // mutually exclusive with results
};

json to_json(const DetectorWireRequest& req);
json to_json(const DetectorWireResponse& resp);

// Throw MalformedInput when the payload violates the protocol schema
// (e.g. neither results/texts nor error present).
DetectorWireRequest wire_request_from_json(const json& j);
DetectorWireResponse wire_response_from_json(const json& j);

inline constexpr const char* kPerceiveRoute = "/v1/perceive";

}  // namespace vismc::backend

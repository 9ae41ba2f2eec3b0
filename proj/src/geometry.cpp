#include "vismc/geometry.hpp"

#include <algorithm>
#include <cmath>

#include "vismc/text.hpp"

namespace vismc {

double overlap_x(const Box& a, const Box& b) {
    return std::max(0.0, std::min(a.x1, b.x1) - std::max(a.x0, b.x0));
}

double overlap_y(const Box& a, const Box& b) {
    return std::max(0.0, std::min(a.y1, b.y1) - std::max(a.y0, b.y0));
}

double intersection_area(const Box& a, const Box& b) {
    return overlap_x(a, b) * overlap_y(a, b);
}

double iou(const Box& a, const Box& b) {
    double inter = intersection_area(a, b);
    double uni = a.area() + b.area() - inter;
    return uni <= 0 ? 0.0 : inter / uni;
}

namespace {

// Normalized image diagonal: unit square.
constexpr double kDiagonal = 1.4142135623730951;

bool vertically_separated(const Box& a, const Box& b) {
    return overlap_y(a, b) < 0.5 * std::min(a.height(), b.height());
}

bool horizontally_separated(const Box& a, const Box& b) {
    return overlap_x(a, b) < 0.5 * std::min(a.width(), b.width());
}

bool near_centers(const Box& a, const Box& b, const VmConfig& cfg) {
    double dx = a.cx() - b.cx();
    double dy = a.cy() - b.cy();
    return std::sqrt(dx * dx + dy * dy) <= cfg.near_frac * kDiagonal;
}

}  // namespace

bool relation_holds(Relation rel, const Box& a, const Box& b, const VmConfig& cfg) {
    switch (rel) {
        case Relation::Above:
            return a.cy() < b.cy() && vertically_separated(a, b);
        case Relation::Below:
            return a.cy() > b.cy() && vertically_separated(a, b);
        case Relation::LeftOf:
            return a.cx() < b.cx() && horizontally_separated(a, b);
        case Relation::RightOf:
            return a.cx() > b.cx() && horizontally_separated(a, b);
        case Relation::On:
            // a's bottom edge rests in b's top region, with enough
            // horizontal support.
            return a.y1 >= b.y0 - cfg.contact_tol && a.y1 <= b.cy() + cfg.contact_tol &&
                   overlap_x(a, b) >= cfg.min_overlap * std::min(a.width(), b.width());
        case Relation::Under:
            return a.cy() > b.cy() && vertically_separated(a, b) && overlap_x(a, b) > 0;
        case Relation::Inside:
            return intersection_area(a, b) >= cfg.inside_frac * a.area();
        case Relation::Near:
            return near_centers(a, b, cfg);
        case Relation::OverlapOrNear:
            return iou(a, b) > 0 || near_centers(a, b, cfg);
    }
    return false;
}

RelationResult eval_relation(Relation rel, const std::vector<Box>& a, const std::vector<Box>& b,
                             const VmConfig& cfg) {
    RelationResult result;
    for (const Box& ba : a) {
        for (const Box& bb : b) {
            if (relation_holds(rel, ba, bb, cfg)) {
                result.holds = true;
                result.witness = {ba, bb};
                return result;
            }
        }
    }
    return result;
}

bool match_text(const std::vector<std::string>& read, const std::string& literal) {
    std::string needle = text::normalize_for_match(literal);
    if (needle.empty()) return false;
    for (const auto& s : read) {
        if (text::normalize_for_match(s).find(needle) != std::string::npos) return true;
    }
    return false;
}

}  // namespace vismc

#pragma once
// Geometric semantics of spatial relations over normalized boxes, plus
// the OCR substring match. Relations are existential: one witness pair
// satisfies the constraint.

#include <optional>
#include <string>
#include <vector>

#include "vismc/program.hpp"
#include "vismc/types.hpp"

namespace vismc {

struct VmConfig {
    double detect_threshold = 0.3;
    double near_frac = 0.25;     // of the image diagonal
    double min_overlap = 0.25;   // of the smaller extent, for "on"
    double inside_frac = 0.9;    // intersection / area(a)
    double contact_tol = 0.05;   // normalized units
};

struct RelationResult {
    bool holds = false;
    std::optional<std::pair<Box, Box>> witness;
};

double overlap_x(const Box& a, const Box& b);
double overlap_y(const Box& a, const Box& b);
double intersection_area(const Box& a, const Box& b);
double iou(const Box& a, const Box& b);

// Single-pair predicate used by the existential scan below.
bool relation_holds(Relation rel, const Box& a, const Box& b, const VmConfig& cfg);

// True iff some (a, b) pair satisfies the relation; the first witness in
// scan order is recorded (inputs arrive sorted by score, so this is
// deterministic).
RelationResult eval_relation(Relation rel, const std::vector<Box>& a, const std::vector<Box>& b,
                             const VmConfig& cfg);

// Normalized literal is a substring of any normalized read string.
bool match_text(const std::vector<std::string>& read, const std::string& literal);

}  // namespace vismc

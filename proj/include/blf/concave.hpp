#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "blf/openbook.hpp"

namespace blf {

// Bookkeeping record for the concave piece: a singularity census plus the
// boundary open book.  No embedded geometry is tracked; the final assembly
// consumes only the counts and the boundary data.
struct ConcaveFibration {
    std::int64_t north_fiber_genus = 0;
    std::int64_t fold_circles = 0;
    std::int64_t lefschetz = 0;
    std::int64_t achiral = 0;
    std::int64_t base_points = 0;
    // Operation tally; folds = round_handles + stabs_positive + stabs_negative
    // + 2*stabs_no_achiral, so downstream consumers can weigh each source by
    // its own measured model instead of a single per-fold constant.
    std::int64_t round_handles = 0;
    std::int64_t stabs_positive = 0;
    std::int64_t stabs_negative = 0;
    std::int64_t stabs_no_achiral = 0;
    OpenBook boundary;
    std::vector<std::string> notes;
};

// Counters nonnegative, boundary page valid.
void validate_concave(const ConcaveFibration& c);

// Genus-g pencil with n > 0 base points: no singularities at all; the
// boundary open book has a genus-g page with n boundary circles and one left
// twist along each boundary-parallel circle.
ConcaveFibration concave_pencil_bundle(std::int64_t genus, std::int64_t base_points);

// Surface bundle capped with one round handle: one fold circle.  The page
// script is recorded literally: handle gain (genus +1), puncture, arc cut.
ConcaveFibration concave_product_blf(std::int64_t genus);

// One more fold circle.  The page gains a handle (genus +1, h1 +2) and the
// word gains |framing| twists along the new belt curve, right for k > 0.
ConcaveFibration attach_round_handle(const ConcaveFibration& c, std::int64_t framing);

enum class ConcaveStabilization { Positive, Negative, NegativeNoAchiral };

// positive: folds +1, lefschetz +1, one right Hopf band on the boundary.
// negative: folds +1, achiral +1, one left Hopf band.
// negative_no_achiral: folds +2, lefschetz +1, one right and two left bands.
ConcaveFibration stabilize_concave(const ConcaveFibration& c, ConcaveStabilization kind);

// Census header, the boundary open book, then one line per note.
std::string serialize_concave(const ConcaveFibration& c);

}  // namespace blf

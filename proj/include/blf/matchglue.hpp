#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blf/alfforge.hpp"
#include "blf/concave.hpp"
#include "blf/kirby.hpp"
#include "blf/rational.hpp"

namespace blf {

// Rotation number per framed handle; errors when the diagram never carried one.
VecZ chern_chain(const AlmostSteinHandlebody& h);

// (c1^2 - 3*sigma - 2*chi)/4 + q, with c1^2 solved exactly on the framed
// block; empty when the system is unsolvable (c1 not torsion).
std::optional<Rational> d3_invariant(const AlmostSteinHandlebody& h);

// Every torsion coefficient of the boundary homology is odd.
bool check_no_two_torsion(const HandleDecomposition& h);

struct SideInvariants {
    VecZ chern;
    bool d3_defined = false;
    Rational d3;
};

SideInvariants side_invariants(const AlmostSteinHandlebody& h);

// d3 shifts measured on handle-level models, never hard-coded: one negative
// stabilization, the round-handle pair, and each concave stabilization kind.
Rational negative_stab_d3_delta();
Rational round_handle_d3_delta();
Rational concave_stab_d3_delta(ConcaveStabilization kind);

// The concave structure transported to the common boundary: rotation-free
// curves give a zero chern vector; d3 is the convex reference shifted by the
// measured content of the concave operation tally.
SideInvariants concave_match_side(const ConcaveFibration& c, const SideInvariants& convex);

struct FingerPairStep {
    Index component = -1;  // chern coefficient index on the convex side
    int direction = 0;     // +-1; one pair shifts the coefficient by 2*direction
};

struct MatchPlan {
    std::vector<FingerPairStep> finger_pairs;
    std::int64_t convex_neg_stabs = 0;
    std::vector<ConcaveStabilization> concave_stabs;
    bool final_overtwist = true;
    SideInvariants predicted_convex;
    SideInvariants predicted_concave;
};

// Pure arithmetic on the two sides.  Throws PlanError on 2-torsion, an
// undefined d3, an odd coefficient, mismatched chain lengths, or a
// non-integer d3 gap.
MatchPlan match_plan(const SideInvariants& convex, const SideInvariants& concave, bool torsion_ok);

// The plan replayed step by step: finger pairs and negative stabilizations on
// the convex handlebody, stabilizations plus the final boundary overtwist on
// the concave record.  d3 is re-measured after every step; the returned plan
// carries the executed counts when measured drift forced a re-plan.
struct MatchOutcome {
    AlmostSteinHandlebody convex;
    ConcaveFibration concave;
    MatchPlan plan;
    SideInvariants convex_final;
    SideInvariants concave_final;
    std::vector<std::string> steps;
};

MatchOutcome execute_match(const AlmostSteinHandlebody& convex, const ConcaveFibration& concave);

// Same replay against an explicitly given concave-side pair (the derived
// transport is skipped); used when the invariants arrive from outside.
MatchOutcome execute_match(const AlmostSteinHandlebody& convex, const ConcaveFibration& concave,
                           const SideInvariants& concave_target);

// Left letters in carving normal form flip to right twists over their carved
// sections; classes, framings, and the underlying handle data are untouched.
ALFRecord palfify(const ALFRecord& a);

// The matched concave record adopts the convex boundary open book verbatim.
ConcaveFibration adopt_boundary(const ConcaveFibration& c, const OpenBook& b);

struct BLFRecord {
    ALFRecord convex;
    ConcaveFibration concave;
    bool glue_ok = false;
    std::int64_t folds = 0;
    std::int64_t lefschetz = 0;
    std::int64_t base_points = 0;
};

// Census assembly; requires a repaired convex side and matching boundaries.
BLFRecord assemble_blf(const ALFRecord& convex, const ConcaveFibration& concave);

}  // namespace blf

#include "blf/matchglue.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>
#include <string>

#include "blf/errors.hpp"

namespace blf {
namespace {

AlmostSteinHandlebody ball_handlebody() {
    return normalize_almost_stein(build_handles(parse_diagram_text("")));
}

Rational measured_d3(const AlmostSteinHandlebody& h) {
    const std::optional<Rational> d = d3_invariant(h);
    if (!d) throw std::logic_error("model handlebody without a defined d3");
    return *d;
}

// Chern vectors padded with zeros to a common length: synthetic handles
// (stabilization and finger companions) always carry rotation zero.
bool chern_matched(const VecZ& a, const VecZ& b) {
    const Index n = std::max(a.size(), b.size());
    for (Index i = 0; i < n; ++i) {
        const std::int64_t av = i < a.size() ? a(i) : 0;
        const std::int64_t bv = i < b.size() ? b(i) : 0;
        if (av != bv) return false;
    }
    return true;
}

bool torsion_all_odd(const HomologyData& h) {
    for (std::int64_t t : h.torsion)
        if (t % 2 == 0) return false;
    return true;
}

}  // namespace

VecZ chern_chain(const AlmostSteinHandlebody& h) {
    VecZ k(static_cast<Index>(h.handles.size()));
    for (Index i = 0; i < k.size(); ++i) {
        if (!h.handles[i].rot_known)
            throw PreconditionError("rotation number missing for handle '" +
                                    h.handles[i].name + "'");
        k(i) = h.handles[i].rot;
    }
    return k;
}

std::optional<Rational> d3_invariant(const AlmostSteinHandlebody& h) {
    const InvariantRecord r = compute_invariants(h);
    if (!r.d3_defined) return std::nullopt;
    return r.d3;
}

bool check_no_two_torsion(const HandleDecomposition& h) {
    return torsion_all_odd(boundary_homology(h));
}

SideInvariants side_invariants(const AlmostSteinHandlebody& h) {
    SideInvariants s;
    s.chern = chern_chain(h);
    const std::optional<Rational> d = d3_invariant(h);
    s.d3_defined = d.has_value();
    if (d) s.d3 = *d;
    return s;
}

Rational negative_stab_d3_delta() {
    const AlmostSteinHandlebody base = ball_handlebody();
    return measured_d3(add_stabilization_pair(base, false)) - measured_d3(base);
}

Rational round_handle_d3_delta() {
    // One 1-handle with a 0-framed 2-handle over it twice, net zero: the
    // handle picture of a single round handle.
    static const char* model =
        "component d dotted\n"
        "corners: (2,0) (3,0) (3,5) (2,5)\n"
        "component k framing=0 rot=0\n"
        "corners: (0,1) (5,1) (5,2) (0,2)\n";
    const AlmostSteinHandlebody m =
        normalize_almost_stein(build_handles(parse_diagram_text(model)));
    return measured_d3(m) - measured_d3(ball_handlebody());
}

Rational concave_stab_d3_delta(ConcaveStabilization kind) {
    AlmostSteinHandlebody m = ball_handlebody();
    const Rational base = measured_d3(m);
    switch (kind) {
        case ConcaveStabilization::Positive:
            m = add_stabilization_pair(m, true);
            break;
        case ConcaveStabilization::Negative:
            m = add_stabilization_pair(m, false);
            break;
        case ConcaveStabilization::NegativeNoAchiral:
            m = add_stabilization_pair(m, true);
            m = add_stabilization_pair(m, false);
            m = add_stabilization_pair(m, false);
            break;
    }
    return measured_d3(m) - base;
}

SideInvariants concave_match_side(const ConcaveFibration& c, const SideInvariants& convex) {
    if (!convex.d3_defined)
        throw PlanError("convex d3 undefined; no reference to transport");
    // Base points carry no shift: the one-point pencil over the ball bounds
    // the standard structure on the same boundary.
    SideInvariants s;
    s.chern = VecZ::Zero(convex.chern.size());
    s.d3_defined = true;
    s.d3 = convex.d3 + Rational(c.round_handles) * round_handle_d3_delta() +
           Rational(c.stabs_positive) * concave_stab_d3_delta(ConcaveStabilization::Positive) +
           Rational(c.stabs_negative) * concave_stab_d3_delta(ConcaveStabilization::Negative) +
           Rational(c.stabs_no_achiral) *
               concave_stab_d3_delta(ConcaveStabilization::NegativeNoAchiral);
    return s;
}

MatchPlan match_plan(const SideInvariants& convex, const SideInvariants& concave,
                     bool torsion_ok) {
    if (!torsion_ok) throw PlanError("2-torsion present in the boundary homology");
    if (!convex.d3_defined || !concave.d3_defined)
        throw PlanError("d3 undefined on one side");
    if (convex.chern.size() != concave.chern.size())
        throw PlanError("chern chains have different lengths");
    for (Index i = 0; i < convex.chern.size(); ++i)
        if (convex.chern(i) % 2 != 0 || concave.chern(i) % 2 != 0)
            throw PlanError("odd chern coefficient at position " + std::to_string(i));

    MatchPlan plan;
    for (Index i = 0; i < convex.chern.size(); ++i) {
        const std::int64_t delta = concave.chern(i) - convex.chern(i);
        const int dir = delta > 0 ? 1 : -1;
        for (std::int64_t n = 0; n < std::llabs(delta) / 2; ++n)
            plan.finger_pairs.push_back({i, dir});
    }

    // Finger pairs are planned d3-neutral; the replay re-measures them.
    const Rational gap = concave.d3 - convex.d3;
    if (!gap.is_integer())
        throw PlanError("d3 gap " + gap.str() + " is not an integer after c1 matching");
    if (gap.sign() > 0)
        plan.convex_neg_stabs = gap.integer();
    else
        plan.concave_stabs.assign(static_cast<std::size_t>(-gap.integer()),
                                  ConcaveStabilization::Negative);

    plan.final_overtwist = true;
    plan.predicted_convex.chern = concave.chern;
    plan.predicted_convex.d3_defined = true;
    plan.predicted_convex.d3 = (gap.sign() > 0 ? concave.d3 : convex.d3) + Rational(1);
    plan.predicted_concave = plan.predicted_convex;
    return plan;
}

MatchOutcome execute_match(const AlmostSteinHandlebody& convex, const ConcaveFibration& concave) {
    return execute_match(convex, concave, concave_match_side(concave, side_invariants(convex)));
}

MatchOutcome execute_match(const AlmostSteinHandlebody& convex, const ConcaveFibration& concave,
                           const SideInvariants& concave_target) {
    MatchOutcome out;
    out.convex = convex;
    out.concave = concave;

    const SideInvariants conv0 = side_invariants(out.convex);
    const SideInvariants& conc = concave_target;
    const bool torsion_ok = torsion_all_odd(compute_invariants(out.convex).h1_boundary);
    out.plan = match_plan(conv0, conc, torsion_ok);

    MatchPlan executed;
    const auto note = [&out](std::string s) { out.steps.push_back(std::move(s)); };

    for (const FingerPairStep& f : out.plan.finger_pairs) {
        out.convex = finger_move(out.convex, f.component, f.direction);
        out.convex = finger_move(out.convex, f.component, f.direction);
        executed.finger_pairs.push_back(f);
        const SideInvariants cur = side_invariants(out.convex);
        if (!cur.d3_defined)
            throw PlanError("d3 became undefined during finger moves");
        note("finger pair on component " + std::to_string(f.component) + " direction " +
             std::to_string(f.direction) + ": k" + std::to_string(f.component) + " -> " +
             std::to_string(cur.chern(f.component)) + ", d3 -> " + cur.d3.str());
    }

    SideInvariants cur = side_invariants(out.convex);
    if (!chern_matched(cur.chern, conc.chern))
        throw PlanError("chern chains differ after the planned finger pairs");
    if (!cur.d3_defined) throw PlanError("convex d3 undefined after finger pairs");

    Rational concave_d3 = conc.d3;
    Rational gap = concave_d3 - cur.d3;
    if (gap != conc.d3 - conv0.d3)
        note("re-planned: measured d3 gap " + gap.str() + " after finger pairs (predicted " +
             (conc.d3 - conv0.d3).str() + ")");
    if (!gap.is_integer())
        throw PlanError("d3 gap " + gap.str() + " is not an integer after c1 matching");

    int guard = 0;
    while (gap.sign() > 0) {
        out.convex = add_stabilization_pair(out.convex, false);
        executed.convex_neg_stabs += 1;
        cur = side_invariants(out.convex);
        gap = concave_d3 - cur.d3;
        note("negative stabilization on the convex side: d3 -> " + cur.d3.str());
        if (++guard > 512) throw std::logic_error("d3 gap failed to close");
    }
    while (gap.sign() < 0) {
        out.concave = stabilize_concave(out.concave, ConcaveStabilization::Negative);
        concave_d3 += concave_stab_d3_delta(ConcaveStabilization::Negative);
        executed.concave_stabs.push_back(ConcaveStabilization::Negative);
        gap = concave_d3 - cur.d3;
        note("negative stabilization on the concave side: d3 -> " + concave_d3.str());
        if (++guard > 512) throw std::logic_error("d3 gap failed to close");
    }
    if (gap.sign() != 0) throw PlanError("residual d3 gap " + gap.str());

    // Overtwist both boundaries: a handle-level negative stabilization on the
    // convex side, a boundary-level left Hopf band on the concave record (its
    // singularity census is already final).
    executed.final_overtwist = true;
    out.convex = add_stabilization_pair(out.convex, false);
    out.concave.boundary = plumb_hopf_band(out.concave.boundary, false, 0);
    out.concave.notes.push_back("boundary overtwisted by a left Hopf band");
    concave_d3 += negative_stab_d3_delta();
    cur = side_invariants(out.convex);
    note("final overtwist on both sides: d3 -> " + cur.d3.str());

    out.convex_final = cur;
    out.concave_final.chern = VecZ::Zero(cur.chern.size());
    out.concave_final.chern.head(conc.chern.size()) = conc.chern;
    out.concave_final.d3_defined = true;
    out.concave_final.d3 = concave_d3;
    if (!chern_matched(out.convex_final.chern, out.concave_final.chern) ||
        cur.d3 != concave_d3)
        throw PlanError("replay did not land both sides on equal invariants");

    executed.predicted_convex = out.convex_final;
    executed.predicted_concave = out.concave_final;
    out.plan = executed;
    return out;
}

ALFRecord palfify(const ALFRecord& a) {
    ALFRecord out = a;
    for (TwistLetter& l : out.vanishing_cycles.letters) {
        if (l.chirality != Chirality::Left) continue;
        const bool normal =
            l.curve.kind == CurveKind::LinkComponent &&
            std::find(out.normal_form_handles.begin(), out.normal_form_handles.end(),
                      l.curve.id) != out.normal_form_handles.end();
        if (!normal)
            throw PreconditionError("left letter '" + l.curve.id +
                                    "' is not in carving normal form");
        l.chirality = Chirality::Right;
        out.notes.push_back("left twist along '" + l.curve.id +
                            "' traded for a right twist over its section");
    }
    out.achiral_count = 0;
    out.boundary.page = out.fiber;
    out.boundary.monodromy = out.vanishing_cycles;
    return out;
}

ConcaveFibration adopt_boundary(const ConcaveFibration& c, const OpenBook& b) {
    ConcaveFibration out = c;
    out.boundary = b;
    out.notes.push_back("boundary identified with the convex open book");
    return out;
}

BLFRecord assemble_blf(const ALFRecord& convex, const ConcaveFibration& concave) {
    if (convex.achiral_count != 0)
        throw PreconditionError("achiral letters remain on the convex side");
    for (const TwistLetter& l : convex.vanishing_cycles.letters)
        if (l.chirality == Chirality::Left)
            throw PreconditionError("achiral letters remain on the convex side");
    if (!homology_equivalent(convex.boundary, concave.boundary))
        throw PreconditionError("boundary open books do not match");

    BLFRecord r;
    r.convex = convex;
    r.concave = concave;
    r.glue_ok = true;
    r.folds = concave.fold_circles;
    r.lefschetz =
        static_cast<std::int64_t>(convex.vanishing_cycles.letters.size()) + concave.lefschetz;
    r.base_points = concave.base_points;
    return r;
}

}  // namespace blf

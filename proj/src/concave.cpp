#include "blf/concave.hpp"

#include <sstream>
#include <string>

#include "blf/errors.hpp"

namespace blf {
namespace {

// Interleaved symplectic basis a1 b1 a2 b2 ... with <a_i, b_i> = 1, followed
// by any radical classes appended later.
void append_symplectic_pair(Page& p, std::int64_t pair_index) {
    const Index n = p.h1_rank();
    MatZ form = MatZ::Zero(n + 2, n + 2);
    form.topLeftCorner(n, n) = p.intersection_form;
    form(n, n + 1) = 1;
    form(n + 1, n) = -1;
    p.intersection_form = std::move(form);
    p.basis_ids.push_back("a" + std::to_string(pair_index));
    p.basis_ids.push_back("b" + std::to_string(pair_index));
}

void grow_letters(TwistWord& w, Index rank) {
    for (TwistLetter& l : w.letters) {
        VecZ v = VecZ::Zero(rank);
        v.head(l.curve.homology.size()) = l.curve.homology;
        l.curve.homology = std::move(v);
    }
}

}  // namespace

void validate_concave(const ConcaveFibration& c) {
    if (c.north_fiber_genus < 0 || c.fold_circles < 0 || c.lefschetz < 0 ||
        c.achiral < 0 || c.base_points < 0)
        throw PreconditionError("negative singularity counter");
    if (c.fold_circles != c.round_handles + c.stabs_positive + c.stabs_negative +
                              2 * c.stabs_no_achiral)
        throw PreconditionError("fold count does not match its sources");
    validate_page(c.boundary.page);
}

ConcaveFibration concave_pencil_bundle(std::int64_t genus, std::int64_t base_points) {
    if (genus < 0) throw PreconditionError("pencil fiber genus must be nonnegative");
    if (base_points <= 0)
        throw PreconditionError("a pencil needs at least one base point");

    ConcaveFibration c;
    c.north_fiber_genus = genus;
    c.base_points = base_points;

    Page p;
    p.genus = genus;
    p.boundary_count = base_points;
    const Index rank = 2 * genus + base_points - 1;
    p.intersection_form = MatZ::Zero(rank, rank);
    for (std::int64_t i = 0; i < genus; ++i) {
        p.intersection_form(2 * i, 2 * i + 1) = 1;
        p.intersection_form(2 * i + 1, 2 * i) = -1;
        p.basis_ids.push_back("a" + std::to_string(i + 1));
        p.basis_ids.push_back("b" + std::to_string(i + 1));
    }
    for (std::int64_t j = 1; j < base_points; ++j)
        p.basis_ids.push_back("d" + std::to_string(j));
    validate_page(p);
    c.boundary.page = std::move(p);

    // One left twist along each boundary circle; the classes sum to zero.
    for (std::int64_t j = 0; j < base_points; ++j) {
        Curve cv;
        cv.id = "bd" + std::to_string(j);
        cv.kind = CurveKind::BoundaryParallel;
        cv.homology = VecZ::Zero(rank);
        if (j == 0) {
            for (std::int64_t k = 1; k < base_points; ++k)
                cv.homology(2 * genus + k - 1) = -1;
        } else {
            cv.homology(2 * genus + j - 1) = 1;
        }
        cv.framing_offset = 0;
        c.boundary.monodromy.letters.push_back({std::move(cv), Chirality::Left});
    }
    c.notes.push_back("pencil: " + std::to_string(base_points) +
                      " base points, all singularities pushed to the convex side");
    return c;
}

ConcaveFibration concave_product_blf(std::int64_t genus) {
    if (genus < 0) throw PreconditionError("fiber genus must be nonnegative");

    ConcaveFibration c;
    c.north_fiber_genus = genus;
    c.fold_circles = 1;
    c.round_handles = 1;

    Page p;
    p.genus = genus;
    p.boundary_count = 1;
    const Index rank = 2 * genus;
    p.intersection_form = MatZ::Zero(rank, rank);
    for (std::int64_t i = 0; i < genus; ++i) {
        p.intersection_form(2 * i, 2 * i + 1) = 1;
        p.intersection_form(2 * i + 1, 2 * i) = -1;
        p.basis_ids.push_back("a" + std::to_string(i + 1));
        p.basis_ids.push_back("b" + std::to_string(i + 1));
    }

    // The round-handle script, step by step on the section-punctured fiber.
    append_symplectic_pair(p, genus + 1);
    c.notes.push_back("round handle: page genus " + std::to_string(genus) + " -> " +
                      std::to_string(genus + 1));
    p.genus = genus + 1;

    p.boundary_count += 1;
    {
        const Index n = p.h1_rank();
        MatZ form = MatZ::Zero(n + 1, n + 1);
        form.topLeftCorner(n, n) = p.intersection_form;
        p.intersection_form = std::move(form);
        p.basis_ids.push_back("d1");
    }
    c.notes.push_back("puncture: second boundary circle for the sphere factor");

    p.boundary_count -= 1;
    {
        const Index n = p.h1_rank();
        p.intersection_form.conservativeResize(n - 1, n - 1);
        p.basis_ids.pop_back();
    }
    c.notes.push_back("arc cut: boundary circles merged, pages lose a 1-handle");

    validate_page(p);
    c.boundary.page = std::move(p);
    return c;
}

ConcaveFibration attach_round_handle(const ConcaveFibration& c, std::int64_t framing) {
    validate_concave(c);
    ConcaveFibration out = c;
    out.fold_circles += 1;
    out.round_handles += 1;

    Page& p = out.boundary.page;
    p.genus += 1;
    append_symplectic_pair(p, p.genus);
    validate_page(p);
    grow_letters(out.boundary.monodromy, p.h1_rank());

    // Belt curve of the new handle: the second element of the appended pair.
    Curve belt;
    belt.id = "rh" + std::to_string(out.fold_circles);
    belt.kind = CurveKind::BoundaryParallel;
    belt.homology = VecZ::Zero(p.h1_rank());
    belt.homology(p.h1_rank() - 1) = 1;
    const Chirality side = framing > 0 ? Chirality::Right : Chirality::Left;
    for (std::int64_t i = 0; i < (framing < 0 ? -framing : framing); ++i)
        out.boundary.monodromy.letters.push_back({belt, side});

    out.notes.push_back("round handle attached with framing " + std::to_string(framing));
    return out;
}

ConcaveFibration stabilize_concave(const ConcaveFibration& c, ConcaveStabilization kind) {
    validate_concave(c);
    ConcaveFibration out = c;
    switch (kind) {
        case ConcaveStabilization::Positive:
            out.fold_circles += 1;
            out.lefschetz += 1;
            out.stabs_positive += 1;
            out.boundary = plumb_hopf_band(out.boundary, true, 0);
            out.notes.push_back("positive stabilization");
            break;
        case ConcaveStabilization::Negative:
            out.fold_circles += 1;
            out.achiral += 1;
            out.stabs_negative += 1;
            out.boundary = plumb_hopf_band(out.boundary, false, 0);
            out.notes.push_back("negative stabilization");
            break;
        case ConcaveStabilization::NegativeNoAchiral:
            out.fold_circles += 2;
            out.lefschetz += 1;
            out.stabs_no_achiral += 1;
            out.boundary = plumb_hopf_band(out.boundary, true, 0);
            out.boundary = plumb_hopf_band(out.boundary, false, 0);
            out.boundary = plumb_hopf_band(out.boundary, false, 0);
            out.notes.push_back("negative stabilization traded for two folds");
            break;
    }
    return out;
}

std::string serialize_concave(const ConcaveFibration& c) {
    std::ostringstream os;
    os << "concave genus=" << c.north_fiber_genus << " folds=" << c.fold_circles
       << " lefschetz=" << c.lefschetz << " achiral=" << c.achiral
       << " base_points=" << c.base_points << "\n";
    os << serialize_open_book(c.boundary);
    for (const std::string& n : c.notes) os << "note " << n << "\n";
    return os.str();
}

}  // namespace blf

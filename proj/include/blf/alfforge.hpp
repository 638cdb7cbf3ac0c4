#pragma once

#include <string>
#include <utility>
#include <vector>

#include "blf/kirby.hpp"
#include "blf/openbook.hpp"

namespace blf {

// Fiber surface of the torus-link fibration over a p x q grid: p horizontal
// and q vertical plates with a band at every incidence.  H1 is spanned by the
// loops around the (p-1)(q-1) interior holes, listed row-major.
struct LyonSurface {
    Index p = 0, q = 0;
    std::vector<std::pair<Index, Index>> bands;  // (row, col) incidences
    Page page;
    GridDiagram diagram;  // compacted diagram the surface was grown around

    Index hole_rows() const { return p - 1; }
    Index hole_cols() const { return q - 1; }
    Index hole_index(Index i, Index j) const { return i * (q - 1) + j; }
};

std::string hole_id(Index i, Index j);

LyonSurface lyon_surface(Index p, Index q);
LyonSurface lyon_surface(const GridDiagram& g);

// Link components re-read as page curves: homology by winding numbers around
// the interior holes, page framing offset by Thurston-Bennequin.  Dotted
// components are sections; `section_hole` names the hole their disk is
// scooped out of (-1 for framed components).
struct Embedding {
    std::vector<Curve> curves;
    std::vector<Index> section_hole;
};
Embedding embed_on_page(const LyonSurface& s, const GridDiagram& g);

struct ALFRecord {
    Page fiber;
    TwistWord vanishing_cycles;
    std::int64_t achiral_count = 0;
    std::vector<std::string> carved_sections;  // "<hole id>:<dotted name>"
    OpenBook boundary;                         // page = fiber, word = cycles
    VecZ rotations;                            // per framed handle
    std::vector<std::string> scooped_ids;      // basis ids of scooped hole loops
    std::vector<std::string> normal_form_handles;  // pass a dotted circle twice, net zero
    std::vector<std::string> destabilized;     // minimization audit trail
    std::vector<std::string> notes;
    LyonSurface surface;
};

// The fibration of the four-ball by the (p,q) torus-link fiber: one right
// twist per interior hole loop.
ALFRecord torus_ball_palf(Index p, Index q);

// Achiral Lefschetz fibration of a normalized handlebody: hole-loop twists
// for the unscooped holes, then one letter per 2-handle (right when good,
// left when defective; carved handles ride the zero class).
ALFRecord build_alf(const AlmostSteinHandlebody& h);

// Deplumbs hole-loop bands that are disjoint from every link curve (zero
// pairing, no shared band, no winding) and not scooped.  Repeats to a fixed
// point and records the order.
ALFRecord minimize_alf(const ALFRecord& a);

// Fiber-level finger move on a link component's letter: plumbs one
// stabilization band (right for positive, left for negative), shifts the
// component's rotation, and drops its page framing by one.  Positive moves
// must name a corner of the component in the stored diagram.
ALFRecord finger_move(const ALFRecord& a, const std::string& component, Index segment, int sign);

}  // namespace blf

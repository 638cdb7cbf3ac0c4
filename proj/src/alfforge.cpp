#include "blf/alfforge.hpp"

#include <numeric>
#include <stdexcept>

#include "blf/errors.hpp"

namespace blf {
namespace {

// Loops around holes sharing a band pair once; the anti-diagonal neighbors
// meet once on the shared plate, the main diagonal not at all.
MatZ hole_form(Index p, Index q) {
    const Index rows = p - 1, cols = q - 1;
    const Index n = rows * cols;
    MatZ j = MatZ::Zero(n, n);
    auto at = [cols](Index r, Index c) { return r * cols + c; };
    auto set = [&j](Index a, Index b, std::int64_t v) {
        j(a, b) = v;
        j(b, a) = -v;
    };
    for (Index r = 0; r < rows; ++r)
        for (Index c = 0; c < cols; ++c) {
            if (c + 1 < cols) set(at(r, c), at(r, c + 1), 1);
            if (r + 1 < rows) set(at(r, c), at(r + 1, c), 1);
            if (r + 1 < rows && c + 1 < cols) set(at(r + 1, c), at(r, c + 1), 1);
        }
    return j;
}

VecZ winding_vector(const LyonSurface& s, const GridComponent& comp, Index total_rank) {
    VecZ w = VecZ::Zero(total_rank);
    const auto& pts = comp.corners;
    const Index n = static_cast<Index>(pts.size());
    for (Index i = 0; i < s.hole_rows(); ++i)
        for (Index j = 0; j < s.hole_cols(); ++j) {
            std::int64_t wind = 0;
            for (Index k = 0; k < n; ++k) {
                const GridPoint& a = pts[k];
                const GridPoint& b = pts[(k + 1) % n];
                if (a.x != b.x || a.x < j + 1) continue;  // only segments right of the center
                const std::int64_t lo = std::min(a.y, b.y), hi = std::max(a.y, b.y);
                if (lo <= i && i < hi) wind += b.y > a.y ? 1 : -1;
            }
            w(s.hole_index(i, j)) = wind;
        }
    return w;
}

bool parse_hole_id(const std::string& id, Index& i, Index& j) {
    if (id.size() < 4 || id[0] != 'h') return false;
    const auto sep = id.find('_');
    if (sep == std::string::npos) return false;
    try {
        i = std::stoll(id.substr(1, sep - 1));
        j = std::stoll(id.substr(sep + 1));
    } catch (const std::exception&) {
        return false;
    }
    return true;
}

bool touches_hole(const GridComponent& comp, Index i, Index j) {
    for (const GridPoint& pt : comp.corners)
        if (pt.y >= i && pt.y <= i + 1 && pt.x >= j && pt.x <= j + 1) return true;
    return false;
}

void resync_boundary(ALFRecord& a) {
    a.boundary.page = a.fiber;
    a.boundary.monodromy = a.vanishing_cycles;
}

}  // namespace

std::string hole_id(Index i, Index j) {
    return "h" + std::to_string(i) + "_" + std::to_string(j);
}

LyonSurface lyon_surface(Index p, Index q) {
    if (p < 2 || q < 2) throw PreconditionError("fiber grid needs at least two plates each way");
    LyonSurface s;
    s.p = p;
    s.q = q;
    for (Index i = 0; i < p; ++i)
        for (Index j = 0; j < q; ++j) s.bands.emplace_back(i, j);

    const std::int64_t chi = p + q - p * q;
    const std::int64_t b = std::gcd(p, q);
    s.page.genus = (2 - b - chi) / 2;
    s.page.boundary_count = b;
    s.page.intersection_form = hole_form(p, q);
    for (Index i = 0; i + 1 < p; ++i)
        for (Index j = 0; j + 1 < q; ++j) s.page.basis_ids.push_back(hole_id(i, j));
    validate_page(s.page);
    return s;
}

LyonSurface lyon_surface(const GridDiagram& g) {
    const GridDiagram flat = compact_diagram(g);
    std::int64_t mx = -1, my = -1;
    for (const GridComponent& c : flat.components)
        for (const GridPoint& pt : c.corners) {
            mx = std::max(mx, pt.x);
            my = std::max(my, pt.y);
        }
    LyonSurface s = lyon_surface(my + 1, mx + 1);
    s.diagram = flat;
    return s;
}

Embedding embed_on_page(const LyonSurface& s, const GridDiagram& g) {
    Embedding out;
    std::vector<bool> taken(s.hole_rows() * s.hole_cols(), false);
    for (Index ci = 0; ci < static_cast<Index>(g.components.size()); ++ci) {
        const GridComponent& comp = g.components[ci];
        for (const GridPoint& pt : comp.corners)
            if (pt.x < 0 || pt.y < 0 || pt.x >= s.q || pt.y >= s.p)
                throw PreconditionError("component '" + comp.name + "' leaves the fiber grid");
        Curve c;
        c.id = comp.name;
        c.kind = CurveKind::LinkComponent;
        c.homology = winding_vector(s, comp, s.page.h1_rank());
        Index hole = -1;
        if (comp.dotted) {
            std::int64_t x0 = comp.corners[0].x, y0 = comp.corners[0].y;
            for (const GridPoint& pt : comp.corners) {
                x0 = std::min(x0, pt.x);
                y0 = std::min(y0, pt.y);
            }
            hole = s.hole_index(y0, x0);
            if (taken[hole])
                throw PreconditionError("two sections scoop the hole " + hole_id(y0, x0));
            taken[hole] = true;
        } else {
            c.framing_offset = thurston_bennequin(g, ci);
        }
        out.curves.push_back(std::move(c));
        out.section_hole.push_back(hole);
    }
    return out;
}

ALFRecord torus_ball_palf(Index p, Index q) {
    ALFRecord a;
    a.surface = lyon_surface(p, q);
    a.fiber = a.surface.page;
    const Index n = a.fiber.h1_rank();
    for (Index k = 0; k < n; ++k) {
        Curve c;
        c.id = a.fiber.basis_ids[k];
        c.kind = CurveKind::HoleLoop;
        c.homology = VecZ::Unit(n, k);
        c.framing_offset = -1;
        a.vanishing_cycles.letters.push_back({std::move(c), Chirality::Right});
    }
    a.notes.push_back("binding: torus link of the full plate grid");
    a.notes.push_back("boundary open book supports the standard contact structure");
    resync_boundary(a);
    return a;
}

ALFRecord build_alf(const AlmostSteinHandlebody& h) {
    if (h.handles.empty() && h.dotteds.empty()) {
        ALFRecord a = torus_ball_palf(2, 2);
        a.notes.push_back("empty handlebody: four-ball fibration");
        return a;
    }
    for (const FramedHandleState& st : h.handles) {
        const std::int64_t rel = st.framing - st.tb_eff;
        if (rel != 1 && rel != -1)
            throw PreconditionError("handle '" + st.name + "' is not normalized");
    }

    ALFRecord a;
    a.surface = lyon_surface(h.diagram);
    const Index holes = a.surface.page.h1_rank();
    const Index rank = holes + static_cast<Index>(h.dotteds.size());

    a.fiber = a.surface.page;
    Embedding emb = embed_on_page(a.surface, a.surface.diagram);

    // scoop one hole per section; each puncture class is a fresh radical vector
    std::vector<bool> scooped(holes, false);
    MatZ j = MatZ::Zero(rank, rank);
    j.topLeftCorner(holes, holes) = a.fiber.intersection_form;
    a.fiber.intersection_form = std::move(j);
    for (const DottedState& ds : h.dotteds) {
        const Index hole = emb.section_hole[ds.comp];
        scooped[hole] = true;
        a.scooped_ids.push_back(a.surface.page.basis_ids[hole]);
        a.fiber.holes.push_back(ds.name);
        a.fiber.basis_ids.push_back("pi_" + ds.name);
        if (ds.carve_circle)
            a.carved_sections.push_back(a.surface.page.basis_ids[hole] + ":" + ds.name);
    }
    validate_page(a.fiber);

    for (Index k = 0; k < holes; ++k) {
        if (scooped[k]) continue;
        Curve c;
        c.id = a.fiber.basis_ids[k];
        c.kind = CurveKind::HoleLoop;
        c.homology = VecZ::Unit(rank, k);
        c.framing_offset = -1;
        a.vanishing_cycles.letters.push_back({std::move(c), Chirality::Right});
    }

    a.rotations = VecZ::Zero(static_cast<Index>(h.handles.size()));
    for (Index k = 0; k < static_cast<Index>(h.handles.size()); ++k) {
        const FramedHandleState& st = h.handles[k];
        bool normal_form = false;
        if (st.defective)
            for (Index d = 0; d < static_cast<Index>(h.dotteds.size()); ++d)
                if (h.passages_geom(k, d) == 2 && h.passages(k, d) == 0) normal_form = true;
        if (normal_form) a.normal_form_handles.push_back(st.name);
        Curve c;
        c.id = st.name;
        c.kind = CurveKind::LinkComponent;
        c.framing_offset = st.tb_eff;
        if (normal_form) {
            // the isotopy into the section's collar cancels the two passes
            // over the scooped disk in homology
            c.homology = VecZ::Zero(rank);
        } else {
            c.homology = VecZ::Zero(rank);
            c.homology.head(holes) = emb.curves[st.comp].homology.head(holes);
        }
        a.vanishing_cycles.letters.push_back(
            {std::move(c), st.defective ? Chirality::Left : Chirality::Right});
        if (st.defective) ++a.achiral_count;
        a.rotations(k) = st.rot;
    }
    resync_boundary(a);
    return a;
}

ALFRecord minimize_alf(const ALFRecord& a) {
    ALFRecord out = a;
    bool changed = true;
    while (changed) {
        changed = false;
        for (std::size_t li = 0; li < out.vanishing_cycles.letters.size(); ++li) {
            const TwistLetter& l = out.vanishing_cycles.letters[li];
            if (l.curve.kind != CurveKind::HoleLoop || l.chirality != Chirality::Right) continue;
            Index hi = 0, hj = 0;
            if (!parse_hole_id(l.curve.id, hi, hj)) continue;

            Index axis = -1;
            for (Index k = 0; k < static_cast<Index>(out.fiber.basis_ids.size()); ++k)
                if (out.fiber.basis_ids[k] == l.curve.id) axis = k;
            if (axis < 0) throw std::logic_error("hole letter without a basis vector");

            bool blocked = false;
            for (const TwistLetter& other : out.vanishing_cycles.letters) {
                if (other.curve.kind != CurveKind::LinkComponent) continue;
                const VecZ& v = other.curve.homology;
                if ((out.fiber.intersection_form * v)(axis) != 0 || v(axis) != 0) {
                    blocked = true;
                    break;
                }
            }
            if (!blocked)
                for (const GridComponent& comp : out.surface.diagram.components)
                    if (touches_hole(comp, hi, hj)) {
                        blocked = true;
                        break;
                    }
            if (blocked) continue;

            const std::string removed = l.curve.id;
            OpenBook ob{out.fiber, out.vanishing_cycles};
            ob = destabilize(ob, l.curve);
            out.fiber = std::move(ob.page);
            out.vanishing_cycles = std::move(ob.monodromy);
            out.destabilized.push_back(removed);
            changed = true;
            break;  // indices shifted; rescan
        }
    }
    resync_boundary(out);
    return out;
}

ALFRecord finger_move(const ALFRecord& a, const std::string& component, Index segment, int sign) {
    if (sign != 1 && sign != -1) throw PreconditionError("finger move sign must be +1 or -1");
    Index li = -1, ordinal = 0;
    for (Index k = 0; k < static_cast<Index>(a.vanishing_cycles.letters.size()); ++k) {
        const TwistLetter& l = a.vanishing_cycles.letters[k];
        if (l.curve.kind != CurveKind::LinkComponent) continue;
        if (l.curve.id == component) {
            li = k;
            break;
        }
        ++ordinal;
    }
    if (li < 0) throw PreconditionError("unknown link component '" + component + "'");
    if (sign > 0) {
        const Index ci = a.surface.diagram.find(component);
        if (ci < 0)
            throw PreconditionError("component '" + component + "' has no diagram site");
        const auto& corners = a.surface.diagram.components[ci].corners;
        if (segment < 0 || segment >= static_cast<Index>(corners.size()))
            throw PreconditionError("finger move on unknown segment");
    }

    ALFRecord out = a;
    OpenBook grown = plumb_hopf_band({out.fiber, out.vanishing_cycles}, sign > 0, 0);
    const std::string name = "fing" + std::to_string(grown.page.h1_rank() - 1);
    grown.page.basis_ids.back() = name;
    grown.monodromy.letters.back().curve.id = name;
    out.fiber = std::move(grown.page);
    out.vanishing_cycles = std::move(grown.monodromy);

    Curve& moved = out.vanishing_cycles.letters[li].curve;
    moved.framing_offset = *moved.framing_offset - 1;
    out.rotations(ordinal) += sign;
    resync_boundary(out);
    return out;
}

}  // namespace blf

#include "blf/kirby.hpp"

#include <algorithm>
#include <stdexcept>

namespace blf {

namespace {

// Unsigned crossing count between two distinct components; always even, since
// closed curves cross an even number of times in the plane.
std::int64_t geometric_passages(const GridDiagram& g, Index a, Index b) {
    std::int64_t n = 0;
    for (const GridCrossing& c : diagram_crossings(g)) {
        const bool hit = (c.hcomp == a && c.vcomp == b) || (c.hcomp == b && c.vcomp == a);
        if (hit) ++n;
    }
    if (n % 2 != 0) throw std::logic_error("odd crossing count between closed components");
    return n / 2;
}

std::int64_t fresh_offset(const GridDiagram& g) {
    std::int64_t m = -1;
    for (const GridComponent& c : g.components)
        for (const GridPoint& p : c.corners) m = std::max({m, p.x, p.y});
    return m + 1;
}

std::string unique_name(const GridDiagram& g, std::string name) {
    while (g.find(name) != -1) name += "'";
    return name;
}

Index append_rectangle(GridDiagram& g, const std::string& want, bool dotted,
                       std::optional<std::int64_t> framing, std::int64_t off) {
    GridComponent c;
    c.name = unique_name(g, want);
    c.corners = {{off, off}, {off + 1, off}, {off + 1, off + 1}, {off, off + 1}};
    c.dotted = dotted;
    if (framing) c.framing = FramingSpec{false, *framing};
    if (!dotted) c.rot = 0;
    g.components.push_back(std::move(c));
    validate_diagram(g);
    return static_cast<Index>(g.components.size()) - 1;
}

// Dotted rectangle plus a framed one clasped over it exactly once (lk = +1),
// placed past everything already drawn.
std::pair<Index, Index> append_cancelling_pair(GridDiagram& g, const std::string& base,
                                               std::int64_t framing) {
    const std::int64_t off = fresh_offset(g);
    GridComponent d;
    d.name = unique_name(g, base + ".d");
    d.corners = {{off, off}, {off + 2, off}, {off + 2, off + 2}, {off, off + 2}};
    d.dotted = true;
    g.components.push_back(std::move(d));
    const Index di = static_cast<Index>(g.components.size()) - 1;
    GridComponent f;
    f.name = unique_name(g, base + ".f");
    f.corners = {{off + 1, off + 1}, {off + 3, off + 1}, {off + 3, off + 3}, {off + 1, off + 3}};
    f.framing = FramingSpec{false, framing};
    f.rot = 0;
    g.components.push_back(std::move(f));
    const Index fi = static_cast<Index>(g.components.size()) - 1;
    validate_diagram(g);
    return {di, fi};
}

void add_zero_column(MatZ& m) {
    m.conservativeResize(m.rows(), m.cols() + 1);
    m.col(m.cols() - 1).setZero();
}

void add_zero_row(MatZ& m) {
    m.conservativeResize(m.rows() + 1, m.cols());
    m.row(m.rows() - 1).setZero();
}

// --- shared arithmetic on (linking block, passage block) ------------------------

MatZ presentation_from(const MatZ& lk, const MatZ& passages) {
    MatZ p(lk.rows(), lk.cols() + passages.cols());
    p.leftCols(lk.cols()) = lk;
    p.rightCols(passages.cols()) = passages;
    return p;
}

MatZ boundary_relations_from(const MatZ& lk, const MatZ& passages) {
    const Index f = lk.rows(), d = passages.cols();
    MatZ m = MatZ::Zero(f + d, f + d);
    m.topLeftCorner(f, f) = lk;
    m.topRightCorner(f, d) = passages;
    m.bottomLeftCorner(d, f) = passages.transpose();
    return m;
}

// Signature of the linking form restricted to classes with no algebraic
// passage through any 1-handle.
int signature_from(const MatZ& lk, const MatZ& passages) {
    const MatQ pass_map = to_rational(MatZ(passages.transpose()));
    const MatQ k = kernel_basis(pass_map);
    const MatQ b = k.transpose() * to_rational(lk) * k;
    return sylvester_signature(b);
}

HomologyData boundary_from(const MatZ& lk, const MatZ& passages) {
    const MatZ m = boundary_relations_from(lk, passages);
    const CokernelSummary s = cokernel_of_relations(m, m.cols());
    return {s.free_rank, s.torsion};
}

std::int64_t chi_from(Index dotted, Index framed, int h3, int h4) {
    return 1 - static_cast<std::int64_t>(dotted) + static_cast<std::int64_t>(framed) - h3 + h4;
}

MatZ linking_block(const GridDiagram& g, const std::vector<Index>& framed, const VecZ& framing) {
    const Index f = static_cast<Index>(framed.size());
    MatZ lk(f, f);
    for (Index i = 0; i < f; ++i) {
        lk(i, i) = framing(i);
        for (Index j = i + 1; j < f; ++j) {
            const std::int64_t l = linking_number(g, framed[i], framed[j]);
            lk(i, j) = l;
            lk(j, i) = l;
        }
    }
    return lk;
}

}  // namespace

// --- handle decompositions --------------------------------------------------------

HandleDecomposition build_handles(const GridDiagram& g) {
    validate_diagram(g);
    HandleDecomposition h;
    h.diagram = g;
    for (Index i = 0; i < static_cast<Index>(g.components.size()); ++i) {
        const GridComponent& c = g.components[i];
        if (c.dotted) {
            if (c.corners.size() != 4)
                throw PreconditionError("dotted component '" + c.name +
                                        "' is not a 4-corner rectangle");
            if (c.framing)
                throw PreconditionError("dotted component '" + c.name + "' carries a framing");
            h.dotted.push_back(i);
        } else {
            if (!c.framing)
                throw PreconditionError("component '" + c.name +
                                        "' has no framing and is not dotted");
            h.framed.push_back(i);
        }
    }
    h.framing.resize(static_cast<Index>(h.framed.size()));
    for (Index k = 0; k < h.framing.size(); ++k) {
        const FramingSpec spec = *g.components[h.framed[k]].framing;
        h.framing(k) =
            spec.tb_relative ? thurston_bennequin(g, h.framed[k]) + spec.value : spec.value;
    }
    return h;
}

MatZ presentation_matrix(const HandleDecomposition& h) {
    const MatZ lk = linking_block(h.diagram, h.framed, h.framing);
    const Index f = static_cast<Index>(h.framed.size());
    const Index d = static_cast<Index>(h.dotted.size());
    MatZ pass(f, d);
    for (Index i = 0; i < f; ++i)
        for (Index j = 0; j < d; ++j) pass(i, j) = linking_number(h.diagram, h.framed[i], h.dotted[j]);
    return presentation_from(lk, pass);
}

std::int64_t euler_characteristic(const HandleDecomposition& h) {
    return chi_from(static_cast<Index>(h.dotted.size()), static_cast<Index>(h.framed.size()),
                    h.three_handles, h.four_handles);
}

int signature(const HandleDecomposition& h) {
    const MatZ p = presentation_matrix(h);
    const Index f = static_cast<Index>(h.framed.size());
    return signature_from(p.leftCols(f), p.rightCols(p.cols() - f));
}

HomologyData boundary_homology(const HandleDecomposition& h) {
    const MatZ p = presentation_matrix(h);
    const Index f = static_cast<Index>(h.framed.size());
    return boundary_from(p.leftCols(f), p.rightCols(p.cols() - f));
}

// --- almost-Stein form --------------------------------------------------------------

std::int64_t AlmostSteinHandlebody::q() const {
    std::int64_t n = 0;
    for (const FramedHandleState& s : handles) n += s.defective ? 1 : 0;
    return n;
}

Index AlmostSteinHandlebody::handle_named(const std::string& name) const {
    for (Index i = 0; i < static_cast<Index>(handles.size()); ++i)
        if (handles[i].name == name) return i;
    return -1;
}

namespace {

// Recorded slides over a fresh 0-framed cancelling pair until the handle's
// framing sits at tb_eff + 1; the pair's 2-handle joins as a defective handle.
void lower_to_defective(AlmostSteinHandlebody& h, Index k) {
    const std::int64_t slides = h.handles[k].framing - h.handles[k].tb_eff - 1;
    if (slides <= 0) throw std::logic_error("lowering a handle that is not high");
    auto [di, fi] = append_cancelling_pair(h.diagram, h.handles[k].name + ".low", 0);

    h.dotteds.push_back({di, h.diagram.components[di].name, false});
    add_zero_column(h.passages);
    add_zero_column(h.passages_geom);
    const Index dpos = h.passages.cols() - 1;

    FramedHandleState fl;
    fl.comp = fi;
    fl.name = h.diagram.components[fi].name;
    fl.origin = HandleOrigin::LoweringPair;
    fl.framing = 0;
    fl.tb_eff = -1;
    fl.rot = 0;
    fl.defective = true;
    fl.rerouted = true;
    h.handles.push_back(fl);
    add_zero_row(h.passages);
    add_zero_row(h.passages_geom);
    add_zero_column(h.lk);
    add_zero_row(h.lk);
    const Index fpos = h.lk.rows() - 1;
    h.lk(fpos, fpos) = 0;
    h.passages(fpos, dpos) = 1;
    h.passages_geom(fpos, dpos) = 1;

    // each slide runs the handle over the fresh 1-handle once more
    h.passages(k, dpos) = -slides;
    h.passages_geom(k, dpos) = slides;
    h.handles[k].tb_eff += slides;
}

}  // namespace

AlmostSteinHandlebody normalize_almost_stein(const HandleDecomposition& h0) {
    if (h0.three_handles != 0 || h0.four_handles != 0)
        throw PreconditionError("almost-Stein normalization needs a 2-handlebody; "
                                "3- or 4-handles are present");
    AlmostSteinHandlebody out;
    out.diagram = h0.diagram;
    out.three_handles = 0;
    out.four_handles = 0;

    for (Index d : h0.dotted) out.dotteds.push_back({d, out.diagram.components[d].name, false});

    // Raise low framings first: each zigzag drops tb by one (and rot with it,
    // taking the downward flavour), so the relative framing climbs toward tb-1.
    for (Index k = 0; k < static_cast<Index>(h0.framed.size()); ++k) {
        const Index comp = h0.framed[k];
        const std::int64_t fr = h0.framing(k);
        std::int64_t tb = thurston_bennequin(out.diagram, comp);
        std::int64_t rot = out.diagram.components[comp].rot.value_or(0);
        const std::int64_t rel = fr - tb;
        if (rel == 0 || rel <= -2) {
            const std::int64_t zigzags = (rel == 0) ? 1 : (-1 - rel);
            for (std::int64_t i = 0; i < zigzags; ++i)
                out.diagram = legendrian_stabilize(out.diagram, comp, 0, -1);
            tb -= zigzags;
            rot -= zigzags;
        }
        FramedHandleState st;
        st.comp = comp;
        st.name = out.diagram.components[comp].name;
        st.origin = HandleOrigin::Link;
        st.framing = fr;
        st.tb_eff = tb;
        st.rot = rot;
        st.rot_known = out.diagram.components[comp].rot.has_value();
        out.handles.push_back(st);
    }

    const Index f = static_cast<Index>(out.handles.size());
    const Index d = static_cast<Index>(out.dotteds.size());
    std::vector<Index> framed_comps;
    VecZ framing(f);
    for (Index k = 0; k < f; ++k) {
        framed_comps.push_back(out.handles[k].comp);
        framing(k) = out.handles[k].framing;
    }
    out.lk = linking_block(out.diagram, framed_comps, framing);
    out.passages.resize(f, d);
    out.passages_geom.resize(f, d);
    for (Index i = 0; i < f; ++i)
        for (Index j = 0; j < d; ++j) {
            out.passages(i, j) = linking_number(out.diagram, out.handles[i].comp, out.dotteds[j].comp);
            out.passages_geom(i, j) = geometric_passages(out.diagram, out.handles[i].comp, out.dotteds[j].comp);
        }

    for (Index k = 0; k < f; ++k)
        if (out.handles[k].framing - out.handles[k].tb_eff >= 2) lower_to_defective(out, k);

    for (FramedHandleState& st : out.handles) {
        const std::int64_t rel = st.framing - st.tb_eff;
        if (rel != 1 && rel != -1) throw std::logic_error("normalization missed a handle");
        st.defective = (rel == 1);
        if (st.defective) st.rerouted = true;  // staged over a meridian disk twice
    }
    return out;
}

CarveResult carve_meridian_disk(const AlmostSteinHandlebody& h, Index handle) {
    if (handle < 0 || handle >= static_cast<Index>(h.handles.size()))
        throw PreconditionError("no such handle to carve at");
    const FramedHandleState& st = h.handles[handle];
    if (!st.defective)
        throw PreconditionError("carving target '" + st.name + "' is not a defective handle");
    if (st.carved)
        throw PreconditionError("meridian disk of '" + st.name +
                                "' is already carved; its ticket was issued");
    if (!st.rerouted)
        throw PreconditionError("handle '" + st.name + "' is not staged over a meridian disk");

    CarveResult res{h, {}};
    AlmostSteinHandlebody& out = res.handlebody;
    const Index gi =
        append_rectangle(out.diagram, st.name + ".gamma", true, std::nullopt, fresh_offset(out.diagram));
    out.dotteds.push_back({gi, out.diagram.components[gi].name, true});
    add_zero_column(out.passages);
    add_zero_column(out.passages_geom);
    const Index dpos = out.passages.cols() - 1;
    // the rerouted handle runs over the carved disk twice, with opposite signs
    out.passages_geom(handle, dpos) = 2;
    out.handles[handle].carved = true;
    out.handles[handle].carve_dotted = dpos;

    res.ticket.circle = out.dotteds.back().name;
    res.ticket.companion = res.ticket.circle + ".companion";
    res.ticket.framing = 0;
    return res;
}

AlmostSteinHandlebody add_stabilization_pair(const AlmostSteinHandlebody& h, bool positive) {
    AlmostSteinHandlebody out = h;
    const std::string base = "stab" + std::to_string(out.handles.size());
    auto [di, fi] = append_cancelling_pair(out.diagram, base, positive ? -2 : 0);

    out.dotteds.push_back({di, out.diagram.components[di].name, false});
    add_zero_column(out.passages);
    add_zero_column(out.passages_geom);

    FramedHandleState st;
    st.comp = fi;
    st.name = out.diagram.components[fi].name;
    st.origin = HandleOrigin::StabilizationPair;
    st.framing = positive ? -2 : 0;
    st.tb_eff = -1;
    st.rot = 0;
    st.defective = !positive;
    st.rerouted = !positive;
    out.handles.push_back(st);
    add_zero_row(out.passages);
    add_zero_row(out.passages_geom);
    add_zero_row(out.lk);
    add_zero_column(out.lk);
    out.lk(out.lk.rows() - 1, out.lk.cols() - 1) = st.framing;
    out.passages(out.passages.rows() - 1, out.passages.cols() - 1) = 1;
    out.passages_geom(out.passages_geom.rows() - 1, out.passages_geom.cols() - 1) = 1;
    return out;
}

AlmostSteinHandlebody finger_move(const AlmostSteinHandlebody& h, Index handle, int rot_delta) {
    if (rot_delta != 1 && rot_delta != -1)
        throw PreconditionError("finger move direction must be +1 or -1");
    if (handle < 0 || handle >= static_cast<Index>(h.handles.size()))
        throw PreconditionError("no such handle for a finger move");
    if (h.handles[handle].carved)
        throw PreconditionError("finger move on '" + h.handles[handle].name +
                                "' after its disk was carved");

    // The target runs once over a fresh pair's 1-handle and once through its
    // clasping 2-handle; that keeps the linking form congruent to the old one.
    AlmostSteinHandlebody out = add_stabilization_pair(h, true);
    out.handles.back().origin = HandleOrigin::FingerPair;
    const Index fpos = static_cast<Index>(out.handles.size()) - 1;
    const Index dpos = out.passages.cols() - 1;
    out.passages(handle, dpos) = rot_delta;
    out.passages_geom(handle, dpos) = 1;
    out.lk(handle, fpos) = -rot_delta;
    out.lk(fpos, handle) = -rot_delta;

    FramedHandleState& st = out.handles[handle];
    st.tb_eff -= 1;
    st.rot += rot_delta;
    const std::int64_t rel = st.framing - st.tb_eff;
    st.defective = (rel == 1);
    if (st.defective) st.rerouted = true;
    return out;
}

AlmostSteinHandlebody apply_ticket(const AlmostSteinHandlebody& h, const AttachmentTicket& t) {
    AlmostSteinHandlebody out = h;
    Index dpos = -1;
    for (Index j = 0; j < static_cast<Index>(out.dotteds.size()); ++j)
        if (out.dotteds[j].name == t.circle) dpos = j;
    if (dpos < 0)
        throw PreconditionError("ticket names unknown dotted circle '" + t.circle + "'");

    const Index ci = append_rectangle(out.diagram, t.companion, false, t.framing,
                                      fresh_offset(out.diagram));
    FramedHandleState st;
    st.comp = ci;
    st.name = out.diagram.components[ci].name;
    st.origin = HandleOrigin::CarveCompanion;
    st.framing = t.framing;
    st.tb_eff = -1;
    st.rot = 0;
    st.defective = (st.framing - st.tb_eff == 1);
    out.handles.push_back(st);
    add_zero_row(out.passages);
    add_zero_row(out.passages_geom);
    add_zero_row(out.lk);
    add_zero_column(out.lk);
    out.lk(out.lk.rows() - 1, out.lk.cols() - 1) = st.framing;
    out.passages(out.passages.rows() - 1, dpos) = 1;
    out.passages_geom(out.passages_geom.rows() - 1, dpos) = 1;
    return out;
}

MatZ presentation_matrix(const AlmostSteinHandlebody& h) {
    return presentation_from(h.lk, h.passages);
}

std::int64_t euler_characteristic(const AlmostSteinHandlebody& h) {
    return chi_from(static_cast<Index>(h.dotteds.size()), static_cast<Index>(h.handles.size()),
                    h.three_handles, h.four_handles);
}

int signature(const AlmostSteinHandlebody& h) { return signature_from(h.lk, h.passages); }

HomologyData boundary_homology(const AlmostSteinHandlebody& h) {
    return boundary_from(h.lk, h.passages);
}

// --- invariant record ------------------------------------------------------------------

InvariantRecord compute_invariants(const AlmostSteinHandlebody& h) {
    InvariantRecord r;
    r.chi = euler_characteristic(h);
    r.sigma = signature(h);
    r.h1_boundary = boundary_homology(h);
    r.q = h.q();
    const Index f = static_cast<Index>(h.handles.size());
    r.c1.resize(f);
    for (Index i = 0; i < f; ++i) r.c1(i) = h.handles[i].rot;

    VecQ x;
    r.d3_defined = solve_exact(to_rational(h.lk), to_rational(VecZ(r.c1)), x);
    if (r.d3_defined) {
        Rational c1sq(0);
        for (Index i = 0; i < f; ++i) c1sq = c1sq + x(i) * Rational(r.c1(i));
        r.d3 = (c1sq - Rational(3 * static_cast<std::int64_t>(r.sigma)) - Rational(2 * r.chi)) /
                   Rational(4) +
               Rational(r.q);
    }
    return r;
}

bool chern_parity_ok(const AlmostSteinHandlebody& h) {
    const MatZ kern = integer_kernel(presentation_matrix(h));
    const Index f = static_cast<Index>(h.handles.size());
    for (Index c = 0; c < kern.cols(); ++c) {
        std::int64_t s = 0;
        for (Index i = 0; i < f; ++i) s += h.handles[i].rot * kern(i, c);
        if (s % 2 != 0) return false;
    }
    return true;
}

}  // namespace blf

#include "blf/grid.hpp"

#include <algorithm>
#include <istream>
#include <map>
#include <set>
#include <sstream>

namespace blf {

const char* to_string(CornerKind k) {
    switch (k) {
        case CornerKind::NW: return "NW";
        case CornerKind::NE: return "NE";
        case CornerKind::SW: return "SW";
        case CornerKind::SE: return "SE";
    }
    return "?";
}

Index GridDiagram::find(const std::string& name) const {
    for (Index i = 0; i < static_cast<Index>(components.size()); ++i)
        if (components[i].name == name) return i;
    return -1;
}

// --- parsing ---------------------------------------------------------------

namespace {

[[noreturn]] void parse_fail(int line, const std::string& msg) {
    throw ParseError("line " + std::to_string(line) + ": " + msg);
}

std::int64_t parse_int(const std::string& tok, int line) {
    try {
        std::size_t used = 0;
        std::int64_t v = std::stoll(tok, &used);
        if (used != tok.size()) parse_fail(line, "trailing characters in integer '" + tok + "'");
        return v;
    } catch (const ParseError&) {
        throw;
    } catch (...) {
        parse_fail(line, "expected an integer, got '" + tok + "'");
    }
}

GridPoint parse_point(const std::string& tok, int line) {
    if (tok.size() < 5 || tok.front() != '(' || tok.back() != ')')
        parse_fail(line, "expected a corner '(x,y)', got '" + tok + "'");
    const std::string body = tok.substr(1, tok.size() - 2);
    const std::size_t comma = body.find(',');
    if (comma == std::string::npos) parse_fail(line, "corner '" + tok + "' is missing a comma");
    GridPoint p;
    p.x = parse_int(body.substr(0, comma), line);
    p.y = parse_int(body.substr(comma + 1), line);
    return p;
}

}  // namespace

GridDiagram parse_diagram_syntax(std::istream& in) {
    GridDiagram g;
    std::string raw;
    int line = 0;
    while (std::getline(in, raw)) {
        ++line;
        const std::size_t hash = raw.find('#');
        if (hash != std::string::npos) raw.erase(hash);
        std::istringstream ls(raw);
        std::vector<std::string> toks;
        for (std::string t; ls >> t;) toks.push_back(t);
        if (toks.empty()) continue;

        if (toks[0] == "component") {
            if (toks.size() < 2) parse_fail(line, "component needs a name");
            GridComponent c;
            c.name = toks[1];
            c.header_line = line;
            if (g.find(c.name) >= 0) parse_fail(line, "duplicate component name '" + c.name + "'");
            for (std::size_t i = 2; i < toks.size(); ++i) {
                const std::string& t = toks[i];
                if (t == "dotted") {
                    c.dotted = true;
                } else if (t.rfind("framing=", 0) == 0) {
                    const std::string v = t.substr(8);
                    FramingSpec fs;
                    if (v == "tb-1") { fs.tb_relative = true; fs.value = -1; }
                    else if (v == "tb+1") { fs.tb_relative = true; fs.value = 1; }
                    else { fs.value = parse_int(v, line); }
                    c.framing = fs;
                } else if (t.rfind("rot=", 0) == 0) {
                    c.rot = parse_int(t.substr(4), line);
                } else {
                    parse_fail(line, "unknown attribute '" + t + "'");
                }
            }
            g.components.push_back(std::move(c));
        } else if (toks[0] == "corners:") {
            if (g.components.empty()) parse_fail(line, "corners before any component");
            GridComponent& c = g.components.back();
            if (!c.corners.empty()) parse_fail(line, "component '" + c.name + "' already has corners");
            c.corners_line = line;
            for (std::size_t i = 1; i < toks.size(); ++i) c.corners.push_back(parse_point(toks[i], line));
            if (c.corners.empty()) parse_fail(line, "empty corner list");
        } else {
            parse_fail(line, "unknown directive '" + toks[0] + "'");
        }
    }
    for (const GridComponent& c : g.components)
        if (c.corners.empty())
            parse_fail(c.header_line, "component '" + c.name + "' has no corners");
    return g;
}

GridDiagram parse_diagram(std::istream& in) {
    GridDiagram g = parse_diagram_syntax(in);
    validate_diagram(g);
    return g;
}

GridDiagram parse_diagram_text(const std::string& text) {
    std::istringstream in(text);
    return parse_diagram(in);
}

std::vector<std::string> invariant_diagnostics(const GridDiagram& g) {
    std::vector<std::string> out;
    const auto report = [&out](int line, const std::string& msg) {
        out.push_back("line " + std::to_string(line) + ": " + msg);
    };

    // clean[ci] records whether every consecutive pair shares exactly one
    // coordinate, so the segment walks below stay meaningful
    std::vector<bool> clean(g.components.size(), true);
    for (Index ci = 0; ci < static_cast<Index>(g.components.size()); ++ci) {
        const GridComponent& c = g.components[ci];
        const int line = c.corners_line ? c.corners_line : c.header_line;
        const auto n = static_cast<Index>(c.corners.size());
        if (n < 4 || n % 2 != 0) {
            report(line, "component '" + c.name + "' needs an even corner count of at least 4");
            clean[ci] = false;
            continue;
        }
        bool prev_horizontal = false, prev_valid = false;
        for (Index i = 0; i < n; ++i) {
            const GridPoint& a = c.corners[i];
            const GridPoint& b = c.corners[(i + 1) % n];
            if (a.x < 0 || a.y < 0)
                report(line, "component '" + c.name + "' has a negative coordinate");
            const bool share_x = a.x == b.x, share_y = a.y == b.y;
            if (share_x && share_y) {
                report(line, "component '" + c.name + "' repeats a corner consecutively");
                clean[ci] = false;
                prev_valid = false;
                continue;
            }
            if (!share_x && !share_y) {
                report(line, "component '" + c.name +
                                 "' has consecutive corners sharing no coordinate");
                clean[ci] = false;
                prev_valid = false;
                continue;
            }
            const bool horizontal = share_y;
            if (prev_valid && horizontal == prev_horizontal) {
                report(line, "component '" + c.name + "' breaks alternation at corner " +
                                 std::to_string(i));
                clean[ci] = false;
            }
            prev_horizontal = horizontal;
            prev_valid = true;
        }
        // n is even, so the cyclic wrap alternates iff the linear walk does
    }

    std::map<std::int64_t, Index> row_owner, col_owner;
    for (Index ci = 0; ci < static_cast<Index>(g.components.size()); ++ci) {
        const GridComponent& c = g.components[ci];
        if (!clean[ci]) continue;
        const int line = c.corners_line ? c.corners_line : c.header_line;
        const auto n = static_cast<Index>(c.corners.size());
        for (Index i = 0; i < n; ++i) {
            const GridPoint& a = c.corners[i];
            const GridPoint& b = c.corners[(i + 1) % n];
            if (a.y == b.y) {
                auto [it, fresh] = row_owner.try_emplace(a.y, ci);
                if (!fresh)
                    report(line, "row " + std::to_string(a.y) + " holds two horizontal segments");
            } else {
                auto [it, fresh] = col_owner.try_emplace(a.x, ci);
                if (!fresh)
                    report(line,
                           "column " + std::to_string(a.x) + " holds two vertical segments");
            }
        }
    }
    return out;
}

void validate_diagram(const GridDiagram& g) {
    const std::vector<std::string> diags = invariant_diagnostics(g);
    if (!diags.empty()) throw ParseError(diags.front());
}

// --- segments, crossings, corner kinds ---------------------------------------

std::vector<GridSegment> diagram_segments(const GridDiagram& g) {
    std::vector<GridSegment> out;
    for (Index ci = 0; ci < static_cast<Index>(g.components.size()); ++ci) {
        const auto& corners = g.components[ci].corners;
        const auto n = static_cast<Index>(corners.size());
        for (Index i = 0; i < n; ++i) {
            const GridPoint& a = corners[i];
            const GridPoint& b = corners[(i + 1) % n];
            GridSegment s;
            s.comp = ci;
            s.horizontal = (a.y == b.y);
            if (s.horizontal) {
                s.fixed = a.y;
                s.lo = std::min(a.x, b.x);
                s.hi = std::max(a.x, b.x);
                s.dir = b.x > a.x ? 1 : -1;
            } else {
                s.fixed = a.x;
                s.lo = std::min(a.y, b.y);
                s.hi = std::max(a.y, b.y);
                s.dir = b.y > a.y ? 1 : -1;
            }
            out.push_back(s);
        }
    }
    return out;
}

std::vector<GridCrossing> diagram_crossings(const GridDiagram& g) {
    std::vector<GridCrossing> out;
    const std::vector<GridSegment> segs = diagram_segments(g);
    for (const GridSegment& h : segs) {
        if (!h.horizontal) continue;
        for (const GridSegment& v : segs) {
            if (v.horizontal) continue;
            if (v.fixed <= h.lo || v.fixed >= h.hi) continue;
            if (h.fixed <= v.lo || h.fixed >= v.hi) continue;
            out.push_back({v.fixed, h.fixed, h.comp, v.comp, h.dir * v.dir});
        }
    }
    std::sort(out.begin(), out.end(), [](const GridCrossing& a, const GridCrossing& b) {
        return a.x != b.x ? a.x < b.x : a.y < b.y;
    });
    return out;
}

std::vector<CornerKind> corner_kinds(const GridComponent& c) {
    const auto n = static_cast<Index>(c.corners.size());
    std::vector<CornerKind> out(n);
    for (Index i = 0; i < n; ++i) {
        const GridPoint& p = c.corners[i];
        const GridPoint& prev = c.corners[(i + n - 1) % n];
        const GridPoint& next = c.corners[(i + 1) % n];
        const GridPoint& hn = (prev.y == p.y) ? prev : next;  // horizontal neighbour
        const GridPoint& vn = (prev.x == p.x) ? prev : next;  // vertical neighbour
        const bool south = vn.y > p.y;  // vertical segment leaves upward: corner sits at its S end
        const bool west = hn.x > p.x;   // horizontal segment leaves rightward: corner at its W end
        out[i] = south ? (west ? CornerKind::SW : CornerKind::SE)
                       : (west ? CornerKind::NW : CornerKind::NE);
    }
    return out;
}

std::int64_t count_kind(const GridComponent& c, CornerKind k) {
    std::int64_t n = 0;
    for (CornerKind kk : corner_kinds(c))
        if (kk == k) ++n;
    return n;
}

// --- invariants -----------------------------------------------------------------

namespace {

void check_component(const GridDiagram& g, Index c, const char* what) {
    if (c < 0 || c >= static_cast<Index>(g.components.size()))
        throw PreconditionError(std::string(what) + ": unknown component index " +
                                std::to_string(c));
}

}  // namespace

std::int64_t writhe(const GridDiagram& g, Index comp) {
    check_component(g, comp, "writhe");
    std::int64_t w = 0;
    for (const GridCrossing& x : diagram_crossings(g))
        if (x.hcomp == comp && x.vcomp == comp) w += x.sign;
    return w;
}

std::int64_t thurston_bennequin(const GridDiagram& g, Index comp) {
    check_component(g, comp, "thurston_bennequin");
    return writhe(g, comp) - count_kind(g.components[comp], CornerKind::SW);
}

std::int64_t linking_number(const GridDiagram& g, Index a, Index b) {
    check_component(g, a, "linking_number");
    check_component(g, b, "linking_number");
    if (a == b) throw PreconditionError("linking_number needs two distinct components");
    std::int64_t s = 0;
    for (const GridCrossing& x : diagram_crossings(g)) {
        if ((x.hcomp == a && x.vcomp == b) || (x.hcomp == b && x.vcomp == a)) s += x.sign;
    }
    if (s % 2 != 0) throw PreconditionError("odd signed crossing count between closed components");
    return s / 2;
}

// --- moves -----------------------------------------------------------------------

namespace {

GridDiagram scaled_by_two(const GridDiagram& g) {
    GridDiagram d = g;
    for (GridComponent& c : d.components)
        for (GridPoint& p : c.corners) {
            p.x *= 2;
            p.y *= 2;
        }
    return d;
}

GridDiagram translated_to_origin(GridDiagram d) {
    std::int64_t mx = 0, my = 0;
    bool any = false;
    for (const GridComponent& c : d.components)
        for (const GridPoint& p : c.corners) {
            if (!any) { mx = p.x; my = p.y; any = true; }
            mx = std::min(mx, p.x);
            my = std::min(my, p.y);
        }
    for (GridComponent& c : d.components)
        for (GridPoint& p : c.corners) {
            p.x -= mx;
            p.y -= my;
        }
    return d;
}

// The jog shared by refinement and stabilization: re-route the two segments
// meeting at corner P through a fresh column x_j and row y_j next to it.
GridDiagram jog_corner(const GridDiagram& g, Index comp, Index corner, bool refinement) {
    check_component(g, comp, "grid_move");
    const auto n = static_cast<Index>(g.components[comp].corners.size());
    if (corner < 0 || corner >= n) throw PreconditionError("grid_move: corner index out of range");

    GridDiagram d = scaled_by_two(g);
    GridComponent& c = d.components[comp];
    const GridPoint p = c.corners[corner];
    const GridPoint prev = c.corners[(corner + n - 1) % n];
    const GridPoint next = c.corners[(corner + 1) % n];
    const GridPoint& hn = (prev.y == p.y) ? prev : next;
    const bool prev_is_horizontal = (prev.y == p.y);

    const std::int64_t sh = hn.x > p.x ? 1 : -1;
    // Jogging toward the horizontal neighbour keeps P's corner kind; the row
    // offset decides between an NW/SE pair (refinement, tb kept) and an NE/SW
    // pair (stabilization, tb drops by one).
    const std::int64_t dy = refinement ? -sh : sh;
    const GridPoint q1{p.x + sh, p.y};
    const GridPoint q2{p.x + sh, p.y + dy};
    const GridPoint pp{p.x, p.y + dy};

    std::vector<GridPoint> replacement =
        prev_is_horizontal ? std::vector<GridPoint>{q1, q2, pp}
                           : std::vector<GridPoint>{pp, q2, q1};
    c.corners.erase(c.corners.begin() + corner);
    c.corners.insert(c.corners.begin() + corner, replacement.begin(), replacement.end());

    d = compact_diagram(translated_to_origin(std::move(d)));
    validate_diagram(d);
    return d;
}

struct CrossingProfile {
    std::map<std::pair<Index, Index>, std::pair<std::int64_t, std::int64_t>> pairs;
};

CrossingProfile crossing_profile(const GridDiagram& g) {
    CrossingProfile pr;
    for (const GridCrossing& x : diagram_crossings(g)) {
        auto& slot = pr.pairs[{x.hcomp, x.vcomp}];
        slot.first += x.sign;
        slot.second += 1;
    }
    return pr;
}

GridDiagram commute(const GridDiagram& g, bool rows, std::int64_t coordinate) {
    std::vector<GridSegment> segs = diagram_segments(g);
    std::set<std::int64_t> occupied;
    for (const GridSegment& s : segs)
        if (s.horizontal == rows) occupied.insert(s.fixed);
    auto it = occupied.find(coordinate);
    if (it == occupied.end())
        throw PreconditionError("commutation: no segment at the given row/column");
    auto nx = std::next(it);
    if (nx == occupied.end())
        throw PreconditionError("commutation: no neighbouring segment to swap with");
    const std::int64_t c1 = *it, c2 = *nx;

    // the two parallel segments must have strictly disjoint or strictly nested spans
    const GridSegment *s1 = nullptr, *s2 = nullptr;
    for (const GridSegment& s : segs) {
        if (s.horizontal != rows) continue;
        if (s.fixed == c1) s1 = &s;
        if (s.fixed == c2) s2 = &s;
    }
    const bool disjoint = s1->hi < s2->lo || s2->hi < s1->lo;
    const bool nested = (s1->lo < s2->lo && s2->hi < s1->hi) ||
                        (s2->lo < s1->lo && s1->hi < s2->hi);
    if (!disjoint && !nested)
        throw PreconditionError("commutation not applicable: interleaved spans");

    GridDiagram d = g;
    for (GridComponent& c : d.components)
        for (GridPoint& p : c.corners) {
            std::int64_t& coord = rows ? p.y : p.x;
            if (coord == c1) coord = c2;
            else if (coord == c2) coord = c1;
        }
    validate_diagram(d);
    const CrossingProfile before = crossing_profile(g), after = crossing_profile(d);
    if (before.pairs != after.pairs)
        throw PreconditionError("commutation not applicable: it would change crossing data");
    return d;
}

}  // namespace

GridDiagram grid_move(const GridDiagram& g, const GridMove& m) {
    if (m.kind == GridMove::Refine) return jog_corner(g, m.refine.comp, m.refine.corner, true);
    return commute(g, m.commute.rows, m.commute.coordinate);
}

GridDiagram legendrian_stabilize(const GridDiagram& g, Index comp, Index corner, int rot_delta) {
    if (rot_delta != 1 && rot_delta != -1)
        throw PreconditionError("stabilization: rot_delta must be +1 or -1");
    check_component(g, comp, "legendrian_stabilize");
    GridDiagram frozen = g;
    GridComponent& pre = frozen.components[comp];
    if (pre.framing && pre.framing->tb_relative) {
        // freeze the framing integer before tb changes underneath it
        pre.framing = FramingSpec{false, thurston_bennequin(g, comp) + pre.framing->value};
    }
    GridDiagram d = jog_corner(frozen, comp, corner, false);
    GridComponent& c = d.components[comp];
    c.rot = c.rot.value_or(0) + rot_delta;
    return d;
}

GridDiagram mirror_diagram(const GridDiagram& g) {
    std::int64_t mx = 0;
    for (const GridComponent& c : g.components)
        for (const GridPoint& p : c.corners) mx = std::max(mx, p.x);
    GridDiagram d = g;
    for (GridComponent& c : d.components)
        for (GridPoint& p : c.corners) p.x = mx - p.x;
    return d;
}

GridDiagram compact_diagram(const GridDiagram& g) {
    std::set<std::int64_t> xs, ys;
    for (const GridComponent& c : g.components)
        for (const GridPoint& p : c.corners) {
            xs.insert(p.x);
            ys.insert(p.y);
        }
    std::map<std::int64_t, std::int64_t> xr, yr;
    std::int64_t k = 0;
    for (std::int64_t x : xs) xr[x] = k++;
    k = 0;
    for (std::int64_t y : ys) yr[y] = k++;
    GridDiagram d = g;
    for (GridComponent& c : d.components)
        for (GridPoint& p : c.corners) {
            p.x = xr[p.x];
            p.y = yr[p.y];
        }
    return d;
}

// --- fronts -----------------------------------------------------------------------

namespace {

struct FrontEdge {
    FrontVertex a, b;
    int slope;  // +1 or -1
    int dx;     // traversal direction in x
    Index comp;
    Index from_vertex;  // index of a within its component
};

std::vector<FrontEdge> front_edges(const FrontProjection& f) {
    std::vector<FrontEdge> out;
    for (Index ci = 0; ci < static_cast<Index>(f.components.size()); ++ci) {
        const auto& vs = f.components[ci].vertices;
        const auto n = static_cast<Index>(vs.size());
        for (Index i = 0; i < n; ++i) {
            const FrontVertex& a = vs[i];
            const FrontVertex& b = vs[(i + 1) % n];
            FrontEdge e;
            e.a = a;
            e.b = b;
            e.dx = b.x > a.x ? 1 : -1;
            e.slope = (b.z - a.z) == (b.x - a.x) ? 1 : -1;
            e.comp = ci;
            e.from_vertex = i;
            out.push_back(e);
        }
    }
    return out;
}

[[noreturn]] void front_fail(const std::string& comp, const std::string& msg) {
    throw ParseError("front component '" + comp + "': " + msg);
}

}  // namespace

void validate_front(const FrontProjection& f) {
    for (const FrontComponent& c : f.components) {
        const auto n = static_cast<Index>(c.vertices.size());
        if (n < 4 || n % 2 != 0)
            front_fail(c.name, "needs an even vertex count of at least 4");
        int prev_slope = 0;
        for (Index i = 0; i < n; ++i) {
            const FrontVertex& a = c.vertices[i];
            const FrontVertex& b = c.vertices[(i + 1) % n];
            if ((a.x + a.z) % 2 != 0)
                front_fail(c.name, "vertex off the even lattice (x+z must be even)");
            const std::int64_t dx = b.x - a.x, dz = b.z - a.z;
            if (dx == 0 || std::abs(dx) != std::abs(dz))
                front_fail(c.name, "edges must have slope +1 or -1");
            const int slope = dz == dx ? 1 : -1;
            if (i > 0 && slope == prev_slope)
                front_fail(c.name, "consecutive edges are collinear");
            prev_slope = slope;
        }
    }

    // global position: distinct vertices, no vertex interior to an edge,
    // parallel edges on distinct lines (needed for a clean grid image)
    std::vector<FrontEdge> edges = front_edges(f);
    std::set<std::pair<std::int64_t, std::int64_t>> seen;
    for (const FrontComponent& c : f.components)
        for (const FrontVertex& v : c.vertices)
            if (!seen.insert({v.x, v.z}).second)
                front_fail(c.name, "two vertices coincide");
    std::set<std::int64_t> up_lines, down_lines;
    for (const FrontEdge& e : edges) {
        const std::int64_t key = e.slope > 0 ? e.a.x - e.a.z : e.a.x + e.a.z;
        auto& pool = e.slope > 0 ? up_lines : down_lines;
        if (!pool.insert(key).second)
            front_fail(f.components[e.comp].name, "two parallel edges lie on the same line");
    }
    for (const FrontEdge& e : edges) {
        const std::int64_t lo = std::min(e.a.x, e.b.x), hi = std::max(e.a.x, e.b.x);
        for (const auto& [vx, vz] : seen) {
            if (vx <= lo || vx >= hi) continue;
            const std::int64_t z_on = e.a.z + e.slope * (vx - e.a.x);
            if (vz == z_on)
                front_fail(f.components[e.comp].name, "a vertex lies on an edge interior");
        }
    }

    for (Index ci = 0; ci < static_cast<Index>(f.components.size()); ++ci) {
        const CuspCensus cc = cusp_census(f, ci);
        const int total = cc.up() + cc.down();
        if (total < 2 || total % 2 != 0)
            front_fail(f.components[ci].name, "needs an even, positive cusp count");
    }
}

CuspCensus cusp_census(const FrontProjection& f, Index comp) {
    if (comp < 0 || comp >= static_cast<Index>(f.components.size()))
        throw PreconditionError("cusp_census: unknown component");
    const auto& vs = f.components[comp].vertices;
    const auto n = static_cast<Index>(vs.size());
    CuspCensus cc;
    for (Index i = 0; i < n; ++i) {
        const FrontVertex& prev = vs[(i + n - 1) % n];
        const FrontVertex& cur = vs[i];
        const FrontVertex& next = vs[(i + 1) % n];
        const int in_dx = cur.x > prev.x ? 1 : -1;
        const int out_dx = next.x > cur.x ? 1 : -1;
        if (in_dx == out_dx) continue;  // max or min, not a cusp
        const int dz = next.z > cur.z ? 1 : -1;  // cusps keep the vertical sense
        const bool left = out_dx > 0;
        if (left) { (dz > 0 ? cc.left_up : cc.left_down) += 1; }
        else { (dz > 0 ? cc.right_up : cc.right_down) += 1; }
    }
    return cc;
}

std::int64_t rotation_number(const FrontProjection& f, Index comp) {
    const CuspCensus cc = cusp_census(f, comp);
    const int imbalance = cc.down() - cc.up();
    if (imbalance % 2 != 0) throw PreconditionError("rotation_number: odd cusp imbalance");
    return imbalance / 2;
}

std::int64_t front_writhe(const FrontProjection& f, Index comp) {
    if (comp < 0 || comp >= static_cast<Index>(f.components.size()))
        throw PreconditionError("front_writhe: unknown component");
    std::vector<FrontEdge> edges = front_edges(f);
    std::int64_t w = 0;
    for (const FrontEdge& over : edges) {
        if (over.slope != -1 || over.comp != comp) continue;
        for (const FrontEdge& under : edges) {
            if (under.slope != 1 || under.comp != comp) continue;
            // lines x+z = b (over) and x-z = a (under) meet at 2x = a+b
            const std::int64_t twice_x = (under.a.x - under.a.z) + (over.a.x + over.a.z);
            auto strictly_inside = [&](const FrontEdge& e) {
                const std::int64_t lo = 2 * std::min(e.a.x, e.b.x);
                const std::int64_t hi = 2 * std::max(e.a.x, e.b.x);
                return twice_x > lo && twice_x < hi;
            };
            if (!strictly_inside(over) || !strictly_inside(under)) continue;
            w += over.dx * under.dx;
        }
    }
    return w;
}

GridDiagram front_to_grid(const FrontProjection& f) {
    validate_front(f);
    GridDiagram g;
    if (f.components.empty()) return g;

    // Rank descending lines into rows and ascending lines into columns: the
    // combinatorial form of the 45-degree rotation.
    std::vector<FrontEdge> edges = front_edges(f);
    std::map<std::int64_t, std::int64_t> rows, cols;
    for (const FrontEdge& e : edges) {
        if (e.slope == -1) rows[e.a.x + e.a.z];
        else cols[e.a.x - e.a.z];
    }
    std::int64_t k = 0;
    for (auto& [key, rank] : rows) rank = k++;
    k = 0;
    for (auto& [key, rank] : cols) rank = k++;

    for (Index ci = 0; ci < static_cast<Index>(f.components.size()); ++ci) {
        const FrontComponent& fc = f.components[ci];
        GridComponent gc;
        gc.name = fc.name;
        gc.rot = rotation_number(f, ci);
        for (const FrontVertex& v : fc.vertices)
            gc.corners.push_back({cols.at(v.x - v.z), rows.at(v.x + v.z)});
        g.components.push_back(std::move(gc));
    }
    validate_diagram(g);
    return g;
}

}  // namespace blf

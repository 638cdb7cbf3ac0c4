#ifndef BLF_GRID_HPP
#define BLF_GRID_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <vector>

#include "blf/errors.hpp"
#include "blf/linalg.hpp"

namespace blf {

// --- square-bridge (grid) diagrams -------------------------------------------
//
// A component is a cyclic corner sequence on the nonnegative lattice; segments
// alternate horizontal/vertical, every row holds at most one horizontal segment
// and every column at most one vertical segment.  Vertical segments always pass
// in front of horizontal ones, so crossing data is determined by the corners.

struct GridPoint {
    std::int64_t x = 0, y = 0;
    friend bool operator==(const GridPoint&, const GridPoint&) = default;
};

enum class CornerKind { NW, NE, SW, SE };
const char* to_string(CornerKind k);

// Framing annotation as written in the file: absolute integer, or an offset
// relative to the component's Thurston–Bennequin number (tb-1 / tb+1).
struct FramingSpec {
    bool tb_relative = false;
    std::int64_t value = 0;
};

struct GridComponent {
    std::string name;
    std::vector<GridPoint> corners;  // cyclic, orientation as listed
    bool dotted = false;
    std::optional<FramingSpec> framing;
    std::optional<std::int64_t> rot;  // rotation number metadata; no grid formula exists
    int header_line = 0;
    int corners_line = 0;
};

struct GridDiagram {
    std::vector<GridComponent> components;
    Index find(const std::string& name) const;  // -1 when absent
};

struct GridSegment {
    bool horizontal = true;
    std::int64_t fixed = 0;  // the row of an H segment / the column of a V segment
    std::int64_t lo = 0, hi = 0;
    int dir = 1;  // +1 when the traversal runs toward increasing coordinate
    Index comp = 0;
};

struct GridCrossing {
    std::int64_t x = 0, y = 0;
    Index hcomp = 0, vcomp = 0;
    int sign = 1;
};

GridDiagram parse_diagram(std::istream& in);
GridDiagram parse_diagram_text(const std::string& text);
GridDiagram parse_diagram_syntax(std::istream& in);  // structure only, no geometry checks
void validate_diagram(const GridDiagram& g);  // ParseError with line references

// Every geometry violation as a "line N: ..." string; empty iff the diagram
// is valid.  validate_diagram throws the first entry.
std::vector<std::string> invariant_diagnostics(const GridDiagram& g);

std::vector<GridSegment> diagram_segments(const GridDiagram& g);
std::vector<GridCrossing> diagram_crossings(const GridDiagram& g);
std::vector<CornerKind> corner_kinds(const GridComponent& c);
std::int64_t count_kind(const GridComponent& c, CornerKind k);

std::int64_t writhe(const GridDiagram& g, Index comp);
std::int64_t thurston_bennequin(const GridDiagram& g, Index comp);
std::int64_t linking_number(const GridDiagram& g, Index a, Index b);

// --- diagram moves -------------------------------------------------------------

struct RefineMove {
    Index comp = 0;
    Index corner = 0;  // the corner whose segments get re-routed through a jog
};

struct CommuteMove {
    bool rows = true;
    std::int64_t coordinate = 0;  // swap with the next occupied row/column above
};

struct GridMove {
    enum Kind { Refine, Commute } kind = Refine;
    RefineMove refine;
    CommuteMove commute;
};

// Refinement inserts an NW/SE corner pair (tb preserved); commutation swaps two
// adjacent parallel segments and is rejected unless every signed and unsigned
// crossing count survives unchanged.
GridDiagram grid_move(const GridDiagram& g, const GridMove& m);

// Legendrian stabilization: re-routes at a corner introducing an NE/SW pair, so
// tb drops by one; rot metadata moves by rot_delta = ±1 (the zigzag's flavour is
// not visible in the grid, the caller supplies it).  A tb-relative framing is
// resolved to its absolute value first so the framed curve keeps its framing.
GridDiagram legendrian_stabilize(const GridDiagram& g, Index comp, Index corner, int rot_delta);

GridDiagram mirror_diagram(const GridDiagram& g);   // reflect across a vertical axis
GridDiagram compact_diagram(const GridDiagram& g);  // drop empty rows/columns

// --- Legendrian fronts ----------------------------------------------------------
//
// Fronts are closed polylines whose edges all have slope +1 or -1; the strand of
// lesser slope is in front at every crossing.  Vertices classify into cusps
// (x-direction reverses) and maxima/minima (z-direction reverses).

struct FrontVertex {
    std::int64_t x = 0, z = 0;
};

struct FrontComponent {
    std::string name;
    std::vector<FrontVertex> vertices;
};

struct FrontProjection {
    std::vector<FrontComponent> components;
};

struct CuspCensus {
    int left_up = 0, left_down = 0, right_up = 0, right_down = 0;
    int up() const { return left_up + right_up; }
    int down() const { return left_down + right_down; }
    int left() const { return left_up + left_down; }
    int right() const { return right_up + right_down; }
};

void validate_front(const FrontProjection& f);
CuspCensus cusp_census(const FrontProjection& f, Index comp);
std::int64_t rotation_number(const FrontProjection& f, Index comp);
std::int64_t front_writhe(const FrontProjection& f, Index comp);

// Rotate 45 degrees counterclockwise: slope +1 edges become vertical, slope -1
// edges horizontal, and the four vertex types become the four corner kinds.
// The image carries each component's rotation number as metadata.
GridDiagram front_to_grid(const FrontProjection& f);

}  // namespace blf

#endif

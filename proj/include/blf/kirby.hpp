#ifndef BLF_KIRBY_HPP
#define BLF_KIRBY_HPP

#include <optional>
#include <string>
#include <vector>

#include "blf/grid.hpp"
#include "blf/linalg.hpp"
#include "blf/rational.hpp"

namespace blf {

// --- handle decompositions ------------------------------------------------------
//
// A diagram's components split into dotted circles (1-handles, always 4-corner
// rectangles: the carving normal form) and framed 2-handle components.

struct HandleDecomposition {
    GridDiagram diagram;
    std::vector<Index> dotted;  // component indices
    std::vector<Index> framed;
    VecZ framing;  // absolute framing per framed entry
    int three_handles = 0;
    int four_handles = 0;
};

// Resolves tb-relative framings and checks the dotted normal form.
HandleDecomposition build_handles(const GridDiagram& g);

// rows = framed relations; columns = framed (linking + framing diagonal) then
// dotted (signed passage counts)
MatZ presentation_matrix(const HandleDecomposition& h);
std::int64_t euler_characteristic(const HandleDecomposition& h);
int signature(const HandleDecomposition& h);

struct HomologyData {
    Index rank = 0;
    std::vector<std::int64_t> torsion;  // > 1, divisibility order
    friend bool operator==(const HomologyData&, const HomologyData&) = default;
};

HomologyData boundary_homology(const HandleDecomposition& h);

// --- almost-Stein form ------------------------------------------------------------

enum class HandleOrigin { Link, LoweringPair, StabilizationPair, FingerPair, CarveCompanion };

struct FramedHandleState {
    Index comp = -1;             // diagram component
    std::string name;
    HandleOrigin origin = HandleOrigin::Link;
    std::int64_t framing = 0;    // absolute, never changes after normalization
    std::int64_t tb_eff = 0;     // tb of the tracked Legendrian representative
    std::int64_t rot = 0;        // rotation number of that representative
    bool rot_known = true;       // false when the diagram carried no rot=
    bool defective = false;      // framing == tb_eff + 1 (good: tb_eff - 1)
    bool rerouted = false;       // staged to pass over a meridian disk twice
    bool carved = false;         // the disk is carved: its dotted circle exists
    Index carve_dotted = -1;     // position in `dotted` of the carved circle
};

struct DottedState {
    Index comp = -1;
    std::string name;
    bool carve_circle = false;  // created by carving (not an original 1-handle)
};

// Handle data plus recorded rewrites that are not drawn back into the grid:
// slides over lowering pairs and carved meridian circles live in the passage
// matrices, with the diagram holding real (if unlinked) placeholder curves.
struct AlmostSteinHandlebody {
    GridDiagram diagram;
    std::vector<FramedHandleState> handles;
    std::vector<DottedState> dotteds;
    MatZ lk;             // framed x framed: linking numbers, framing diagonal
    MatZ passages;       // framed x dotted: algebraic passage counts
    MatZ passages_geom;  // framed x dotted: geometric passage counts
    int three_handles = 0;
    int four_handles = 0;

    std::int64_t q() const;  // defective handle count
    Index handle_named(const std::string& name) const;
};

// Raise low framings by zigzags (tb drops, rot drops with it), lower high ones
// by recorded slides over an added dotted/0-framed cancelling pair; classify
// every handle good (tb_eff - 1) or defective (tb_eff + 1) and stage each
// defective handle over a meridian disk, ready to carve.
AlmostSteinHandlebody normalize_almost_stein(const HandleDecomposition& h);

// The companion 0-framed 2-handle that undoes a carve globally; it is attached
// on the concave side, never to the convex handlebody itself.
struct AttachmentTicket {
    std::string circle;     // name of the carved dotted circle
    std::string companion;  // name for the 0-framed companion handle
    std::int64_t framing = 0;
};

struct CarveResult {
    AlmostSteinHandlebody handlebody;
    AttachmentTicket ticket;
};

// Dot the staged meridian circle of a defective handle: the handle then passes
// over a dotted circle twice with algebraic count zero, and chi drops by one.
CarveResult carve_meridian_disk(const AlmostSteinHandlebody& h, Index handle);

// Move-2 stabilization: a fresh cancelling pair whose 2-handle is good for the
// positive flavour (framing tb-1) and defective for the negative one (tb+1).
AlmostSteinHandlebody add_stabilization_pair(const AlmostSteinHandlebody& h, bool positive);

// One finger move: the target runs over a fresh stabilization pair's 1-handle
// once, trading tb_eff for rotation: tb_eff -= 1, rot += rot_delta.
AlmostSteinHandlebody finger_move(const AlmostSteinHandlebody& h, Index handle, int rot_delta);

// Apply an attachment ticket: the companion 0-framed handle is added, passing
// once over the named dotted circle (used to audit glued totals in tests).
AlmostSteinHandlebody apply_ticket(const AlmostSteinHandlebody& h, const AttachmentTicket& t);

MatZ presentation_matrix(const AlmostSteinHandlebody& h);
std::int64_t euler_characteristic(const AlmostSteinHandlebody& h);
int signature(const AlmostSteinHandlebody& h);
HomologyData boundary_homology(const AlmostSteinHandlebody& h);

// --- invariant record ---------------------------------------------------------------

struct InvariantRecord {
    std::int64_t chi = 0;
    int sigma = 0;
    HomologyData h1_boundary;
    VecZ c1;  // rotation coefficient per framed handle
    bool d3_defined = false;
    Rational d3;
    std::int64_t q = 0;
};

InvariantRecord compute_invariants(const AlmostSteinHandlebody& h);

// Sum over framed handles of c1 . z is even for every integer kernel vector z
// of the full boundary relation matrix (checked on pipeline-produced data).
bool chern_parity_ok(const AlmostSteinHandlebody& h);

}  // namespace blf

#endif

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "blf/linalg.hpp"

namespace blf {

// Abstract page of an open book: topological type plus an integral H1 basis
// carrying the algebraic intersection form.  `holes` names punctures cut out
// of the interior (scooped sections); they count as boundary circles in the
// rank identity  h1 = 2*genus + (boundary_count + holes) - 1.
struct Page {
    std::int64_t genus = 0;
    std::int64_t boundary_count = 1;
    std::vector<std::string> holes;
    std::vector<std::string> basis_ids;  // one id per H1 basis vector
    MatZ intersection_form;              // skew, basis_ids.size() square

    Index h1_rank() const { return intersection_form.rows(); }
};

// Throws PreconditionError unless the form is square and skew, ids match its
// size, and the rank identity above holds.
void validate_page(const Page& p);

enum class CurveKind { HoleLoop, LinkComponent, BoundaryParallel, StabilizationCore };

// A curve is remembered only through its homology class, a descriptor, and
// (when known) the offset of its page framing against the surface framing.
struct Curve {
    std::string id;
    CurveKind kind = CurveKind::HoleLoop;
    VecZ homology;
    std::optional<std::int64_t> framing_offset;
};

enum class Chirality { Right, Left };

struct TwistLetter {
    Curve curve;
    Chirality chirality = Chirality::Right;
};

// Composition order: letters[0] is applied first.
struct TwistWord {
    std::vector<TwistLetter> letters;
};

struct OpenBook {
    Page page;
    TwistWord monodromy;
};

// Action of the word on H1(page): a right twist along c sends x to
// x + <x,c>c, a left twist to x - <x,c>c.  Matrices compose so that
// twist_action(w1 + w2) = twist_action(w2) * twist_action(w1).
MatZ twist_action(const TwistWord& w, const Page& p);

// <a,b> under the page form.
std::int64_t intersection_number(const Page& p, const Curve& a, const Curve& b);

// The curve's recorded framing offset; errors when none was recorded.
std::int64_t page_framing(const Page& p, const Curve& c);

// Plumbs a positive (right-letter) or negative (left-letter) Hopf band at the
// given boundary component.  The new core pairs zero with the old basis and
// its twist is appended to the word.
OpenBook plumb_hopf_band(const OpenBook& ob, bool positive, Index site);

// Removes a plumbed Hopf band along k: requires k nonzero and primitive,
// page framing -1, and a right letter along k in the word.  Drops the rank
// by one; every other letter must have no k-coordinate in the cut basis.
OpenBook destabilize(const OpenBook& ob, const Curve& k);

// Equal page type (genus, boundary count, rank) and exactly equal
// twist_action matrices.
bool homology_equivalent(const OpenBook& a, const OpenBook& b);

bool pages_equal(const Page& a, const Page& b);
bool words_equal(const TwistWord& a, const TwistWord& b);
bool open_books_equal(const OpenBook& a, const OpenBook& b);

// Stable text form: page header, basis size, form rows, one line per letter.
std::string serialize_open_book(const OpenBook& ob);

}  // namespace blf

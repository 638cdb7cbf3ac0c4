#include "blf/openbook.hpp"

#include <cstdlib>
#include <numeric>
#include <sstream>
#include <stdexcept>

#include "blf/errors.hpp"

namespace blf {
namespace {

void check_curve(const Page& p, const Curve& c) {
    if (c.homology.size() != p.h1_rank())
        throw PreconditionError("curve '" + c.id + "' does not live on this page");
}

std::int64_t gcd_abs(const VecZ& v) {
    std::int64_t g = 0;
    for (Index i = 0; i < v.size(); ++i) g = std::gcd(g, std::abs(v(i)));
    return g;
}

// Index of k's support when k = +-e_i, else -1.
Index axis_of(const VecZ& k) {
    Index hit = -1;
    for (Index i = 0; i < k.size(); ++i) {
        if (k(i) == 0) continue;
        if (hit >= 0 || (k(i) != 1 && k(i) != -1)) return -1;
        hit = i;
    }
    return hit;
}

MatZ drop_row_col(const MatZ& m, Index r) {
    MatZ out(m.rows() - 1, m.cols() - 1);
    for (Index i = 0, oi = 0; i < m.rows(); ++i) {
        if (i == r) continue;
        for (Index j = 0, oj = 0; j < m.cols(); ++j) {
            if (j == r) continue;
            out(oi, oj++) = m(i, j);
        }
        ++oi;
    }
    return out;
}

}  // namespace

void validate_page(const Page& p) {
    const MatZ& j = p.intersection_form;
    if (j.rows() != j.cols()) throw PreconditionError("page form is not square");
    if (j != (-j.transpose()).eval()) throw PreconditionError("page form is not skew");
    if (static_cast<Index>(p.basis_ids.size()) != j.rows())
        throw PreconditionError("page basis ids do not match the form size");
    if (p.genus < 0 || p.boundary_count < 1)
        throw PreconditionError("page type out of range");
    const std::int64_t want =
        2 * p.genus + p.boundary_count + static_cast<std::int64_t>(p.holes.size()) - 1;
    if (j.rows() != want) throw PreconditionError("page rank does not match its type");
}

MatZ twist_action(const TwistWord& w, const Page& p) {
    const Index n = p.h1_rank();
    MatZ m = MatZ::Identity(n, n);
    for (const TwistLetter& l : w.letters) {
        check_curve(p, l.curve);
        const VecZ& c = l.curve.homology;
        const VecZ jc = p.intersection_form * c;
        const std::int64_t s = l.chirality == Chirality::Right ? 1 : -1;
        // x -> x + s<x,c>c, applied after everything already in m
        m = (MatZ::Identity(n, n) + s * c * jc.transpose()) * m;
    }
    return m;
}

std::int64_t intersection_number(const Page& p, const Curve& a, const Curve& b) {
    check_curve(p, a);
    check_curve(p, b);
    return a.homology.dot(p.intersection_form * b.homology);
}

std::int64_t page_framing(const Page& p, const Curve& c) {
    check_curve(p, c);
    if (!c.framing_offset)
        throw PreconditionError("curve '" + c.id + "' has no recorded page framing");
    return *c.framing_offset;
}

OpenBook plumb_hopf_band(const OpenBook& ob, bool positive, Index site) {
    if (site < 0 || site >= ob.page.boundary_count)
        throw PreconditionError("plumbing site is not a boundary component");
    OpenBook out = ob;
    const Index n = out.page.h1_rank();

    MatZ j = MatZ::Zero(n + 1, n + 1);
    j.topLeftCorner(n, n) = out.page.intersection_form;
    out.page.intersection_form = std::move(j);
    out.page.basis_ids.push_back("core" + std::to_string(n));
    out.page.boundary_count += 1;

    Curve core;
    core.id = out.page.basis_ids.back();
    core.kind = CurveKind::StabilizationCore;
    core.homology = VecZ::Zero(n + 1);
    core.homology(n) = 1;
    core.framing_offset = positive ? -1 : 1;
    for (TwistLetter& l : out.monodromy.letters) {
        VecZ grown = VecZ::Zero(n + 1);
        grown.head(n) = l.curve.homology;
        l.curve.homology = std::move(grown);
    }
    out.monodromy.letters.push_back({core, positive ? Chirality::Right : Chirality::Left});
    validate_page(out.page);
    return out;
}

OpenBook destabilize(const OpenBook& ob, const Curve& k) {
    check_curve(ob.page, k);
    if (k.homology.isZero()) throw PreconditionError("destabilizing curve is separating");
    if (gcd_abs(k.homology) != 1)
        throw PreconditionError("destabilizing curve is not primitive");
    if (page_framing(ob.page, k) != -1)
        throw PreconditionError("destabilizing curve does not have page framing -1");

    const Index n = ob.page.h1_rank();
    Index removed = -1;
    for (Index i = 0; i < static_cast<Index>(ob.monodromy.letters.size()); ++i) {
        const TwistLetter& l = ob.monodromy.letters[i];
        if (l.chirality == Chirality::Right && l.curve.homology == k.homology) {
            removed = i;
            break;
        }
    }
    if (removed < 0)
        throw PreconditionError("word has no right twist along the destabilizing curve");

    OpenBook out = ob;
    out.monodromy.letters.erase(out.monodromy.letters.begin() + removed);

    const Index ax = axis_of(k.homology);
    if (ax >= 0) {
        // coordinate drop; basis ids survive
        out.page.intersection_form = drop_row_col(ob.page.intersection_form, ax);
        out.page.basis_ids.erase(out.page.basis_ids.begin() + ax);
        for (TwistLetter& l : out.monodromy.letters) {
            if (l.curve.homology(ax) != 0)
                throw PreconditionError("letter '" + l.curve.id +
                                        "' crosses the deplumbed band");
            VecZ cut(n - 1);
            cut << l.curve.homology.head(ax), l.curve.homology.tail(n - 1 - ax);
            l.curve.homology = std::move(cut);
        }
    } else {
        // general primitive class: rotate it onto the first coordinate
        MatZ col(n, 1);
        col.col(0) = k.homology;
        auto [u, d, v] = smith_normal_form(col);
        MatZ uu = v(0, 0) * u;  // uu * k = e0
        if ((uu * k.homology) != VecZ::Unit(n, 0))
            throw std::logic_error("basis rotation failed");
        const MatZ b = integer_inverse(uu);
        const MatZ jj = b.transpose() * ob.page.intersection_form * b;
        out.page.intersection_form = drop_row_col(jj, 0);
        out.page.basis_ids.clear();
        for (Index i = 0; i + 1 < n; ++i)
            out.page.basis_ids.push_back("b" + std::to_string(i));
        for (TwistLetter& l : out.monodromy.letters) {
            const VecZ y = uu * l.curve.homology;
            if (y(0) != 0)
                throw PreconditionError("letter '" + l.curve.id +
                                        "' crosses the deplumbed band");
            l.curve.homology = y.tail(n - 1).eval();
        }
    }

    if (out.page.boundary_count >= 2) {
        out.page.boundary_count -= 1;
    } else {
        out.page.genus -= 1;
        out.page.boundary_count += 1;
    }
    validate_page(out.page);
    return out;
}

bool homology_equivalent(const OpenBook& a, const OpenBook& b) {
    if (a.page.genus != b.page.genus) return false;
    if (a.page.boundary_count != b.page.boundary_count) return false;
    if (a.page.h1_rank() != b.page.h1_rank()) return false;
    return twist_action(a.monodromy, a.page) == twist_action(b.monodromy, b.page);
}

bool pages_equal(const Page& a, const Page& b) {
    return a.genus == b.genus && a.boundary_count == b.boundary_count && a.holes == b.holes &&
           a.basis_ids == b.basis_ids && a.intersection_form.rows() == b.intersection_form.rows() &&
           a.intersection_form == b.intersection_form;
}

bool words_equal(const TwistWord& a, const TwistWord& b) {
    if (a.letters.size() != b.letters.size()) return false;
    for (std::size_t i = 0; i < a.letters.size(); ++i) {
        const TwistLetter& x = a.letters[i];
        const TwistLetter& y = b.letters[i];
        if (x.chirality != y.chirality || x.curve.id != y.curve.id ||
            x.curve.kind != y.curve.kind || x.curve.framing_offset != y.curve.framing_offset)
            return false;
        if (x.curve.homology.size() != y.curve.homology.size() ||
            x.curve.homology != y.curve.homology)
            return false;
    }
    return true;
}

bool open_books_equal(const OpenBook& a, const OpenBook& b) {
    return pages_equal(a.page, b.page) && words_equal(a.monodromy, b.monodromy);
}

std::string serialize_open_book(const OpenBook& ob) {
    std::ostringstream out;
    out << "page genus=" << ob.page.genus << " boundary=" << ob.page.boundary_count
        << " holes=";
    if (ob.page.holes.empty()) {
        out << "-";
    } else {
        for (std::size_t i = 0; i < ob.page.holes.size(); ++i)
            out << (i ? "," : "") << ob.page.holes[i];
    }
    out << "\nbasis " << ob.page.h1_rank() << "\n";
    for (Index i = 0; i < ob.page.intersection_form.rows(); ++i) {
        out << "form";
        for (Index j = 0; j < ob.page.intersection_form.cols(); ++j)
            out << " " << ob.page.intersection_form(i, j);
        out << "\n";
    }
    for (const TwistLetter& l : ob.monodromy.letters)
        out << "twist " << l.curve.id << " " << (l.chirality == Chirality::Right ? "R" : "L")
            << "\n";
    return out.str();
}

}  // namespace blf

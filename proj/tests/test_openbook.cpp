#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <random>

#include "blf/errors.hpp"
#include "blf/openbook.hpp"
#include "doctest.h"

using namespace blf;

namespace {

// Synthetic planar-type page: rank n, genus 0, n+1 boundary circles.
Page planar_page(const MatZ& form) {
    Page p;
    p.genus = 0;
    p.boundary_count = form.rows() + 1;
    p.intersection_form = form;
    for (Index i = 0; i < form.rows(); ++i) p.basis_ids.push_back("b" + std::to_string(i));
    return p;
}

Page punctured_torus() {
    MatZ j(2, 2);
    j << 0, 1, -1, 0;
    Page p;
    p.genus = 1;
    p.boundary_count = 1;
    p.intersection_form = j;
    p.basis_ids = {"a", "b"};
    return p;
}

Curve curve(std::string id, VecZ v, std::optional<std::int64_t> fr = std::nullopt) {
    Curve c;
    c.id = std::move(id);
    c.kind = CurveKind::HoleLoop;
    c.homology = std::move(v);
    c.framing_offset = fr;
    return c;
}

VecZ vec(std::initializer_list<std::int64_t> xs) {
    VecZ v(static_cast<Index>(xs.size()));
    Index i = 0;
    for (std::int64_t x : xs) v(i++) = x;
    return v;
}

MatZ random_skew(std::mt19937& rng, Index n) {
    std::uniform_int_distribution<std::int64_t> d(-3, 3);
    MatZ j = MatZ::Zero(n, n);
    for (Index i = 0; i < n; ++i)
        for (Index k = i + 1; k < n; ++k) {
            j(i, k) = d(rng);
            j(k, i) = -j(i, k);
        }
    return j;
}

TwistWord random_word(std::mt19937& rng, Index n, int letters) {
    std::uniform_int_distribution<std::int64_t> d(-2, 2);
    std::uniform_int_distribution<int> coin(0, 1);
    TwistWord w;
    for (int i = 0; i < letters; ++i) {
        VecZ v(n);
        for (Index k = 0; k < n; ++k) v(k) = d(rng);
        w.letters.push_back({curve("r" + std::to_string(i), std::move(v)),
                             coin(rng) ? Chirality::Right : Chirality::Left});
    }
    return w;
}

}  // namespace

TEST_CASE("page validation enforces shape and rank identity") {
    Page p = punctured_torus();
    CHECK_NOTHROW(validate_page(p));

    Page bad = p;
    bad.intersection_form(0, 1) = 2;  // no longer skew against (1,0)
    CHECK_THROWS_AS(validate_page(bad), PreconditionError);

    bad = p;
    bad.genus = 0;
    CHECK_THROWS_AS(validate_page(bad), PreconditionError);

    bad = p;
    bad.basis_ids.pop_back();
    CHECK_THROWS_AS(validate_page(bad), PreconditionError);

    Page disk;
    disk.intersection_form = MatZ::Zero(0, 0);
    CHECK_NOTHROW(validate_page(disk));
}

TEST_CASE("single right twist realizes the transvection formula") {
    Page p = punctured_torus();
    TwistWord w;
    w.letters.push_back({curve("a", vec({1, 0})), Chirality::Right});
    MatZ m = twist_action(w, p);
    // x -> x + <x,a>a: e1 has <e1,a> = -1, so e1 -> e1 - a
    CHECK(m * vec({1, 0}) == vec({1, 0}));
    CHECK(m * vec({0, 1}) == vec({-1, 1}));

    w.letters[0].chirality = Chirality::Left;
    MatZ inv = twist_action(w, p);
    CHECK(m * inv == MatZ::Identity(2, 2));
}

TEST_CASE("composition applies the leftmost letter first") {
    Page p = punctured_torus();
    TwistWord ab, a, b;
    a.letters.push_back({curve("a", vec({1, 0})), Chirality::Right});
    b.letters.push_back({curve("b", vec({0, 1})), Chirality::Right});
    ab.letters = {a.letters[0], b.letters[0]};
    CHECK(twist_action(ab, p) == twist_action(b, p) * twist_action(a, p));
}

TEST_CASE("order six relation for a dual pair of twists") {
    Page p = punctured_torus();
    TwistWord w;
    for (int i = 0; i < 6; ++i) {
        w.letters.push_back({curve("a", vec({1, 0})), Chirality::Right});
        w.letters.push_back({curve("b", vec({0, 1})), Chirality::Right});
    }
    CHECK(twist_action(w, p) == MatZ::Identity(2, 2));
}

TEST_CASE("twist action preserves the intersection form") {
    std::mt19937 rng(77001);
    std::uniform_int_distribution<Index> dim(0, 6);
    for (int trial = 0; trial < 120; ++trial) {
        const Index n = dim(rng);
        Page p = planar_page(random_skew(rng, n));
        TwistWord w = random_word(rng, n, 1 + trial % 7);
        MatZ m = twist_action(w, p);
        CHECK(m.transpose() * p.intersection_form * m == p.intersection_form);
    }
}

TEST_CASE("twist action is a word homomorphism") {
    std::mt19937 rng(77002);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = 2 + trial % 4;
        Page p = planar_page(random_skew(rng, n));
        TwistWord w1 = random_word(rng, n, 1 + trial % 3);
        TwistWord w2 = random_word(rng, n, 1 + (trial / 3) % 3);
        TwistWord joined = w1;
        joined.letters.insert(joined.letters.end(), w2.letters.begin(), w2.letters.end());
        CHECK(twist_action(joined, p) == twist_action(w2, p) * twist_action(w1, p));
    }
}

TEST_CASE("intersection numbers come from the form") {
    Page p = punctured_torus();
    Curve a = curve("a", vec({1, 0}));
    Curve b = curve("b", vec({0, 1}));
    CHECK(intersection_number(p, a, b) == 1);
    CHECK(intersection_number(p, b, a) == -1);
    CHECK(intersection_number(p, a, a) == 0);

    Curve off = curve("x", vec({1, 0, 0}));
    CHECK_THROWS_AS(intersection_number(p, a, off), PreconditionError);
}

TEST_CASE("page framing reads the recorded offset") {
    Page p = punctured_torus();
    CHECK(page_framing(p, curve("a", vec({1, 0}), -1)) == -1);
    CHECK_THROWS_AS(page_framing(p, curve("a", vec({1, 0}))), PreconditionError);
}

TEST_CASE("plumbing adds an unpaired core and one letter") {
    OpenBook ob;
    ob.page = punctured_torus();
    ob.monodromy.letters.push_back({curve("a", vec({1, 0})), Chirality::Right});

    OpenBook pos = plumb_hopf_band(ob, true, 0);
    CHECK(pos.page.h1_rank() == 3);
    CHECK(pos.page.boundary_count == 2);
    CHECK(pos.page.genus == 1);
    CHECK(pos.page.intersection_form.row(2).isZero());
    CHECK(pos.page.intersection_form.col(2).isZero());
    CHECK(pos.page.intersection_form(0, 1) == 1);
    CHECK(pos.monodromy.letters.size() == 2);
    const TwistLetter& core = pos.monodromy.letters.back();
    CHECK(core.chirality == Chirality::Right);
    CHECK(core.curve.kind == CurveKind::StabilizationCore);
    CHECK(core.curve.homology == vec({0, 0, 1}));
    CHECK(page_framing(pos.page, core.curve) == -1);
    // old letters keep their classes under the inclusion
    CHECK(pos.monodromy.letters[0].curve.homology == vec({1, 0, 0}));

    OpenBook neg = plumb_hopf_band(ob, false, 0);
    CHECK(neg.monodromy.letters.back().chirality == Chirality::Left);
    CHECK(page_framing(neg.page, neg.monodromy.letters.back().curve) == 1);

    CHECK_THROWS_AS(plumb_hopf_band(ob, true, 5), PreconditionError);
    CHECK_THROWS_AS(plumb_hopf_band(ob, true, -1), PreconditionError);
}

TEST_CASE("plumb then destabilize is the identity") {
    std::mt19937 rng(77003);
    for (int trial = 0; trial < 60; ++trial) {
        const Index n = trial % 5;
        OpenBook ob;
        ob.page = planar_page(random_skew(rng, n));
        ob.monodromy = random_word(rng, n, trial % 4);
        std::uniform_int_distribution<Index> site(0, ob.page.boundary_count - 1);
        OpenBook grown = plumb_hopf_band(ob, true, site(rng));
        OpenBook back = destabilize(grown, grown.monodromy.letters.back().curve);
        CHECK(open_books_equal(back, ob));
    }
}

TEST_CASE("destabilize checks its preconditions") {
    OpenBook ob;
    ob.page = punctured_torus();
    OpenBook grown = plumb_hopf_band(ob, true, 0);
    const Curve core = grown.monodromy.letters.back().curve;

    CHECK_THROWS_AS(destabilize(grown, curve("z", vec({0, 0, 0}), -1)), PreconditionError);
    CHECK_THROWS_AS(destabilize(grown, curve("z", vec({0, 0, 2}), -1)), PreconditionError);
    CHECK_THROWS_AS(destabilize(grown, curve("a", vec({1, 0, 0}), 0)), PreconditionError);

    // a left-twisted band cannot be removed
    OpenBook neg = plumb_hopf_band(ob, false, 0);
    CHECK_THROWS_AS(destabilize(neg, neg.monodromy.letters.back().curve), PreconditionError);

    // a letter running through the band blocks the cut
    OpenBook blocked = grown;
    blocked.monodromy.letters.insert(blocked.monodromy.letters.begin(),
                                     {curve("x", vec({1, 0, 1})), Chirality::Right});
    CHECK_THROWS_AS(destabilize(blocked, core), PreconditionError);
}

TEST_CASE("destabilize along a non-axis primitive class") {
    // rank-2 page with zero form: two plumbed bands viewed in a skew basis
    OpenBook ob;
    ob.page = planar_page(MatZ::Zero(2, 2));
    Curve diag = curve("d", vec({1, 1}), -1);
    ob.monodromy.letters.push_back({diag, Chirality::Right});
    OpenBook cut = destabilize(ob, diag);
    CHECK(cut.page.h1_rank() == 1);
    CHECK(cut.page.boundary_count == 2);
    CHECK(cut.monodromy.letters.empty());
}

TEST_CASE("destabilizing the last band on a planar page trades boundary for genus") {
    OpenBook disk;
    disk.page.intersection_form = MatZ::Zero(0, 0);
    OpenBook grown = plumb_hopf_band(disk, true, 0);
    CHECK(grown.page.boundary_count == 2);
    OpenBook back = destabilize(grown, grown.monodromy.letters.back().curve);
    CHECK(back.page.boundary_count == 1);
    CHECK(back.page.genus == 0);
    CHECK(back.page.h1_rank() == 0);
}

TEST_CASE("homology equivalence compares actions exactly") {
    OpenBook x, y;
    x.page = y.page = punctured_torus();
    x.monodromy.letters.push_back({curve("a", vec({1, 0})), Chirality::Right});
    x.monodromy.letters.push_back({curve("a", vec({1, 0})), Chirality::Left});
    CHECK(homology_equivalent(x, y));  // cancelling pair acts trivially

    y.monodromy.letters.push_back({curve("b", vec({0, 1})), Chirality::Right});
    CHECK_FALSE(homology_equivalent(x, y));

    OpenBook z;
    z.page = planar_page(MatZ::Zero(2, 2));
    CHECK_FALSE(homology_equivalent(x, z));  // type differs even with equal rank
}

TEST_CASE("serialization is stable and complete") {
    OpenBook ob;
    ob.page = punctured_torus();
    ob.page.holes = {"s_k.gamma"};
    ob.page.boundary_count = 1;
    ob.page.genus = 1;
    ob.page.basis_ids = {"a", "b", "pi"};
    MatZ j = MatZ::Zero(3, 3);
    j(0, 1) = 1;
    j(1, 0) = -1;
    ob.page.intersection_form = j;
    ob.monodromy.letters.push_back({curve("a", vec({1, 0, 0})), Chirality::Right});
    ob.monodromy.letters.push_back({curve("k", vec({0, 0, 0})), Chirality::Left});

    CHECK(serialize_open_book(ob) ==
          "page genus=1 boundary=1 holes=s_k.gamma\n"
          "basis 3\n"
          "form 0 1 0\n"
          "form -1 0 0\n"
          "form 0 0 0\n"
          "twist a R\n"
          "twist k L\n");
}

#include <doctest.h>

#include "k3mirror/error.hpp"
#include "k3mirror/fixedlocus.hpp"
#include "k3mirror/lattices.hpp"

using namespace k3;

namespace {

InvertiblePolynomial poly(const std::string& s) { return parse_polynomial(s).poly; }

SymmetryGroup group_of_index(const InvertiblePolynomial& W, long long index) {
    auto J = j_group(W.matrix, W.ws);
    auto SL = sl_subgroup(full_group(W.matrix));
    for (const auto& G : subgroups_between(J, SL))
        if (G.order() / J.order() == index) return G;
    throw Error(ErrorCode::InvalidPair, "no subgroup of that index");
}

SymmetryGroup group_with(const InvertiblePolynomial& W, const std::string& gen) {
    auto J = j_group(W.matrix, W.ws);
    auto gens = J.gens;
    gens.push_back(parse_vec4(gen));
    return subgroup_generated(W.matrix, gens);
}

} // namespace

TEST_CASE("representatives") {
    auto reps = representatives(parse_vec4("0,1/3,0,0"), WeightSystem{{12, 8, 3, 1}, 24});
    bool found = false;
    for (const auto& r : reps)
        if (r.value == parse_vec4("0,0,0,1/3")) found = true;
    CHECK(found);

    auto reps5 = representatives(parse_vec4("0,1/5,0,0"), WeightSystem{{5, 2, 2, 1}, 10});
    found = false;
    for (const auto& r : reps5)
        if (r.value == parse_vec4("0,0,4/5,2/5")) found = true;
    CHECK(found);

    // identity: every representative is a torsion point of the weight direction
    auto reps0 = representatives(Vec4{}, WeightSystem{{12, 8, 3, 1}, 24});
    bool zero_found = false;
    for (const auto& r : reps0) {
        CHECK(!r.zero_support.empty());
        if (vzero(r.value)) zero_found = true;
    }
    CHECK(zero_found);
}

TEST_CASE("curve genus formula") {
    CHECK(curve_genus(24, 12, 3, 1) == 3);
    CHECK(curve_genus(24, 12, 8, 3) == 0);
    CHECK(curve_genus(10, 5, 2, 1) == 2);
    CHECK(curve_genus(6, 2, 1, 1) == 4);
    CHECK_THROWS_AS(curve_genus(3, 2, 2, 2), Error);
}

TEST_CASE("ambient singularities") {
    auto sings = ambient_singularities(poly("x^2+y^3+z^8+w^24"));
    REQUIRE(sings.size() == 2);
    long long a3 = 0, a2 = 0;
    for (const auto& s : sings) {
        if (s.isotropy == 4) a3 += s.count;       // A3
        if (s.isotropy == 3) a2 += s.count;       // A2
        CHECK(s.exceptional_curve_count() == s.isotropy - 1);
    }
    CHECK(a3 == 1);
    CHECK(a2 == 2);

    auto s5 = ambient_singularities(poly("x^2+y^5+z^5+x*w^5"));
    REQUIRE(s5.size() == 1);
    CHECK(s5[0].isotropy == 2); // A1
    CHECK(s5[0].count == 5);

    auto st = ambient_singularities(poly("x^2*w+y^5+z^5+w^5"));
    REQUIRE(st.size() == 1);
    CHECK(st[0].isotropy == 2);
    CHECK(st[0].count == 1);
    CHECK(st[0].type() == "A1");
}

TEST_CASE("symplectic fixed points") {
    auto W = poly("x^2+y^3+z^8+w^24");
    auto SL = group_of_index(W, 2);
    auto pts = symplectic_fixed_points(W, SL);
    long long total = 0;
    for (const auto& s : pts) {
        CHECK(s.isotropy == 2); // order-2 element: A1 quotient points
        total += s.count;
    }
    CHECK(total == 8);

    auto V = poly("x^2+y^5+z^5+x*w^5");
    auto SLV = group_of_index(V, 5);
    auto vpts = symplectic_fixed_points(V, SLV);
    long long vtotal = 0, curves = 0;
    for (const auto& s : vpts) {
        CHECK(s.isotropy == 5); // 4A4
        vtotal += s.count;
        curves += s.count * s.exceptional_curve_count();
    }
    CHECK(vtotal == 4);
    CHECK(curves == 16);

    CHECK(symplectic_fixed_points(V, group_of_index(V, 1)).empty());
}

TEST_CASE("riemann-hurwitz") {
    CHECK(riemann_hurwitz(3, 2, {}) == 2);
    CHECK(riemann_hurwitz(0, 2, {2, 2}) == 0);
    for (long long g : {0, 1, 2, 5}) CHECK(riemann_hurwitz(g, 1, {}) == g);
    CHECK_THROWS_AS(riemann_hurwitz(0, 2, {2, 2, 2, 2}), Error);
    CHECK_THROWS_AS(riemann_hurwitz(1, 3, {2}), Error);
}

TEST_CASE("invariants from (g,n,k)") {
    auto a = invariants_from_gnk(3, {3, 3, 2});
    CHECK(a.r == 8);
    CHECK(a.a == 1);
    CHECK(a.m == 7);
    CHECK(a.mu == 12);

    auto b = invariants_from_gnk(5, {2, 1, 0});
    CHECK(b.r == 2);
    CHECK(b.a == 1);

    auto c = invariants_from_gnk(5, {0, 13, 2});
    CHECK(c.r == 18);
    CHECK(c.a == 1);

    auto d = invariants_from_gnk(13, {0, 9, 0});
    CHECK(d.r == 10);
    CHECK(d.a == 1);

    CHECK_THROWS_AS(invariants_from_gnk(13, {1, 9, 0}), Error);
    CHECK_THROWS_AS(invariants_from_gnk(3, {3, 4, 2}), Error); // n breaks the formula
}

TEST_CASE("classification rows are formula-consistent") {
    for (const auto& row : classification_rows()) {
        if (!row.g.has_value()) continue; // the points-only rows carry no (g,k)
        auto li = invariants_from_gnk(row.p, {*row.g, row.n, *row.k});
        CHECK(li.r == row.r);
        CHECK(li.a == row.a);
    }
}

TEST_CASE("resolve: No. 13d") {
    auto W = poly("x^2+y^3+z^8+w^24");
    auto [fJ, liJ] = resolve_fixed_locus(W, group_of_index(W, 1), 3);
    CHECK(fJ.g == 3);
    CHECK(fJ.n == 3);
    CHECK(fJ.k == 2);
    CHECK(liJ.r == 8);
    CHECK(liJ.a == 1);

    ResolveDetail det;
    auto [fSL, liSL] = resolve_fixed_locus(W, group_of_index(W, 2), 3, &det);
    CHECK(fSL.g == 2);
    CHECK(fSL.n == 5);
    CHECK(fSL.k == 3); // the classification row (12,1) pins k=3
    CHECK(liSL.r == 12);
    CHECK(liSL.a == 1);
    CHECK(det.curves.size() == 2); // y=0 and w=0 descend to fixed curves
}

TEST_CASE("resolve: Nos. 6c and 21a") {
    auto W = poly("x^2+y^5+z^5+x*w^5");
    auto [fJ, liJ] = resolve_fixed_locus(W, group_of_index(W, 1), 5);
    CHECK(fJ.g == 2);
    CHECK(fJ.n == 1);
    CHECK(fJ.k == 0);
    CHECK(liJ.r == 2);
    CHECK(liJ.a == 1);

    auto [fSL, liSL] = resolve_fixed_locus(W, group_of_index(W, 5), 5);
    CHECK(fSL.g == 0);
    CHECK(fSL.n == 13);
    CHECK(fSL.k == 2);
    CHECK(liSL.r == 18);

    auto Wt = poly("x^2*w+y^5+z^5+w^5");
    auto [ftJ, litJ] = resolve_fixed_locus(Wt, group_of_index(Wt, 1), 5);
    CHECK(ftJ.g == 2);
    CHECK(litJ.r == 2);
    auto [ftS, litS] = resolve_fixed_locus(Wt, group_of_index(Wt, 5), 5);
    CHECK(ftS.n == 13);
    CHECK(litS.r == 18);
}

TEST_CASE("resolve: No. 3a subgroup table") {
    auto W = poly("x^3+y^3+z^6+w^6");
    auto check = [&](const char* gen, int r, int a) {
        auto [f, li] = resolve_fixed_locus(W, group_with(W, gen), 3);
        CHECK(li.r == r);
        CHECK(li.a == a);
    };
    check("2/3,1/3,0,0", 14, 4);
    check("1/3,1/3,1/3,0", 6, 4);
    check("2/3,0,1/3,0", 10, 4);
    check("0,2/3,1/3,0", 10, 4);

    auto [fJ, liJ] = resolve_fixed_locus(W, group_of_index(W, 1), 3);
    CHECK(liJ.r == 2);
    CHECK(liJ.a == 2);
    auto [fSL, liSL] = resolve_fixed_locus(W, group_of_index(W, 9), 3);
    CHECK(liSL.r == 18);
    CHECK(liSL.a == 2);
}

TEST_CASE("resolve: p=13") {
    auto W = poly("x^2*z+x*y^2+y*z^3+w^13");
    auto [f, li] = resolve_fixed_locus(W, group_of_index(W, 1), 13);
    CHECK(f.g == 0);
    CHECK(f.n == 9);
    CHECK(f.k == 0);
    CHECK(li.r == 10);
    CHECK(li.a == 1);
}

TEST_CASE("resolve rejects invalid pairs") {
    auto W = poly("x^2+y^3+z^8+w^24");
    CHECK_THROWS_AS(resolve_fixed_locus(W, group_of_index(W, 1), 5), Error);

    auto full = full_group(W.matrix); // not inside SL_W
    CHECK_THROWS_AS(resolve_fixed_locus(W, full, 3), Error);
}

#include <doctest.h>

#include <set>
#include <vector>

#include "k3mirror/error.hpp"
#include "k3mirror/invpoly.hpp"

using namespace k3;

namespace {

ExponentMatrix diag(long long a, long long b, long long c, long long d) {
    ExponentMatrix m{};
    m[0][0] = a;
    m[1][1] = b;
    m[2][2] = c;
    m[3][3] = d;
    return m;
}

bool has_block(const AtomicDecomposition& dec, BlockKind kind, std::vector<int> vars,
               std::vector<long long> exps) {
    for (const auto& b : dec.blocks) {
        if (b.kind != kind) continue;
        if (b.vars == vars && b.exps == exps) return true;
        // loops are defined up to cyclic rotation
        if (kind == BlockKind::Loop && b.vars.size() == vars.size()) {
            size_t n = vars.size();
            for (size_t s = 1; s < n; ++s) {
                std::vector<int> rv;
                std::vector<long long> re;
                for (size_t i = 0; i < n; ++i) {
                    rv.push_back(b.vars[(i + s) % n]);
                    re.push_back(b.exps[(i + s) % n]);
                }
                if (rv == vars && re == exps) return true;
            }
        }
    }
    return false;
}

} // namespace

TEST_CASE("decompose examples") {
    auto fermats = decompose(diag(2, 3, 8, 24));
    CHECK(fermats.blocks.size() == 4);
    for (const auto& b : fermats.blocks) CHECK(b.kind == BlockKind::Fermat);

    auto W = parse_polynomial("x^2+y^5+z^5+x*w^5").poly;
    auto dec = W.decomposition;
    CHECK(has_block(dec, BlockKind::Fermat, {1}, {5}));
    CHECK(has_block(dec, BlockKind::Fermat, {2}, {5}));
    CHECK(has_block(dec, BlockKind::Chain, {3, 0}, {5, 2}));

    auto L = parse_polynomial("x^3+y^3*z+y*z^3+w^6").poly;
    CHECK(has_block(L.decomposition, BlockKind::Fermat, {0}, {3}));
    CHECK(has_block(L.decomposition, BlockKind::Fermat, {3}, {6}));
    CHECK(has_block(L.decomposition, BlockKind::Loop, {1, 2}, {3, 3}));
}

TEST_CASE("decompose rejects non-atomic data") {
    ExponentMatrix bad = diag(2, 3, 8, 24);
    bad[0][1] = 2; // x^2 y^2 is not an atomic monomial
    CHECK_THROWS_AS(decompose(bad), Error);

    ExponentMatrix low = diag(1, 3, 8, 24); // exponent below 2
    CHECK_THROWS_AS(decompose(low), Error);
}

TEST_CASE("weights from matrix") {
    CHECK(weights_from_matrix(diag(2, 3, 8, 24)) == WeightSystem{{12, 8, 3, 1}, 24});
    auto Wt = parse_polynomial("x^2*w+y^5+z^5+w^5").poly;
    CHECK(Wt.ws == WeightSystem{{2, 1, 1, 1}, 5});
    CHECK(weights_from_matrix(diag(7, 7, 7, 7)) == WeightSystem{{1, 1, 1, 1}, 7});
}

TEST_CASE("transpose") {
    auto W = parse_polynomial("x^2+y^3+z^8+w^24").poly;
    CHECK(transpose(W) == W); // symmetric exponent matrix

    auto A = parse_polynomial("x^2+y^5+z^5+x*w^5").poly;
    auto B = parse_polynomial("x^2*w+y^5+z^5+w^5").poly;
    CHECK(transpose(A) == B);
    CHECK(transpose(B) == A);
}

TEST_CASE("transpose is an involution on all table polynomials") {
    for (int p : {3, 5, 7, 13}) {
        for (const auto& fam : admissible_families(p)) {
            for (const auto& W : enumerate_form_p(fam.ws, p)) {
                CHECK(transpose(transpose(W)) == W);
                CHECK(is_calabi_yau(transpose(W).ws));
            }
        }
    }
}

TEST_CASE("enumerate_form_p on (5,4,3,3;15)") {
    WeightSystem ws{{5, 4, 3, 3}, 15};
    auto p3 = enumerate_form_p(ws, 3);
    REQUIRE(p3.size() == 2);
    std::set<ExponentMatrix> got = {p3[0].matrix, p3[1].matrix};
    std::set<ExponentMatrix> want = {parse_polynomial("x^3+y^3*z+z^4*w+w^5").poly.matrix,
                                     parse_polynomial("x^3+y^3*z+z^5+w^5").poly.matrix};
    CHECK(got == want);

    auto p5 = enumerate_form_p(ws, 5);
    REQUIRE(p5.size() == 1);
    CHECK(p5[0].matrix == parse_polynomial("x^3+y^3*z+z^5+w^5").poly.matrix);
}

TEST_CASE("enumerate_form_p for No. 14 at p=7") {
    auto polys = enumerate_form_p(WeightSystem{{21, 14, 6, 1}, 42}, 7);
    std::set<ExponentMatrix> got;
    for (const auto& W : polys) got.insert(W.matrix);
    CHECK(got.count(parse_polynomial("x^2+y^3+z^7+w^42").poly.matrix));
    CHECK(got.count(parse_polynomial("x^2+y^3+z^7+x*w^21").poly.matrix));
    CHECK(got.count(parse_polynomial("x^2+y^3+z^7+y*w^28").poly.matrix));
    CHECK(polys.size() == 3);
}

TEST_CASE("enumerate_form_p for No. 13 at p=3 gives the five table rows") {
    auto polys = enumerate_form_p(WeightSystem{{12, 8, 3, 1}, 24}, 3);
    CHECK(polys.size() == 5);
    for (const auto& W : polys) CHECK(weights_from_matrix(W.matrix) == W.ws);
}

TEST_CASE("weights_from_matrix inverts enumeration") {
    for (int p : {3, 5, 7, 13}) {
        for (const auto& fam : admissible_families(p)) {
            for (const auto& W : enumerate_form_p(fam.ws, p)) {
                CHECK(weights_from_matrix(W.matrix) == fam.ws);
            }
        }
    }
}

TEST_CASE("parser and printer round-trip") {
    for (int p : {3, 5, 7, 13}) {
        for (const auto& fam : admissible_families(p)) {
            for (const auto& W : enumerate_form_p(fam.ws, p)) {
                auto back = parse_polynomial(W.str()).poly;
                CHECK(back == W);
            }
        }
    }
    CHECK_THROWS_AS(parse_polynomial("x^2+y^3"), Error);
    CHECK_THROWS_AS(parse_polynomial("x^2+q^3+z^4+w^5"), Error);
}

TEST_CASE("sigma slot") {
    auto W = parse_polynomial("x^2+y^3+z^8+w^24").poly; // (12,8,3,1;24)
    CHECK(sigma_slot(W, 3) == 1);
    auto V = parse_polynomial("x^3+y^3+z^6+w^6").poly; // (2,2,1,1;6)
    CHECK(sigma_slot(V, 3) == 0);
    CHECK_THROWS_AS(sigma_slot(W, 5), Error);
}

TEST_CASE("transpose maps blocks to blocks with chains reversed") {
    auto shape = [](const InvertiblePolynomial& W) {
        // relabeling-invariant block signatures
        std::multiset<std::pair<int, std::vector<long long>>> sig;
        for (const auto& b : W.decomposition.blocks) {
            std::vector<long long> exps = b.exps;
            if (b.kind == BlockKind::Loop) {
                // canonical cyclic class of the exponent cycle, both directions
                std::vector<long long> best = exps;
                for (int dir = 0; dir < 2; ++dir) {
                    auto e = exps;
                    if (dir) std::reverse(e.begin(), e.end());
                    for (size_t s = 0; s < e.size(); ++s) {
                        std::rotate(e.begin(), e.begin() + 1, e.end());
                        if (e < best) best = e;
                    }
                }
                exps = best;
            }
            sig.insert({(int)b.kind, exps});
        }
        return sig;
    };
    for (int p : {3, 5, 7, 13}) {
        for (const auto& fam : admissible_families(p)) {
            for (const auto& W : enumerate_form_p(fam.ws, p)) {
                auto Wt = transpose(W);
                std::multiset<std::pair<int, std::vector<long long>>> expect;
                for (const auto& b : W.decomposition.blocks) {
                    auto exps = b.exps;
                    if (b.kind == BlockKind::Chain) std::reverse(exps.begin(), exps.end());
                    if (b.kind == BlockKind::Loop) {
                        std::vector<long long> best = exps;
                        for (int dir = 0; dir < 2; ++dir) {
                            auto e = exps;
                            if (dir) std::reverse(e.begin(), e.end());
                            for (size_t s = 0; s < e.size(); ++s) {
                                std::rotate(e.begin(), e.begin() + 1, e.end());
                                if (e < best) best = e;
                            }
                        }
                        exps = best;
                    }
                    expect.insert({(int)b.kind, exps});
                }
                CHECK(shape(Wt) == expect);
            }
        }
    }
}

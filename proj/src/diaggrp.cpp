#include "k3mirror/diaggrp.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <sstream>

#include "k3mirror/error.hpp"

namespace k3 {

namespace {

std::array<std::array<Rat, 4>, 4> invert4(const ExponentMatrix& m) {
    std::array<std::array<Rat, 8>, 4> t{};
    for (int i = 0; i < 4; ++i) {
        for (int j = 0; j < 4; ++j) t[i][j] = Rat(m[i][j]);
        t[i][4 + i] = Rat(1);
    }
    for (int col = 0; col < 4; ++col) {
        int piv = -1;
        for (int r = col; r < 4; ++r)
            if (t[r][col].num != 0) { piv = r; break; }
        if (piv < 0) raise(ErrorCode::NotInvertible, "singular exponent matrix");
        std::swap(t[col], t[piv]);
        Rat inv = Rat(1) / t[col][col];
        for (int j = 0; j < 8; ++j) t[col][j] = t[col][j] * inv;
        for (int r = 0; r < 4; ++r) {
            if (r == col || t[r][col].num == 0) continue;
            Rat f = t[r][col];
            for (int j = 0; j < 8; ++j) t[r][j] = t[r][j] - f * t[col][j];
        }
    }
    std::array<std::array<Rat, 4>, 4> inv;
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) inv[i][j] = t[i][4 + j];
    return inv;
}

std::vector<Vec4> closure(const std::vector<Vec4>& gens) {
    std::set<Vec4> elems;
    Vec4 zero{};
    elems.insert(zero);
    std::vector<Vec4> frontier = {zero};
    while (!frontier.empty()) {
        std::vector<Vec4> next;
        for (const auto& e : frontier) {
            for (const auto& g : gens) {
                Vec4 s = vadd(e, g);
                if (elems.insert(s).second) next.push_back(s);
            }
        }
        frontier = std::move(next);
    }
    return std::vector<Vec4>(elems.begin(), elems.end());
}

} // namespace

bool SymmetryGroup::contains(const Vec4& v) const {
    return std::binary_search(elements.begin(), elements.end(), v);
}

bool SymmetryGroup::subgroup_of(const SymmetryGroup& o) const {
    for (const auto& e : elements)
        if (!o.contains(e)) return false;
    return true;
}

bool in_diagonal_group(const ExponentMatrix& A, const Vec4& g) {
    for (int i = 0; i < 4; ++i) {
        Rat s(0);
        for (int j = 0; j < 4; ++j) s = s + Rat(A[i][j]) * g[j];
        if (!s.is_integer()) return false;
    }
    return true;
}

SymmetryGroup full_group(const ExponentMatrix& A) {
    auto inv = invert4(A);
    std::vector<Vec4> gens;
    for (int j = 0; j < 4; ++j) {
        Vec4 col;
        for (int i = 0; i < 4; ++i) col[i] = inv[i][j].mod1();
        gens.push_back(col);
    }
    SymmetryGroup G;
    G.host = A;
    G.elements = closure(gens);
    G.gens = gens;
    long long det = det4(A);
    if (det < 0) det = -det;
    if ((long long)G.elements.size() != det)
        raise(ErrorCode::Inconsistent, "group order does not match |det A|");
    return G;
}

Vec4 grading_operator(const WeightSystem& ws) {
    Vec4 j;
    for (int i = 0; i < 4; ++i) j[i] = Rat(ws.w[i], ws.d).mod1();
    return j;
}

SymmetryGroup subgroup_generated(const ExponentMatrix& host, const std::vector<Vec4>& gens) {
    for (const auto& g : gens)
        if (!in_diagonal_group(host, g))
            raise(ErrorCode::InvalidPair, "generator not a diagonal symmetry of the host");
    SymmetryGroup G;
    G.host = host;
    G.elements = closure(gens);
    G.gens = gens;
    return G;
}

SymmetryGroup sl_subgroup(const SymmetryGroup& G) {
    SymmetryGroup S;
    S.host = G.host;
    for (const auto& e : G.elements) {
        Rat s = e[0] + e[1] + e[2] + e[3];
        if (s.is_integer()) S.elements.push_back(e);
    }
    // greedy generator list
    std::vector<Vec4> gens;
    SymmetryGroup H;
    H.host = G.host;
    H.elements = {Vec4{}};
    for (const auto& e : S.elements) {
        if (H.contains(e)) continue;
        gens.push_back(e);
        H.elements = closure(gens);
        std::sort(H.elements.begin(), H.elements.end());
        if (H.elements.size() == S.elements.size()) break;
    }
    S.gens = gens;
    return S;
}

SymmetryGroup j_group(const ExponentMatrix& host, const WeightSystem& ws) {
    return subgroup_generated(host, {grading_operator(ws)});
}

std::vector<SymmetryGroup> subgroups_between(const SymmetryGroup& J, const SymmetryGroup& S) {
    if (!J.subgroup_of(S)) raise(ErrorCode::InvalidPair, "J is not a subgroup of S");

    // cosets of J in S, keyed by the minimal element of each coset
    std::map<Vec4, std::vector<Vec4>> cosets; // key -> whole coset
    std::map<Vec4, Vec4> key_of;              // element -> coset key
    for (const auto& s : S.elements) {
        if (key_of.count(s)) continue;
        Vec4 key = s;
        std::vector<Vec4> members;
        for (const auto& j : J.elements) {
            Vec4 e = vadd(s, j);
            members.push_back(e);
            if (e < key) key = e;
        }
        for (const auto& e : members) key_of[e] = key;
        cosets[key] = members;
    }

    std::vector<Vec4> keys;
    for (const auto& [k, v] : cosets) keys.push_back(k);
    auto add_keys = [&](const Vec4& a, const Vec4& b) { return key_of.at(vadd(a, b)); };

    // all subgroups of the quotient by closing key-sets under addition
    std::set<std::set<Vec4>> subs;
    std::set<Vec4> triv = {key_of.at(Vec4{})};
    subs.insert(triv);
    std::vector<std::set<Vec4>> frontier = {triv};
    while (!frontier.empty()) {
        std::vector<std::set<Vec4>> next;
        for (const auto& H : frontier) {
            for (const auto& k : keys) {
                if (H.count(k)) continue;
                std::set<Vec4> C = H;
                std::vector<Vec4> queue = {k};
                C.insert(k);
                while (!queue.empty()) {
                    Vec4 q = queue.back();
                    queue.pop_back();
                    for (const auto& h : std::vector<Vec4>(C.begin(), C.end())) {
                        Vec4 s = add_keys(q, h);
                        if (C.insert(s).second) queue.push_back(s);
                    }
                }
                if (subs.insert(C).second) next.push_back(C);
            }
        }
        frontier = std::move(next);
    }

    std::vector<SymmetryGroup> out;
    for (const auto& ksub : subs) {
        SymmetryGroup G;
        G.host = S.host;
        for (const auto& k : ksub)
            for (const auto& e : cosets.at(k)) G.elements.push_back(e);
        std::sort(G.elements.begin(), G.elements.end());
        // deterministic generators: j_W-style base generators of J, then greedy minimal
        std::vector<Vec4> gens = J.gens;
        SymmetryGroup H;
        H.host = S.host;
        H.elements = closure(gens);
        std::sort(H.elements.begin(), H.elements.end());
        for (const auto& e : G.elements) {
            if (H.elements.size() == G.elements.size()) break;
            if (H.contains(e)) continue;
            gens.push_back(e);
            H.elements = closure(gens);
            std::sort(H.elements.begin(), H.elements.end());
        }
        G.gens = gens;
        out.push_back(std::move(G));
    }
    std::sort(out.begin(), out.end(), [](const SymmetryGroup& a, const SymmetryGroup& b) {
        if (a.elements.size() != b.elements.size()) return a.elements.size() < b.elements.size();
        return a.elements < b.elements;
    });
    return out;
}

SymmetryGroup dual_group(const SymmetryGroup& G, const ExponentMatrix& A) {
    ExponentMatrix At{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) At[i][j] = A[j][i];
    SymmetryGroup GWt = full_group(At);

    // pairing g.A.h^T; integrality on a generating set of G suffices
    std::vector<Vec4> gens = G.gens.empty() ? G.elements : G.gens;
    auto pairs_integrally = [&](const Vec4& g) {
        for (const auto& h : gens) {
            Rat s(0);
            for (int i = 0; i < 4; ++i)
                for (int j = 0; j < 4; ++j) s = s + g[i] * Rat(A[i][j]) * h[j];
            if (!s.is_integer()) return false;
        }
        return true;
    };

    SymmetryGroup D;
    D.host = At;
    for (const auto& g : GWt.elements)
        if (pairs_integrally(g)) D.elements.push_back(g);
    std::sort(D.elements.begin(), D.elements.end());
    std::vector<Vec4> dgens;
    SymmetryGroup H;
    H.host = At;
    H.elements = {Vec4{}};
    for (const auto& e : D.elements) {
        if ((long long)H.elements.size() == (long long)D.elements.size()) break;
        if (H.contains(e)) continue;
        dgens.push_back(e);
        H.elements = closure(dgens);
        std::sort(H.elements.begin(), H.elements.end());
    }
    D.gens = dgens;
    return D;
}

std::vector<Vec4> parse_group_literal(const std::string& text) {
    std::vector<Vec4> gens;
    std::stringstream ss(text);
    std::string part;
    while (std::getline(ss, part, ';')) {
        if (part.empty()) continue;
        gens.push_back(parse_vec4(part));
    }
    if (gens.empty()) raise(ErrorCode::ParseError, "empty group literal");
    return gens;
}

std::string group_literal(const std::vector<Vec4>& gens) {
    std::ostringstream os;
    for (size_t i = 0; i < gens.size(); ++i) {
        if (i) os << ";";
        os << vec4_str(gens[i]);
    }
    return os.str();
}

} // namespace k3

#pragma once

#include <string>
#include <vector>

#include "k3mirror/invpoly.hpp"
#include "k3mirror/rational.hpp"

namespace k3 {

// Finite subgroup of (Q/Z)^4 with a host exponent matrix for membership.
// Elements are fully enumerated and sorted; equality is element-set equality.
struct SymmetryGroup {
    ExponentMatrix host{};
    std::vector<Vec4> elements; // sorted, contains 0
    std::vector<Vec4> gens;     // a generating set (reporting)

    long long order() const { return (long long)elements.size(); }
    bool contains(const Vec4& v) const;
    bool subgroup_of(const SymmetryGroup& o) const;
    bool operator==(const SymmetryGroup& o) const { return elements == o.elements; }
};

// True iff A*g integral componentwise.
bool in_diagonal_group(const ExponentMatrix& A, const Vec4& g);

// Group generated by the columns of A^{-1}; order == |det A|.
SymmetryGroup full_group(const ExponentMatrix& A);

// j_W = (w1/d,...,w4/d).
Vec4 grading_operator(const WeightSystem& ws);

SymmetryGroup subgroup_generated(const ExponentMatrix& host, const std::vector<Vec4>& gens);

// Elements with integral coordinate sum.
SymmetryGroup sl_subgroup(const SymmetryGroup& G);

// J_W as a SymmetryGroup over the given host.
SymmetryGroup j_group(const ExponentMatrix& host, const WeightSystem& ws);

// All subgroups J <= G <= S, ordered by (|G/J|, element list). Each carries a
// deterministic generator list (greedy minimal elements extending J).
std::vector<SymmetryGroup> subgroups_between(const SymmetryGroup& J, const SymmetryGroup& S);

// G^T = { g in G_{W^T} : g . A . h^T in Z for all h in G }.
SymmetryGroup dual_group(const SymmetryGroup& G, const ExponentMatrix& A);

// Group literal: semicolon-separated generators, each a comma-separated
// fraction 4-tuple, e.g. "2/3,1/3,0,0;1/3,1/3,1/3,0".
std::vector<Vec4> parse_group_literal(const std::string& text);
std::string group_literal(const std::vector<Vec4>& gens);

} // namespace k3

#pragma once

#include <array>
#include <string>
#include <vector>

#include "k3mirror/weights.hpp"

namespace k3 {

// Row i = exponent vector of monomial i; column j = variable j (x,y,z,w).
using ExponentMatrix = std::array<std::array<long long, 4>, 4>;

enum class BlockKind { Fermat, Chain, Loop };

struct Block {
    BlockKind kind;
    std::vector<int> vars;        // variable slots, chain order v0 -> v1 -> ...
    std::vector<long long> exps;  // head exponents, parallel to vars
};

struct AtomicDecomposition {
    std::vector<Block> blocks;
};

struct InvertiblePolynomial {
    ExponentMatrix matrix{};          // canonical: rows sorted descending-lex
    WeightSystem ws;
    AtomicDecomposition decomposition;

    bool operator==(const InvertiblePolynomial& o) const { return matrix == o.matrix; }
    bool operator<(const InvertiblePolynomial& o) const { return matrix < o.matrix; }
    std::string str() const; // canonical text form, e.g. "x^2*w+y^5+z^5+w^5"
};

long long det4(const ExponentMatrix& m);

// Unique partition into fermat/chain/loop blocks. Errors: NotInvertible.
AtomicDecomposition decompose(const ExponentMatrix& m);

// Normalized weight system from exact row sums of m^{-1}. Errors: NotInvertible.
WeightSystem weights_from_matrix(const ExponentMatrix& m);

// Canonical form: variables relabelled so weights are nonincreasing, ties
// broken by the lexicographically minimal row-sorted matrix; rows sorted
// descending-lex. Returns the polynomial plus the variable permutation used
// (perm[i] = input slot that became canonical slot i).
struct CanonicalResult {
    InvertiblePolynomial poly;
    std::array<int, 4> perm;
};
CanonicalResult canonicalize(const ExponentMatrix& m);

InvertiblePolynomial make_polynomial(const ExponentMatrix& m);

// Transpose polynomial W^T (exponent matrix transposed, re-canonicalized).
InvertiblePolynomial transpose(const InvertiblePolynomial& W);

// All invertible W = x_j^p + f(other three variables) for the given weight
// system, with f over the five 3-variable atomic shapes, deduplicated up to
// weight-preserving variable permutations. Sorted canonically.
std::vector<InvertiblePolynomial> enumerate_form_p(const WeightSystem& ws, int p);

// Text grammar: monomials joined by '+', variables x y z w, '^' exponents,
// juxtaposition or '*' for products.
CanonicalResult parse_polynomial(const std::string& text);

// Slot (canonical variable index) of the standalone Fermat monomial x_j^p with
// p*w_j = d; first such slot in canonical order. Errors: InvalidPair.
int sigma_slot(const InvertiblePolynomial& W, int p);

} // namespace k3

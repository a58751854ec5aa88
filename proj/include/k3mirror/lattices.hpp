#pragma once

#include <optional>
#include <string>
#include <vector>

namespace k3 {

using Gram = std::vector<std::vector<long long>>;

struct Lattice {
    Gram gram;        // square symmetric integral
    std::string label;

    int rank() const { return (int)gram.size(); }
};

struct DiscriminantInvariants {
    std::vector<long long> invariant_factors; // > 1, ascending divisibility
    int length = 0;
    long long order = 1;
    std::optional<std::pair<long long, int>> p_elementary; // (p, a) when all factors equal p
};

// Named constructors. Errors: CongruenceViolation for K_p (p = 3 mod 4 needed)
// and H_p (p = 1 mod 4 needed).
Lattice lattice_U();
Lattice lattice_U_scaled(long long n);
Lattice lattice_A(int n);   // negative definite root lattice A_n
Lattice lattice_E6();
Lattice lattice_E8();
Lattice lattice_K(long long p);
Lattice lattice_H(long long p);
Lattice scale(const Lattice& L, long long n);          // L(n)
Lattice dual_scaled(const Lattice& L, long long n);    // n * gram^{-1}; must land integral and even
Lattice direct_sum(const Lattice& a, const Lattice& b);

// Mini-grammar: tokens U, U(3), A2, A2^5, E6, E8, K7, H5, A2(-1), E6*(3),
// A4*(5) joined by '+'. '^' repeats a summand.
Lattice parse_lattice_expr(const std::string& expr);

long long det_gram(const Gram& g);

// Invariant factors via Smith normal form of the Gram matrix.
DiscriminantInvariants discriminant(const Lattice& L);

// Exact signature (t+, t-) by rational symmetric reduction.
std::pair<int, int> signature(const Lattice& L);

struct ClassificationRow {
    int p = 0;
    int r = 0, a = 0;
    std::optional<int> g, k; // absent for the rows with no fixed curve
    int n = 0;
    std::string T_name, S_name;
};

// The unique Appendix table row for (p,r,a). Errors: NoSuchRow, UnsupportedPrime.
ClassificationRow classify(int p, int r, int a);
const std::vector<ClassificationRow>& classification_rows();

// (20-r, a). Errors: NotMirrorHyperbolic for {(3,20,1),(5,6,4),(7,4,3)}.
std::pair<int, int> mirror_invariants(int p, int r, int a);

// True iff T(p,r,a) matches U + S(p,20-r,a) on (rank, signature, discriminant
// invariant factors). Errors propagate from classify/mirror_invariants.
bool verify_mirror_decomposition(int p, int r, int a);

} // namespace k3

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "k3mirror/diaggrp.hpp"
#include "k3mirror/invpoly.hpp"
#include "k3mirror/rational.hpp"

namespace k3 {

struct TorusRepresentative {
    Vec4 base;
    Rat shift;            // q with value = base + q*(w1..w4) mod Z
    Vec4 value;
    std::vector<int> zero_support;
};

// All representatives gamma + q*w with at least one zero coordinate.
std::vector<TorusRepresentative> representatives(const Vec4& gamma, const WeightSystem& ws);

struct SingularPoint {
    std::string location;  // e.g. "line{z,w}" or "vertex{x}"
    long long isotropy = 1;     // m: local cyclic order, singularity type A_{m-1}
    long long count = 1;        // number of such points on the stratum
    long long exceptional_curve_count() const { return isotropy - 1; }
    std::string type() const { return "A" + std::to_string(isotropy - 1); }
};

struct FixedLocusInvariants {
    int g = 0;
    int n = 0;
    int k = 0;
};

struct LatticeInvariants {
    int p = 0;
    int r = 0;
    int a = 0;
    int m = 0;  // (22-r)/(p-1)
    int mu = 0; // 24/(p-1)
};

// Genus of a quasismooth degree-d curve in P(w1,w2,w3). Errors: NonIntegerGenus.
long long curve_genus(long long d, long long w1, long long w2, long long w3);

// Ambient C*-isotropy singularities of Y_W (A-type points on coordinate
// strata), with per-stratum multiplicities.
std::vector<SingularPoint> ambient_singularities(const InvertiblePolynomial& W);

// Fixed points of the nontrivial elements of G/J_W on X_W, grouped into the
// quotient singularities they produce on X_W / (G/J_W).
std::vector<SingularPoint> symplectic_fixed_points(const InvertiblePolynomial& W,
                                                   const SymmetryGroup& G);

// Genus of the base of a degree-`deg` quotient cover with ramification
// indices `ram` (cover points). Errors: Inconsistent.
long long riemann_hurwitz(long long g_cover, long long deg, const std::vector<long long>& ram);

// (g,n,k) -> (r,a) via the fixed-locus count formulas. Errors: Inconsistent, UnsupportedPrime.
LatticeInvariants invariants_from_gnk(int p, const FixedLocusInvariants& f);

struct FixedCurveInfo {
    int slot = 0;          // curve {x_slot = 0}
    long long genus_upstream = 0;
    long long genus = 0;   // on the quotient
};

struct ChainInfo {
    std::string location;
    long long length = 0;       // number of exceptional curves
    bool left_fixed = false;    // axis curve attached at each end is sigma-fixed
    bool right_fixed = false;
    long long count = 1;
};

struct ResolveDetail {
    Vec4 sigma;
    std::vector<FixedCurveInfo> curves;
    std::vector<ChainInfo> chains;
    long long forced_points = 0;
    std::vector<std::string> notes;
};

// Full geometry pipeline for the p-cyclic pair (W,G): sigma_p-fixed curves and
// their quotient genera, chain and point bookkeeping, candidate (g,n,k)
// intersection with the classification rows. Errors: Ambiguous (diagnostic
// JSON of surviving rows in the message), NoConfiguration, InvalidPair.
std::pair<FixedLocusInvariants, LatticeInvariants>
resolve_fixed_locus(const InvertiblePolynomial& W, const SymmetryGroup& G, int p,
                    ResolveDetail* detail = nullptr);

} // namespace k3

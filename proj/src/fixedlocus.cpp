#include "k3mirror/fixedlocus.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>
#include <sstream>

#include "k3mirror/error.hpp"
#include "k3mirror/lattices.hpp"

namespace k3 {

namespace {

const char kVarNames[4] = {'x', 'y', 'z', 'w'};

// Does tau + q*w vanish on all the given slots for some rational q?
bool fixes_slots(const Vec4& tau, const WeightSystem& ws, const std::vector<int>& slots) {
    int s0 = slots[0];
    for (long long t = 0; t < ws.w[s0]; ++t) {
        Rat q = (Rat(t) - tau[s0]) / Rat(ws.w[s0]);
        bool ok = true;
        for (int s : slots) {
            Rat v = (tau[s] + q * Rat(ws.w[s])).mod1();
            if (v.num != 0) {
                ok = false;
                break;
            }
        }
        if (ok) return true;
    }
    return false;
}

// Number of distinct roots of an integer polynomial (by coefficient vector,
// index = degree): deg f - deg gcd(f, f').
long long distinct_root_count(const std::vector<long long>& coeffs) {
    auto deg = [](const std::vector<Rat>& p) {
        for (int i = (int)p.size() - 1; i >= 0; --i)
            if (p[i].num != 0) return i;
        return -1;
    };
    std::vector<Rat> f(coeffs.size());
    for (size_t i = 0; i < coeffs.size(); ++i) f[i] = Rat(coeffs[i]);
    std::vector<Rat> g(f.size() > 1 ? f.size() - 1 : 1, Rat(0));
    for (size_t i = 1; i < f.size(); ++i) g[i - 1] = Rat((long long)i) * f[i];

    int df = deg(f);
    if (df <= 0) return 0;
    // Euclid
    std::vector<Rat> a = f, b = g;
    while (deg(b) >= 0) {
        int da = deg(a), db = deg(b);
        if (da < db) {
            std::swap(a, b);
            continue;
        }
        Rat lead = a[da] / b[db];
        for (int i = 0; i <= db; ++i) a[da - db + i] = a[da - db + i] - lead * b[i];
        if (deg(a) < deg(b)) std::swap(a, b);
    }
    return df - std::max(deg(a), 0);
}

struct Geometry {
    const InvertiblePolynomial* W = nullptr;
    WeightSystem ws;
    long long torus_points[4][4] = {};   // c_ab for a<b
    bool vertex_on_Y[4] = {};
    int vertex_target[4] = {-1, -1, -1, -1};

    std::string line_name(int a, int b) const {
        return std::string("line{") + kVarNames[a] + kVarNames[b] + "}";
    }
    std::string vertex_name(int a) const {
        return std::string("vertex{") + kVarNames[a] + "}";
    }
};

Geometry build_geometry(const InvertiblePolynomial& W) {
    Geometry geo;
    geo.W = &W;
    geo.ws = W.ws;
    const auto& m = W.matrix;

    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            std::vector<std::pair<long long, long long>> exps; // (alpha on a, beta on b)
            for (int r = 0; r < 4; ++r) {
                bool in_pair = true;
                for (int c = 0; c < 4; ++c)
                    if (c != a && c != b && m[r][c] != 0) in_pair = false;
                if (in_pair) exps.push_back({m[r][a], m[r][b]});
            }
            if (exps.empty())
                raise(ErrorCode::DataError, "coordinate line contained in the hypersurface");
            if (exps.size() == 1) {
                geo.torus_points[a][b] = 0;
                continue;
            }
            long long g = std::gcd(geo.ws.w[a], geo.ws.w[b]);
            long long amin = exps[0].first;
            for (auto& e : exps) amin = std::min(amin, e.first);
            long long maxdeg = 0;
            for (auto& e : exps) {
                long long diff = e.first - amin;
                if ((diff * g) % geo.ws.w[b] != 0)
                    raise(ErrorCode::Inconsistent, "bad lattice step on coordinate line");
                maxdeg = std::max(maxdeg, diff * g / geo.ws.w[b]);
            }
            std::vector<long long> coeffs(maxdeg + 1, 0);
            for (auto& e : exps) coeffs[(e.first - amin) * g / geo.ws.w[b]] += 1;
            geo.torus_points[a][b] = distinct_root_count(coeffs);
        }
    }

    for (int a = 0; a < 4; ++a) {
        int head_row = -1;
        for (int r = 0; r < 4; ++r)
            if (m[r][a] >= 2) head_row = r;
        if (head_row < 0) raise(ErrorCode::NotInvertible, "variable without head monomial");
        int tail = -1;
        for (int c = 0; c < 4; ++c)
            if (c != a && m[head_row][c] != 0) tail = c;
        geo.vertex_on_Y[a] = (tail >= 0);
        geo.vertex_target[a] = tail;
    }
    return geo;
}

// Local cyclic group (restricted slice actions) at a pair stratum {a,b}; the
// elements range over G + the full torus direction.
std::set<std::array<Rat, 2>> local_group_pair(const Geometry& geo,
                                              const std::vector<Vec4>& elements, int a, int b) {
    int u = -1, v = -1;
    for (int s = 0; s < 4; ++s) {
        if (s == a || s == b) continue;
        (u < 0 ? u : v) = s;
    }
    std::set<std::array<Rat, 2>> local;
    for (const auto& g : elements) {
        for (long long t = 0; t < geo.ws.w[a]; ++t) {
            Rat q = (Rat(t) - g[a]) / Rat(geo.ws.w[a]);
            if ((g[b] + q * Rat(geo.ws.w[b])).mod1().num != 0) continue;
            Rat tu = (g[u] + q * Rat(geo.ws.w[u])).mod1();
            Rat tv = (g[v] + q * Rat(geo.ws.w[v])).mod1();
            if (!(tu + tv).is_integer())
                raise(ErrorCode::NoConfiguration,
                      "non-symplectic local action at " + geo.line_name(a, b));
            local.insert({tu, tv});
        }
    }
    return local;
}

std::set<std::array<Rat, 2>> local_group_vertex(const Geometry& geo,
                                                const std::vector<Vec4>& elements, int a) {
    int t = geo.vertex_target[a];
    int u = -1, v = -1;
    for (int s = 0; s < 4; ++s) {
        if (s == a || s == t) continue;
        (u < 0 ? u : v) = s;
    }
    std::set<std::array<Rat, 2>> local;
    for (const auto& g : elements) {
        for (long long tt = 0; tt < geo.ws.w[a]; ++tt) {
            Rat q = (Rat(tt) - g[a]) / Rat(geo.ws.w[a]);
            Rat tu = (g[u] + q * Rat(geo.ws.w[u])).mod1();
            Rat tv = (g[v] + q * Rat(geo.ws.w[v])).mod1();
            if (!(tu + tv).is_integer())
                raise(ErrorCode::NoConfiguration,
                      "non-symplectic local action at " + geo.vertex_name(a));
            local.insert({tu, tv});
        }
    }
    return local;
}

// Order of the rotation group induced on the u-line of the stratum {a,b}.
long long rotation_order(const Geometry& geo, const std::vector<Vec4>& elements, int a, int b) {
    long long g = std::gcd(geo.ws.w[a], geo.ws.w[b]);
    std::set<Rat> rots;
    for (const auto& e : elements)
        rots.insert((e[a] * Rat(geo.ws.w[b] / g) - e[b] * Rat(geo.ws.w[a] / g)).mod1());
    return (long long)rots.size();
}

// Fixed points of the element g on the coordinate curve {x_l = 0}.
long long fix_count_on_curve(const Geometry& geo, const Vec4& g, int l) {
    long long count = 0;
    std::vector<int> plane;
    for (int s = 0; s < 4; ++s)
        if (s != l) plane.push_back(s);
    for (int i = 0; i < 3; ++i)
        for (int j = i + 1; j < 3; ++j) {
            int a = plane[i], b = plane[j];
            if (geo.torus_points[a][b] == 0) continue;
            if (fixes_slots(g, geo.ws, {a, b})) count += geo.torus_points[a][b];
        }
    for (int a : plane)
        if (geo.vertex_on_Y[a]) count += 1; // coordinate points are fixed by every diagonal map
    return count;
}

struct ChainTask {
    std::string location;
    long long length = 0;
    bool leftF = false, rightF = false;
    long long count = 1;
};

// All (delta_k, delta_n) contributions of an invariant chain of `m` rational
// curves whose ends attach to curves that are sigma-fixed (F) or merely
// invariant. delta_k = pointwise fixed members, delta_n = isolated points.
std::set<std::pair<long long, long long>> chain_options(long long m, bool leftF, bool rightF) {
    std::set<std::pair<long long, long long>> out;
    std::vector<int> members;
    // enumerate non-adjacent subsets recursively
    std::vector<int> chosen;
    std::function<void(int)> rec = [&](int pos) {
        if (pos > m) {
            std::set<int> S(chosen.begin(), chosen.end());
            long long dk = (long long)S.size();
            long long dn = 0;
            if (!leftF && !S.count(1)) ++dn;
            for (int i = 1; i < m; ++i)
                if (!S.count(i) && !S.count(i + 1)) ++dn;
            if (!rightF && !S.count((int)m)) ++dn;
            out.insert({dk, dn});
            return;
        }
        rec(pos + 1);
        bool allowed = true;
        if (!chosen.empty() && chosen.back() == pos - 1) allowed = false;
        if (pos == 1 && leftF) allowed = false;
        if (pos == (int)m && rightF) allowed = false;
        if (allowed) {
            chosen.push_back(pos);
            rec(pos + 1);
            chosen.pop_back();
        }
    };
    rec(1);
    return out;
}

} // namespace

std::vector<TorusRepresentative> representatives(const Vec4& gamma, const WeightSystem& ws) {
    std::set<Vec4> seen;
    std::vector<TorusRepresentative> out;
    for (int i = 0; i < 4; ++i) {
        for (long long t = 0; t < ws.w[i]; ++t) {
            Rat q = ((Rat(t) - gamma[i]) / Rat(ws.w[i])).mod1();
            Vec4 value;
            std::vector<int> zeros;
            for (int s = 0; s < 4; ++s) {
                value[s] = (gamma[s] + q * Rat(ws.w[s])).mod1();
                if (value[s].num == 0) zeros.push_back(s);
            }
            if (zeros.empty()) continue;
            if (!seen.insert(value).second) continue;
            out.push_back(TorusRepresentative{gamma, q, value, zeros});
        }
    }
    return out;
}

long long curve_genus(long long d, long long w1, long long w2, long long w3) {
    Rat g = Rat(d * d, w1 * w2 * w3);
    g = g - Rat(d) * (Rat(std::gcd(w1, w2), w1 * w2) + Rat(std::gcd(w1, w3), w1 * w3) +
                      Rat(std::gcd(w2, w3), w2 * w3));
    g = g + Rat(std::gcd(w1, d), w1) + Rat(std::gcd(w2, d), w2) + Rat(std::gcd(w3, d), w3);
    g = (g - Rat(1)) / Rat(2);
    if (!g.is_integer() || g.num < 0)
        raise(ErrorCode::NonIntegerGenus, "genus formula gave " + g.str() + " for degree " +
                                              std::to_string(d) + " in P(" + std::to_string(w1) +
                                              "," + std::to_string(w2) + "," + std::to_string(w3) +
                                              ")");
    return g.num;
}

std::vector<SingularPoint> ambient_singularities(const InvertiblePolynomial& W) {
    Geometry geo = build_geometry(W);
    std::vector<SingularPoint> out;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            long long g = std::gcd(W.ws.w[a], W.ws.w[b]);
            if (g < 2 || geo.torus_points[a][b] == 0) continue;
            out.push_back(SingularPoint{geo.line_name(a, b), g, geo.torus_points[a][b]});
        }
    for (int a = 0; a < 4; ++a) {
        if (!geo.vertex_on_Y[a] || W.ws.w[a] < 2) continue;
        out.push_back(SingularPoint{geo.vertex_name(a), W.ws.w[a], 1});
    }
    return out;
}

std::vector<SingularPoint> symplectic_fixed_points(const InvertiblePolynomial& W,
                                                   const SymmetryGroup& G) {
    Geometry geo = build_geometry(W);
    SymmetryGroup J = j_group(W.matrix, W.ws);
    if (!J.subgroup_of(G)) raise(ErrorCode::InvalidPair, "J_W is not contained in G");
    long long nJ = J.order();

    std::vector<SingularPoint> out;
    for (int a = 0; a < 4; ++a)
        for (int b = a + 1; b < 4; ++b) {
            long long c = geo.torus_points[a][b];
            if (c == 0) continue;
            long long stab = 0;
            for (const auto& g : G.elements)
                if (fixes_slots(g, W.ws, {a, b})) ++stab;
            long long s = stab / nJ;
            if (s <= 1) continue;
            long long rho = rotation_order(geo, G.elements, a, b);
            long long mY = std::gcd(W.ws.w[a], W.ws.w[b]);
            long long per_point = (mY >= 2) ? mY : 1; // fixed points on the chain, if any
            out.push_back(SingularPoint{geo.line_name(a, b), s, (c / rho) * per_point});
        }
    for (int a = 0; a < 4; ++a) {
        if (!geo.vertex_on_Y[a]) continue;
        long long stab = 0;
        for (const auto& g : G.elements)
            if (fixes_slots(g, W.ws, {a})) ++stab;
        long long s = stab / nJ;
        if (s <= 1) continue;
        long long mY = W.ws.w[a];
        long long per_point = (mY >= 2) ? mY : 1;
        out.push_back(SingularPoint{geo.vertex_name(a), s, per_point});
    }
    return out;
}

long long riemann_hurwitz(long long g_cover, long long deg, const std::vector<long long>& ram) {
    if (deg <= 0) raise(ErrorCode::Inconsistent, "cover degree must be positive");
    long long sum = 0;
    for (auto e : ram) {
        if (e < 1) raise(ErrorCode::Inconsistent, "ramification index below 1");
        sum += e - 1;
    }
    long long num = 2 - 2 * g_cover + sum;
    if (num % deg != 0)
        raise(ErrorCode::Inconsistent, "Riemann-Hurwitz has no integral solution");
    long long t = num / deg; // = 2 - 2 g_base
    if ((2 - t) % 2 != 0 || (2 - t) / 2 < 0)
        raise(ErrorCode::Inconsistent, "Riemann-Hurwitz gave negative or fractional genus");
    return (2 - t) / 2;
}

LatticeInvariants invariants_from_gnk(int p, const FixedLocusInvariants& f) {
    LatticeInvariants li;
    li.p = p;
    if (p == 13) {
        if (!(f.g == 0 && f.n == 9 && f.k == 0))
            raise(ErrorCode::Inconsistent, "for p=13 only (g,n,k)=(0,9,0) occurs");
        li.r = 10;
        li.a = 1;
        li.m = 1;
        li.mu = 2;
        return li;
    }
    int r = 0, n_expected = 0;
    if (p == 3)
        r = 8 + 2 * (1 - f.g + f.k);
    else if (p == 5)
        r = 6 + 4 * (1 - f.g + f.k);
    else if (p == 7)
        r = 4 + 6 * (1 - f.g + f.k);
    else
        raise(ErrorCode::UnsupportedPrime, "p must be one of 3,5,7,13");
    if ((22 - r) % (p - 1) != 0)
        raise(ErrorCode::Inconsistent, "(p-1) does not divide 22-r");
    int m = (22 - r) / (p - 1);
    if (p == 3)
        n_expected = 10 - m;
    else if (p == 5)
        n_expected = 16 - 3 * m;
    else
        n_expected = 18 - 5 * m;
    if (n_expected != f.n)
        raise(ErrorCode::Inconsistent, "n does not match the fixed-point count formula");
    int a = m - 2 * f.g;
    if (a < 0) raise(ErrorCode::Inconsistent, "negative discriminant length");
    li.r = r;
    li.a = a;
    li.m = m;
    li.mu = 24 / (p - 1);
    return li;
}

std::pair<FixedLocusInvariants, LatticeInvariants>
resolve_fixed_locus(const InvertiblePolynomial& W, const SymmetryGroup& G, int p,
                    ResolveDetail* detail) {
    if (p != 3 && p != 5 && p != 7 && p != 13)
        raise(ErrorCode::UnsupportedPrime, "p must be one of 3,5,7,13");
    if (!is_calabi_yau(W.ws)) raise(ErrorCode::InvalidPair, "weight system not Calabi-Yau");
    if (!(G.host == W.matrix))
        raise(ErrorCode::InvalidPair, "group host does not match the polynomial");

    int slot = sigma_slot(W, p);
    Vec4 sigma{};
    sigma[slot] = Rat(1, p);

    SymmetryGroup J = j_group(W.matrix, W.ws);
    if (!J.subgroup_of(G)) raise(ErrorCode::InvalidPair, "J_W is not contained in G");
    for (const auto& g : G.elements) {
        if (!in_diagonal_group(W.matrix, g))
            raise(ErrorCode::InvalidPair, "G is not a group of diagonal symmetries of W");
        if (!(g[0] + g[1] + g[2] + g[3]).is_integer())
            raise(ErrorCode::InvalidPair, "G is not contained in SL_W");
    }

    Geometry geo = build_geometry(W);
    ResolveDetail local_detail;
    ResolveDetail& det = detail ? *detail : local_detail;
    det.sigma = sigma;

    // sigma-fixed coordinate curves on the quotient
    std::array<bool, 4> curve_fixed{};
    for (int l = 0; l < 4; ++l) {
        std::vector<int> plane;
        for (int s = 0; s < 4; ++s)
            if (s != l) plane.push_back(s);
        for (const auto& g : G.elements) {
            if (fixes_slots(vadd(sigma, g), W.ws, plane)) {
                curve_fixed[l] = true;
                break;
            }
        }
    }

    std::vector<FixedCurveInfo> curves;
    for (int l = 0; l < 4; ++l) {
        if (!curve_fixed[l]) continue;
        std::vector<int> plane;
        for (int s = 0; s < 4; ++s)
            if (s != l) plane.push_back(s);
        long long g_up =
            curve_genus(W.ws.d, W.ws.w[plane[0]], W.ws.w[plane[1]], W.ws.w[plane[2]]);
        long long nK = 0;
        for (const auto& g : G.elements)
            if (fixes_slots(g, W.ws, plane)) ++nK;
        long long deg = G.order() / nK;
        long long ram_total = 0;
        for (const auto& g : G.elements) {
            if (fixes_slots(g, W.ws, plane)) continue;
            ram_total += fix_count_on_curve(geo, g, l);
        }
        if (ram_total % nK != 0)
            raise(ErrorCode::Inconsistent, "ramification count not constant on cosets");
        long long ram = ram_total / nK;
        long long num = 2 - 2 * g_up + ram;
        if (num % deg != 0 || (2 - num / deg) % 2 != 0 || (2 - num / deg) < 0)
            raise(ErrorCode::NonIntegerGenus, "quotient genus not a nonnegative integer");
        FixedCurveInfo ci;
        ci.slot = l;
        ci.genus_upstream = g_up;
        ci.genus = (2 - num / deg) / 2;
        curves.push_back(ci);
    }
    det.curves = curves;

    // strata bookkeeping
    long long forced_n = 0;
    std::vector<ChainTask> chains;

    for (int a = 0; a < 4; ++a) {
        for (int b = a + 1; b < 4; ++b) {
            long long c = geo.torus_points[a][b];
            if (c == 0) continue;
            bool fixed = false;
            for (const auto& g : G.elements)
                if (fixes_slots(vadd(sigma, g), W.ws, {a, b})) {
                    fixed = true;
                    break;
                }
            if (!fixed) continue;

            auto local = local_group_pair(geo, G.elements, a, b);
            long long M = (long long)local.size();
            long long rho = rotation_order(geo, G.elements, a, b);
            if (c % rho != 0)
                raise(ErrorCode::Inconsistent, "orbit size does not divide point count");
            long long cnt = c / rho;
            int u = -1, v = -1;
            for (int s = 0; s < 4; ++s) {
                if (s == a || s == b) continue;
                (u < 0 ? u : v) = s;
            }
            bool Fu = curve_fixed[u], Fv = curve_fixed[v];
            if (M == 1) {
                if (Fu && Fv)
                    raise(ErrorCode::NoConfiguration,
                          "fixed curves cross at a smooth point on " + geo.line_name(a, b));
                if (!Fu && !Fv) forced_n += cnt;
            } else {
                chains.push_back(ChainTask{geo.line_name(a, b), M - 1, Fu, Fv, cnt});
            }
        }
    }

    for (int a = 0; a < 4; ++a) {
        if (!geo.vertex_on_Y[a]) continue;
        int t = geo.vertex_target[a];
        if (curve_fixed[t])
            raise(ErrorCode::NoConfiguration,
                  "normal plane of " + geo.vertex_name(a) + " cannot be pointwise fixed");
        int u = -1, v = -1;
        for (int s = 0; s < 4; ++s) {
            if (s == a || s == t) continue;
            (u < 0 ? u : v) = s;
        }
        auto local = local_group_vertex(geo, G.elements, a);
        long long M = (long long)local.size();
        bool Fu = curve_fixed[u], Fv = curve_fixed[v];
        if (M == 1) {
            if (Fu && Fv)
                raise(ErrorCode::NoConfiguration,
                      "fixed curves cross at a smooth point on " + geo.vertex_name(a));
            if (!Fu && !Fv) forced_n += 1;
        } else {
            chains.push_back(ChainTask{geo.vertex_name(a), M - 1, Fu, Fv, 1});
        }
    }
    det.forced_points = forced_n;
    for (const auto& ch : chains)
        det.chains.push_back(ChainInfo{ch.location, ch.length, ch.leftF, ch.rightF, ch.count});

    // at most one fixed curve of positive genus
    int positive = 0;
    long long g_val = 0;
    for (const auto& c : curves)
        if (c.genus > 0) {
            ++positive;
            g_val = c.genus;
        }
    if (positive > 1)
        raise(ErrorCode::NoConfiguration, "two fixed curves of positive genus");

    // accumulate achievable (delta_k, delta_n) sums over all chains
    std::set<std::pair<long long, long long>> sums = {{0, 0}};
    for (const auto& ch : chains) {
        auto opts = chain_options(ch.length, ch.leftF, ch.rightF);
        for (long long i = 0; i < ch.count; ++i) {
            std::set<std::pair<long long, long long>> next;
            for (const auto& s : sums)
                for (const auto& o : opts)
                    next.insert({s.first + o.first, s.second + o.second});
            sums = std::move(next);
        }
    }

    // intersect candidates with the classification rows
    std::set<std::pair<int, int>> survivors;
    std::vector<std::string> cand_dump;
    for (const auto& [dk, dn] : sums) {
        long long total_curves = (long long)curves.size() + dk;
        long long n_tot = forced_n + dn;
        for (const auto& row : classification_rows()) {
            if (row.p != p) continue;
            if (row.g.has_value() && total_curves >= 1) {
                if (*row.g == g_val && row.n == n_tot && *row.k == total_curves - 1) {
                    survivors.insert({row.r, row.a});
                    std::ostringstream os;
                    os << "(g,n,k)=(" << g_val << "," << n_tot << "," << total_curves - 1 << ")";
                    cand_dump.push_back(os.str());
                }
            } else if (!row.g.has_value() && total_curves == 0) {
                if (row.n == n_tot) {
                    survivors.insert({row.r, row.a});
                    std::ostringstream os;
                    os << "(g,n,k)=(-," << n_tot << ",-)";
                    cand_dump.push_back(os.str());
                }
            }
        }
    }

    if (survivors.empty())
        raise(ErrorCode::NoConfiguration,
              "no classification row matches the computed fixed-locus constraints");
    if (survivors.size() > 1) {
        std::ostringstream os;
        os << "{\"candidates\":[";
        bool first = true;
        for (const auto& [r, a] : survivors) {
            if (!first) os << ",";
            os << "{\"r\":" << r << ",\"a\":" << a << "}";
            first = false;
        }
        os << "]}";
        raise(ErrorCode::Ambiguous, os.str());
    }

    auto [r, a] = *survivors.begin();
    ClassificationRow row = classify(p, r, a);
    if (!row.g.has_value())
        raise(ErrorCode::Inconsistent,
              "points-only fixed locus should not arise for a p-cyclic pair");

    FixedLocusInvariants f;
    f.g = *row.g;
    f.n = row.n;
    f.k = *row.k;
    LatticeInvariants li = invariants_from_gnk(p, f); // consistency gate
    if (li.r != r || li.a != a)
        raise(ErrorCode::Inconsistent, "formula and table disagree on (r,a)");
    return {f, li};
}

} // namespace k3

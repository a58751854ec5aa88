#include "k3mirror/lattices.hpp"

#include <algorithm>
#include <cctype>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "k3mirror/data.hpp"
#include "k3mirror/error.hpp"
#include "k3mirror/rational.hpp"

namespace k3 {

namespace {

Lattice from_rows(std::vector<std::vector<long long>> rows, std::string label) {
    return Lattice{std::move(rows), std::move(label)};
}

void check_even_symmetric(const Lattice& L) {
    int n = L.rank();
    for (int i = 0; i < n; ++i) {
        if (L.gram[i][i] % 2 != 0)
            raise(ErrorCode::Inconsistent, L.label + " is not even");
        for (int j = 0; j < n; ++j)
            if (L.gram[i][j] != L.gram[j][i])
                raise(ErrorCode::Inconsistent, L.label + " is not symmetric");
    }
}

} // namespace

Lattice lattice_U() { return from_rows({{0, 1}, {1, 0}}, "U"); }

Lattice lattice_U_scaled(long long n) { return scale(lattice_U(), n); }

Lattice lattice_A(int n) {
    if (n < 1) raise(ErrorCode::CongruenceViolation, "A_n needs n >= 1");
    std::vector<std::vector<long long>> g(n, std::vector<long long>(n, 0));
    for (int i = 0; i < n; ++i) {
        g[i][i] = -2;
        if (i + 1 < n) {
            g[i][i + 1] = 1;
            g[i + 1][i] = 1;
        }
    }
    return from_rows(g, "A" + std::to_string(n));
}

Lattice lattice_E6() {
    // negative definite E6 root Gram matrix (Bourbaki labelling)
    std::vector<std::vector<long long>> g = {
        {-2, 0, 1, 0, 0, 0},
        {0, -2, 0, 1, 0, 0},
        {1, 0, -2, 1, 0, 0},
        {0, 1, 1, -2, 1, 0},
        {0, 0, 0, 1, -2, 1},
        {0, 0, 0, 0, 1, -2}};
    return from_rows(g, "E6");
}

Lattice lattice_E8() {
    std::vector<std::vector<long long>> g = {
        {-2, 0, 1, 0, 0, 0, 0, 0},
        {0, -2, 0, 1, 0, 0, 0, 0},
        {1, 0, -2, 1, 0, 0, 0, 0},
        {0, 1, 1, -2, 1, 0, 0, 0},
        {0, 0, 0, 1, -2, 1, 0, 0},
        {0, 0, 0, 0, 1, -2, 1, 0},
        {0, 0, 0, 0, 0, 1, -2, 1},
        {0, 0, 0, 0, 0, 0, 1, -2}};
    return from_rows(g, "E8");
}

Lattice lattice_K(long long p) {
    if (p % 4 != 3) raise(ErrorCode::CongruenceViolation, "K_p needs p = 3 mod 4");
    return from_rows({{-(p + 1) / 2, 1}, {1, -2}}, "K" + std::to_string(p));
}

Lattice lattice_H(long long p) {
    if (p % 4 != 1) raise(ErrorCode::CongruenceViolation, "H_p needs p = 1 mod 4");
    return from_rows({{(p - 1) / 2, 1}, {1, -2}}, "H" + std::to_string(p));
}

Lattice scale(const Lattice& L, long long n) {
    Lattice out = L;
    for (auto& row : out.gram)
        for (auto& v : row) v *= n;
    out.label = L.label + "(" + std::to_string(n) + ")";
    return out;
}

Lattice dual_scaled(const Lattice& L, long long n) {
    // n * gram^{-1} in the dual basis; rational inverse, then integrality check
    int r = L.rank();
    std::vector<std::vector<Rat>> t(r, std::vector<Rat>(2 * r));
    for (int i = 0; i < r; ++i) {
        for (int j = 0; j < r; ++j) t[i][j] = Rat(L.gram[i][j]);
        t[i][r + i] = Rat(1);
    }
    for (int col = 0; col < r; ++col) {
        int piv = -1;
        for (int i = col; i < r; ++i)
            if (t[i][col].num != 0) { piv = i; break; }
        if (piv < 0) raise(ErrorCode::Inconsistent, "degenerate lattice");
        std::swap(t[col], t[piv]);
        Rat inv = Rat(1) / t[col][col];
        for (int j = 0; j < 2 * r; ++j) t[col][j] = t[col][j] * inv;
        for (int i = 0; i < r; ++i) {
            if (i == col || t[i][col].num == 0) continue;
            Rat f = t[i][col];
            for (int j = 0; j < 2 * r; ++j) t[i][j] = t[i][j] - f * t[col][j];
        }
    }
    Lattice out;
    out.gram.assign(r, std::vector<long long>(r));
    for (int i = 0; i < r; ++i)
        for (int j = 0; j < r; ++j) {
            Rat v = Rat(n) * t[i][r + j];
            if (!v.is_integer())
                raise(ErrorCode::Inconsistent, L.label + "*(" + std::to_string(n) +
                                                   ") is not integral");
            out.gram[i][j] = v.num;
        }
    out.label = L.label + "*(" + std::to_string(n) + ")";
    check_even_symmetric(out);
    return out;
}

Lattice direct_sum(const Lattice& a, const Lattice& b) {
    int ra = a.rank(), rb = b.rank();
    Lattice out;
    out.gram.assign(ra + rb, std::vector<long long>(ra + rb, 0));
    for (int i = 0; i < ra; ++i)
        for (int j = 0; j < ra; ++j) out.gram[i][j] = a.gram[i][j];
    for (int i = 0; i < rb; ++i)
        for (int j = 0; j < rb; ++j) out.gram[ra + i][ra + j] = b.gram[i][j];
    out.label = a.label.empty() ? b.label : (b.label.empty() ? a.label : a.label + "+" + b.label);
    return out;
}

Lattice parse_lattice_expr(const std::string& expr) {
    std::vector<Lattice> parts;
    std::stringstream ss(expr);
    std::string tok;
    while (std::getline(ss, tok, '+')) {
        // trim
        size_t b = tok.find_first_not_of(" \t");
        size_t e = tok.find_last_not_of(" \t");
        if (b == std::string::npos) raise(ErrorCode::ParseError, "empty lattice token");
        tok = tok.substr(b, e - b + 1);

        long long repeat = 1;
        auto caret = tok.find('^');
        if (caret != std::string::npos) {
            repeat = std::stoll(tok.substr(caret + 1));
            tok = tok.substr(0, caret);
        }
        bool dual = false;
        std::optional<long long> scale_by;
        auto star = tok.find('*');
        if (star != std::string::npos) {
            dual = true;
            tok.erase(star, 1);
        }
        auto open = tok.find('(');
        if (open != std::string::npos) {
            auto close = tok.find(')', open);
            if (close == std::string::npos) raise(ErrorCode::ParseError, "missing ')'");
            scale_by = std::stoll(tok.substr(open + 1, close - open - 1));
            tok = tok.substr(0, open);
        }

        Lattice base;
        if (tok == "U")
            base = lattice_U();
        else if (tok == "E6")
            base = lattice_E6();
        else if (tok == "E8")
            base = lattice_E8();
        else if (tok.size() > 1 && tok[0] == 'A')
            base = lattice_A(std::stoi(tok.substr(1)));
        else if (tok.size() > 1 && tok[0] == 'K')
            base = lattice_K(std::stoll(tok.substr(1)));
        else if (tok.size() > 1 && tok[0] == 'H')
            base = lattice_H(std::stoll(tok.substr(1)));
        else
            raise(ErrorCode::ParseError, "unknown lattice token '" + tok + "'");

        if (dual) {
            if (!scale_by) raise(ErrorCode::ParseError, "dual twist needs a scale, e.g. E6*(3)");
            base = dual_scaled(base, *scale_by);
        } else if (scale_by) {
            base = scale(base, *scale_by);
        }
        for (long long i = 0; i < repeat; ++i) parts.push_back(base);
    }
    if (parts.empty()) raise(ErrorCode::ParseError, "empty lattice expression");
    Lattice out = parts[0];
    for (size_t i = 1; i < parts.size(); ++i) out = direct_sum(out, parts[i]);
    check_even_symmetric(out);
    return out;
}

long long det_gram(const Gram& g) {
    // fraction-free via rational elimination; sizes <= 22
    int n = (int)g.size();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rat(g[i][j]);
    Rat det(1);
    for (int col = 0; col < n; ++col) {
        int piv = -1;
        for (int r = col; r < n; ++r)
            if (m[r][col].num != 0) { piv = r; break; }
        if (piv < 0) return 0;
        if (piv != col) {
            std::swap(m[piv], m[col]);
            det = -det;
        }
        det = det * m[col][col];
        Rat inv = Rat(1) / m[col][col];
        for (int r = col + 1; r < n; ++r) {
            if (m[r][col].num == 0) continue;
            Rat f = m[r][col] * inv;
            for (int c = col; c < n; ++c) m[r][c] = m[r][c] - f * m[col][c];
        }
    }
    if (!det.is_integer()) raise(ErrorCode::Inconsistent, "non-integral determinant");
    return det.num;
}

DiscriminantInvariants discriminant(const Lattice& L) {
    // Smith normal form with smallest-pivot selection
    Gram m = L.gram;
    int n = L.rank();
    std::vector<long long> diag;
    int s = 0;
    while (s < n) {
        // locate minimal nonzero |entry| in the trailing block
        int pi = -1, pj = -1;
        long long best = 0;
        for (int i = s; i < n; ++i)
            for (int j = s; j < n; ++j) {
                long long v = m[i][j] < 0 ? -m[i][j] : m[i][j];
                if (v != 0 && (pi < 0 || v < best)) {
                    best = v;
                    pi = i;
                    pj = j;
                }
            }
        if (pi < 0) break; // all zero
        std::swap(m[s], m[pi]);
        for (int i = 0; i < n; ++i) std::swap(m[i][s], m[i][pj]);

        bool again = false;
        for (int i = s + 1; i < n; ++i) {
            if (m[i][s] == 0) continue;
            long long q = m[i][s] / m[s][s];
            for (int j = s; j < n; ++j) m[i][j] -= q * m[s][j];
            if (m[i][s] != 0) again = true;
        }
        for (int j = s + 1; j < n; ++j) {
            if (m[s][j] == 0) continue;
            long long q = m[s][j] / m[s][s];
            for (int i = s; i < n; ++i) m[i][j] -= q * m[i][s];
            if (m[s][j] != 0) again = true;
        }
        if (again) continue;

        // divisibility condition on the remaining block
        bool fixed = true;
        for (int i = s + 1; i < n && fixed; ++i)
            for (int j = s + 1; j < n && fixed; ++j)
                if (m[i][j] % m[s][s] != 0) {
                    for (int c = s; c < n; ++c) m[s][c] += m[i][c];
                    fixed = false;
                }
        if (!fixed) continue;

        diag.push_back(m[s][s] < 0 ? -m[s][s] : m[s][s]);
        ++s;
    }
    if ((int)diag.size() != n) raise(ErrorCode::Inconsistent, "degenerate Gram matrix");

    DiscriminantInvariants di;
    for (auto v : diag) {
        di.order *= v;
        if (v > 1) di.invariant_factors.push_back(v);
    }
    std::sort(di.invariant_factors.begin(), di.invariant_factors.end());
    di.length = (int)di.invariant_factors.size();
    if (di.length > 0) {
        long long p = di.invariant_factors[0];
        bool all_p = std::all_of(di.invariant_factors.begin(), di.invariant_factors.end(),
                                 [&](long long v) { return v == p; });
        // p-elementary flag only for prime p
        auto is_prime = [](long long x) {
            if (x < 2) return false;
            for (long long i = 2; i * i <= x; ++i)
                if (x % i == 0) return false;
            return true;
        };
        if (all_p && is_prime(p)) di.p_elementary = std::make_pair(p, di.length);
    }
    return di;
}

std::pair<int, int> signature(const Lattice& L) {
    int n = L.rank();
    std::vector<std::vector<Rat>> m(n, std::vector<Rat>(n));
    for (int i = 0; i < n; ++i)
        for (int j = 0; j < n; ++j) m[i][j] = Rat(L.gram[i][j]);

    auto swap_rc = [&](int a, int b) {
        if (a == b) return;
        std::swap(m[a], m[b]);
        for (int i = 0; i < n; ++i) std::swap(m[i][a], m[i][b]);
    };

    int plus = 0, minus = 0;
    int s = 0;
    while (s < n) {
        int diag = -1;
        for (int i = s; i < n; ++i)
            if (m[i][i].num != 0) { diag = i; break; }
        if (diag >= 0) {
            swap_rc(s, diag);
            if (m[s][s].num > 0)
                ++plus;
            else
                ++minus;
            Rat inv = Rat(1) / m[s][s];
            for (int r = s + 1; r < n; ++r) {
                if (m[r][s].num == 0) continue;
                Rat f = m[r][s] * inv;
                for (int t = s; t < n; ++t) m[r][t] = m[r][t] - f * m[s][t];
                for (int t = s; t < n; ++t) m[t][r] = m[t][r] - f * m[t][s];
            }
            ++s;
            continue;
        }
        // trailing diagonal all zero: split off a hyperbolic pair
        int pi = -1, pj = -1;
        for (int i = s; i < n && pi < 0; ++i)
            for (int j = i + 1; j < n; ++j)
                if (m[i][j].num != 0) { pi = i; pj = j; break; }
        if (pi < 0) raise(ErrorCode::Inconsistent, "degenerate form");
        swap_rc(s, pi);
        if (pj == s) pj = pi;
        swap_rc(s + 1, pj);
        Rat c = m[s][s + 1];
        for (int r = s + 2; r < n; ++r) {
            Rat fa = m[r][s + 1] / c;
            Rat fb = m[r][s] / c;
            if (fa.num == 0 && fb.num == 0) continue;
            for (int t = s; t < n; ++t) m[r][t] = m[r][t] - fa * m[s][t] - fb * m[s + 1][t];
            for (int t = s; t < n; ++t) m[t][r] = m[t][r] - fa * m[t][s] - fb * m[t][s + 1];
        }
        ++plus;
        ++minus;
        s += 2;
    }
    return {plus, minus};
}

const std::vector<ClassificationRow>& classification_rows() {
    static std::vector<ClassificationRow> rows = [] {
        std::vector<ClassificationRow> out;
        auto j = nlohmann::json::parse(kClassificationJson);
        for (const auto& e : j) {
            ClassificationRow row;
            row.p = e.at("p").get<int>();
            row.r = e.at("r").get<int>();
            row.a = e.at("a").get<int>();
            row.n = e.at("n").get<int>();
            if (!e.at("g").is_null()) row.g = e.at("g").get<int>();
            if (!e.at("k").is_null()) row.k = e.at("k").get<int>();
            row.T_name = e.at("T").get<std::string>();
            row.S_name = e.at("S").get<std::string>();
            out.push_back(row);
        }
        return out;
    }();
    return rows;
}

ClassificationRow classify(int p, int r, int a) {
    if (p != 3 && p != 5 && p != 7 && p != 13)
        raise(ErrorCode::UnsupportedPrime, "p must be one of 3,5,7,13");
    for (const auto& row : classification_rows())
        if (row.p == p && row.r == r && row.a == a) return row;
    raise(ErrorCode::NoSuchRow, "no classification row (p,r,a)=(" + std::to_string(p) + "," +
                                    std::to_string(r) + "," + std::to_string(a) + ")");
}

std::pair<int, int> mirror_invariants(int p, int r, int a) {
    classify(p, r, a); // must be a valid row
    if ((p == 3 && r == 20 && a == 1) || (p == 5 && r == 6 && a == 4) ||
        (p == 7 && r == 4 && a == 3))
        raise(ErrorCode::NotMirrorHyperbolic, "(p,r,a)=(" + std::to_string(p) + "," +
                                                  std::to_string(r) + "," + std::to_string(a) +
                                                  ") admits no hyperbolic plane in T");
    return {20 - r, a};
}

bool verify_mirror_decomposition(int p, int r, int a) {
    auto row = classify(p, r, a);
    auto [mr, ma] = mirror_invariants(p, r, a);
    auto mirror_row = classify(p, mr, ma);

    Lattice T = parse_lattice_expr(row.T_name);
    Lattice US = direct_sum(lattice_U(), parse_lattice_expr(mirror_row.S_name));

    if (T.rank() != US.rank()) return false;
    if (signature(T) != signature(US)) return false;
    auto dT = discriminant(T), dUS = discriminant(US);
    return dT.invariant_factors == dUS.invariant_factors;
}

} // namespace k3

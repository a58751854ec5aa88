#include "k3mirror/invpoly.hpp"

#include <algorithm>
#include <cctype>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>

#include "k3mirror/error.hpp"
#include "k3mirror/rational.hpp"

namespace k3 {

namespace {

const char kVarNames[4] = {'x', 'y', 'z', 'w'};

// Exact inverse of an integer 4x4 matrix via Gauss-Jordan over Rat.
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

bool row_less_desc(const std::array<long long, 4>& a, const std::array<long long, 4>& b) {
    return a > b; // descending lexicographic
}

ExponentMatrix sorted_rows(ExponentMatrix m) {
    std::sort(m.begin(), m.end(), row_less_desc);
    return m;
}

} // namespace

long long det4(const ExponentMatrix& m) {
    // cofactor expansion; entries are tiny
    auto det3 = [](long long a, long long b, long long c, long long d, long long e,
                   long long f, long long g, long long h, long long i) {
        return a * (e * i - f * h) - b * (d * i - f * g) + c * (d * h - e * g);
    };
    long long det = 0;
    for (int col = 0; col < 4; ++col) {
        long long sub[9];
        int idx = 0;
        for (int r = 1; r < 4; ++r)
            for (int c = 0; c < 4; ++c)
                if (c != col) sub[idx++] = m[r][c];
        long long minor =
            det3(sub[0], sub[1], sub[2], sub[3], sub[4], sub[5], sub[6], sub[7], sub[8]);
        det += (col % 2 ? -1 : 1) * m[0][col] * minor;
    }
    return det;
}

AtomicDecomposition decompose(const ExponentMatrix& m) {
    // head(v) = row where v carries exponent >= 2; tail = the other variable of
    // that row (exponent exactly 1) if present.
    int head_row[4] = {-1, -1, -1, -1};
    int tail_of[4] = {-1, -1, -1, -1}; // head variable -> tail variable

    for (int r = 0; r < 4; ++r) {
        int big = -1, one = -1, nonzero = 0;
        for (int c = 0; c < 4; ++c) {
            if (m[r][c] < 0) raise(ErrorCode::NotInvertible, "negative exponent");
            if (m[r][c] == 0) continue;
            ++nonzero;
            if (m[r][c] >= 2) {
                if (big >= 0) raise(ErrorCode::NotInvertible, "monomial with two large exponents");
                big = c;
            } else { // exponent 1
                if (one >= 0) raise(ErrorCode::NotInvertible, "monomial with two linear factors");
                one = c;
            }
        }
        if (nonzero == 0 || nonzero > 2 || big < 0)
            raise(ErrorCode::NotInvertible, "monomial not of atomic shape");
        if (head_row[big] >= 0)
            raise(ErrorCode::NotInvertible, "variable heads two monomials");
        head_row[big] = r;
        tail_of[big] = one; // -1 for a pure power
    }
    for (int v = 0; v < 4; ++v)
        if (head_row[v] < 0) raise(ErrorCode::NotInvertible, "variable heads no monomial");

    int indeg[4] = {0, 0, 0, 0};
    for (int v = 0; v < 4; ++v)
        if (tail_of[v] >= 0) ++indeg[tail_of[v]];
    for (int v = 0; v < 4; ++v)
        if (indeg[v] > 1) raise(ErrorCode::NotInvertible, "incidence graph not atomic");

    AtomicDecomposition dec;
    bool seen[4] = {false, false, false, false};
    for (int start = 0; start < 4; ++start) {
        if (seen[start]) continue;
        // walk back to the component's source (no incoming edge), or detect a loop
        int v = start;
        std::set<int> trace;
        while (true) {
            int pred = -1;
            for (int u = 0; u < 4; ++u)
                if (tail_of[u] == v) pred = u;
            if (pred < 0 || trace.count(pred)) break;
            trace.insert(v);
            v = pred;
        }
        // follow the chain forward from v
        std::vector<int> vars;
        std::vector<long long> exps;
        int cur = v;
        while (cur >= 0 && !seen[cur]) {
            seen[cur] = true;
            vars.push_back(cur);
            exps.push_back(m[head_row[cur]][cur]);
            cur = tail_of[cur];
        }
        Block b;
        b.vars = vars;
        b.exps = exps;
        if (vars.size() == 1 && tail_of[vars[0]] < 0) {
            b.kind = BlockKind::Fermat;
        } else if (cur == v && tail_of[vars.back()] == v) {
            b.kind = BlockKind::Loop;
            if (vars.size() < 2) raise(ErrorCode::NotInvertible, "self-loop monomial");
        } else if (tail_of[vars.back()] < 0) {
            b.kind = BlockKind::Chain;
        } else {
            raise(ErrorCode::NotInvertible, "incidence graph not a fermat/chain/loop union");
        }
        for (auto e : b.exps)
            if (e < 2) raise(ErrorCode::NotInvertible, "exponent below 2");
        dec.blocks.push_back(std::move(b));
    }
    if (det4(m) == 0) raise(ErrorCode::NotInvertible, "zero determinant");
    return dec;
}

namespace {

// Weights in the matrix's own variable order, gcd-reduced.
WeightSystem natural_weights(const ExponentMatrix& m) {
    auto inv = invert4(m);
    std::array<Rat, 4> rowsum;
    for (int i = 0; i < 4; ++i) {
        Rat s(0);
        for (int j = 0; j < 4; ++j) s = s + inv[i][j];
        rowsum[i] = s;
        if (s <= Rat(0)) raise(ErrorCode::NotInvertible, "nonpositive fractional weight");
    }
    long long L = 1;
    for (const auto& r : rowsum) L = std::lcm(L, r.den);
    std::array<long long, 4> w{};
    for (int i = 0; i < 4; ++i) w[i] = rowsum[i].num * (L / rowsum[i].den);
    long long g = std::gcd(std::gcd(w[0], w[1]), std::gcd(w[2], w[3]));
    WeightSystem ws;
    for (int i = 0; i < 4; ++i) ws.w[i] = w[i] / g;
    ws.d = L / g;
    return ws;
}

} // namespace

WeightSystem weights_from_matrix(const ExponentMatrix& m) {
    WeightSystem natural = natural_weights(m);
    return normalize(natural.w, natural.d).ws;
}

CanonicalResult canonicalize(const ExponentMatrix& m) {
    WeightSystem natural = natural_weights(m); // in the matrix's variable order
    std::array<int, 4> base = {0, 1, 2, 3};
    std::stable_sort(base.begin(), base.end(),
                     [&](int i, int j) { return natural.w[i] > natural.w[j]; });

    // all permutations agreeing with the sorted weight vector
    std::array<long long, 4> sorted_w{};
    for (int i = 0; i < 4; ++i) sorted_w[i] = natural.w[base[i]];

    std::array<int, 4> slots = {0, 1, 2, 3};
    std::optional<ExponentMatrix> best;
    std::array<int, 4> best_perm = base;
    std::sort(slots.begin(), slots.end());
    do {
        bool ok = true;
        for (int i = 0; i < 4 && ok; ++i) ok = natural.w[slots[i]] == sorted_w[i];
        if (!ok) continue;
        ExponentMatrix relab{};
        for (int r = 0; r < 4; ++r)
            for (int c = 0; c < 4; ++c) relab[r][c] = m[r][slots[c]];
        relab = sorted_rows(relab);
        if (!best || relab < *best) {
            best = relab;
            best_perm = slots;
        }
    } while (std::next_permutation(slots.begin(), slots.end()));

    CanonicalResult res;
    res.poly.matrix = *best;
    res.poly.decomposition = decompose(*best);
    res.poly.ws = WeightSystem{sorted_w, natural.d};
    res.perm = best_perm;
    return res;
}

InvertiblePolynomial make_polynomial(const ExponentMatrix& m) { return canonicalize(m).poly; }

std::string InvertiblePolynomial::str() const {
    std::ostringstream os;
    for (int r = 0; r < 4; ++r) {
        if (r) os << "+";
        bool first = true;
        for (int c = 0; c < 4; ++c) {
            if (matrix[r][c] == 0) continue;
            if (!first) os << "*";
            os << kVarNames[c];
            if (matrix[r][c] > 1) os << "^" << matrix[r][c];
            first = false;
        }
    }
    return os.str();
}

InvertiblePolynomial transpose(const InvertiblePolynomial& W) {
    ExponentMatrix t{};
    for (int i = 0; i < 4; ++i)
        for (int j = 0; j < 4; ++j) t[i][j] = W.matrix[j][i];
    return make_polynomial(t);
}

std::vector<InvertiblePolynomial> enumerate_form_p(const WeightSystem& ws, int p) {
    if (!is_calabi_yau(ws)) raise(ErrorCode::InvalidPair, "weight system not Calabi-Yau");
    const long long d = ws.d;

    auto exp_of = [&](long long need, long long w) -> long long {
        if (need % w != 0) return -1;
        long long e = need / w;
        return e >= 2 ? e : -1;
    };

    std::set<ExponentMatrix> seen;
    std::vector<InvertiblePolynomial> out;

    auto push = [&](int j, const std::vector<std::array<long long, 4>>& frows) {
        ExponentMatrix m{};
        m[0][j] = p;
        for (int r = 0; r < 3; ++r) m[r + 1] = frows[r];
        auto canon = canonicalize(m);
        if (seen.insert(canon.poly.matrix).second) out.push_back(canon.poly);
    };

    for (int j = 0; j < 4; ++j) {
        if ((long long)p * ws.w[j] != d) continue;
        std::array<int, 3> rest{};
        int idx = 0;
        for (int v = 0; v < 4; ++v)
            if (v != j) rest[idx++] = v;

        std::array<int, 3> pi = {0, 1, 2};
        std::sort(pi.begin(), pi.end());
        std::set<std::array<int, 3>> tried;
        do {
            int a = rest[pi[0]], b = rest[pi[1]], c = rest[pi[2]];
            long long wa = ws.w[a], wb = ws.w[b], wc = ws.w[c];
            auto row = [&](int var, long long e, int tail = -1) {
                std::array<long long, 4> r{};
                r[var] = e;
                if (tail >= 0) r[tail] = 1;
                return r;
            };

            // fermat^3 (order-independent; do once per slot j)
            if (pi == std::array<int, 3>{0, 1, 2}) {
                long long ea = exp_of(d, wa), eb = exp_of(d, wb), ec = exp_of(d, wc);
                if (ea > 0 && eb > 0 && ec > 0)
                    push(j, {row(a, ea), row(b, eb), row(c, ec)});
            }
            // chain a -> b -> c
            {
                long long ea = exp_of(d - wb, wa), eb = exp_of(d - wc, wb), ec = exp_of(d, wc);
                if (ea > 0 && eb > 0 && ec > 0)
                    push(j, {row(a, ea, b), row(b, eb, c), row(c, ec)});
            }
            // loop a -> b -> c -> a
            {
                long long ea = exp_of(d - wb, wa), eb = exp_of(d - wc, wb), ec = exp_of(d - wa, wc);
                if (ea > 0 && eb > 0 && ec > 0)
                    push(j, {row(a, ea, b), row(b, eb, c), row(c, ec, a)});
            }
            // chain a -> b, fermat c
            {
                long long ea = exp_of(d - wb, wa), eb = exp_of(d, wb), ec = exp_of(d, wc);
                if (ea > 0 && eb > 0 && ec > 0)
                    push(j, {row(a, ea, b), row(b, eb), row(c, ec)});
            }
            // loop a <-> b, fermat c
            {
                long long ea = exp_of(d - wb, wa), eb = exp_of(d - wa, wb), ec = exp_of(d, wc);
                if (ea > 0 && eb > 0 && ec > 0)
                    push(j, {row(a, ea, b), row(b, eb, a), row(c, ec)});
            }
        } while (std::next_permutation(pi.begin(), pi.end()));
    }
    std::sort(out.begin(), out.end());
    return out;
}

CanonicalResult parse_polynomial(const std::string& text) {
    ExponentMatrix m{};
    int row = 0;
    size_t i = 0;
    auto skip_ws = [&] {
        while (i < text.size() && std::isspace((unsigned char)text[i])) ++i;
    };
    while (i < text.size()) {
        if (row >= 4) raise(ErrorCode::ParseError, "more than 4 monomials");
        std::array<long long, 4> r{};
        bool any = false;
        while (true) {
            skip_ws();
            if (i >= text.size() || text[i] == '+') break;
            if (text[i] == '*') {
                ++i;
                continue;
            }
            int var = -1;
            for (int v = 0; v < 4; ++v)
                if (text[i] == kVarNames[v]) var = v;
            if (var < 0)
                raise(ErrorCode::ParseError,
                      std::string("unexpected character '") + text[i] + "'");
            ++i;
            long long e = 1;
            skip_ws();
            if (i < text.size() && text[i] == '^') {
                ++i;
                skip_ws();
                size_t start = i;
                while (i < text.size() && std::isdigit((unsigned char)text[i])) ++i;
                if (start == i) raise(ErrorCode::ParseError, "missing exponent after '^'");
                e = std::stoll(text.substr(start, i - start));
            }
            r[var] += e;
            any = true;
        }
        if (!any) raise(ErrorCode::ParseError, "empty monomial");
        m[row++] = r;
        if (i < text.size() && text[i] == '+') ++i;
    }
    if (row != 4) raise(ErrorCode::ParseError, "expected exactly 4 monomials");
    return canonicalize(m);
}

int sigma_slot(const InvertiblePolynomial& W, int p) {
    for (int j = 0; j < 4; ++j) {
        if ((long long)p * W.ws.w[j] != W.ws.d) continue;
        bool standalone_power = false, elsewhere = false;
        for (int r = 0; r < 4; ++r) {
            long long e = W.matrix[r][j];
            if (e == 0) continue;
            bool pure = true;
            for (int c = 0; c < 4; ++c)
                if (c != j && W.matrix[r][c] != 0) pure = false;
            if (pure && e == p)
                standalone_power = true;
            else
                elsewhere = true;
        }
        if (standalone_power && !elsewhere) return j;
    }
    raise(ErrorCode::InvalidPair,
          "polynomial is not of the form x^" + std::to_string(p) + " + f(rest)");
}

} // namespace k3

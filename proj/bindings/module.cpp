#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "k3mirror/diaggrp.hpp"
#include "k3mirror/error.hpp"
#include "k3mirror/fixedlocus.hpp"
#include "k3mirror/invpoly.hpp"
#include "k3mirror/lattices.hpp"
#include "k3mirror/pipeline.hpp"
#include "k3mirror/weights.hpp"

namespace py = pybind11;
using namespace k3;

namespace {

WeightSystem ws_from_tuple(const std::vector<long long>& v) {
    if (v.size() != 5) throw Error(ErrorCode::ParseError, "expected [w1,w2,w3,w4,d]");
    return normalize({v[0], v[1], v[2], v[3]}, v[4]).ws;
}

std::vector<long long> ws_to_tuple(const WeightSystem& ws) {
    return {ws.w[0], ws.w[1], ws.w[2], ws.w[3], ws.d};
}

// Build the group J + <generators> over the canonical form of a polynomial
// given as text; generators use the input variable order.
SymmetryGroup group_for(const CanonicalResult& parsed, const std::string& group_literal_text) {
    auto J = j_group(parsed.poly.matrix, parsed.poly.ws);
    if (group_literal_text.empty()) return J;
    std::vector<Vec4> gens = J.gens;
    for (const auto& g : parse_group_literal(group_literal_text)) {
        Vec4 t;
        for (int i = 0; i < 4; ++i) t[i] = g[parsed.perm[i]];
        gens.push_back(t);
    }
    return subgroup_generated(parsed.poly.matrix, gens);
}

py::dict record_to_dict(const AnalysisRecord& rec) {
    py::dict d;
    d["yonemura_no"] = rec.yonemura_no;
    d["weight_system"] = ws_to_tuple(rec.weight_system);
    d["polynomial"] = rec.polynomial;
    d["p"] = rec.p;
    d["group_generators"] = group_literal(rec.group_generators);
    d["index"] = rec.index;
    d["r"] = rec.r;
    d["a"] = rec.a;
    d["g"] = rec.gnk.g;
    d["n"] = rec.gnk.n;
    d["k"] = rec.gnk.k;
    d["dual_polynomial_no"] = rec.dual_polynomial_no;
    d["dual_polynomial"] = rec.dual_polynomial;
    d["dual_group_index"] = rec.dual_group_index;
    d["dual_r"] = rec.dual_r;
    d["dual_a"] = rec.dual_a;
    d["mirror_check"] = rec.mirror_check;
    return d;
}

} // namespace

PYBIND11_MODULE(_core, m) {
    m.doc() = "p-cyclic K3 classification: invertible polynomials, diagonal symmetry "
              "groups, fixed-locus invariants and BHCR/LPK3 mirror verification";

    py::register_exception<Error>(m, "K3Error");

    m.def("normalize_weights",
          [](const std::vector<long long>& v) { return ws_to_tuple(ws_from_tuple(v)); },
          py::arg("weights_and_degree"));
    m.def("is_calabi_yau",
          [](const std::vector<long long>& v) { return is_calabi_yau(ws_from_tuple(v)); });
    m.def("admissible_families", [](int p) {
        py::list out;
        for (const auto& f : admissible_families(p)) {
            py::dict d;
            d["no"] = f.no;
            d["weights"] = ws_to_tuple(f.ws);
            d["primes"] = std::vector<int>(f.primes.begin(), f.primes.end());
            out.append(d);
        }
        return out;
    });

    m.def("canonical_polynomial",
          [](const std::string& text) { return parse_polynomial(text).poly.str(); });
    m.def("transpose_polynomial",
          [](const std::string& text) { return transpose(parse_polynomial(text).poly).str(); });
    m.def("polynomial_weights",
          [](const std::string& text) { return ws_to_tuple(parse_polynomial(text).poly.ws); });
    m.def("enumerate_form_p", [](const std::vector<long long>& v, int p) {
        std::vector<std::string> out;
        for (const auto& W : enumerate_form_p(ws_from_tuple(v), p)) out.push_back(W.str());
        return out;
    });

    m.def("group_order", [](const std::string& poly) {
        return full_group(parse_polynomial(poly).poly.matrix).order();
    });
    m.def("sl_index", [](const std::string& poly) {
        auto W = parse_polynomial(poly).poly;
        auto SL = sl_subgroup(full_group(W.matrix));
        return SL.order() / j_group(W.matrix, W.ws).order();
    });
    m.def("grading_operator", [](const std::string& poly) {
        return vec4_str(grading_operator(parse_polynomial(poly).poly.ws));
    });
    m.def("subgroups", [](const std::string& poly) {
        auto W = parse_polynomial(poly).poly;
        auto J = j_group(W.matrix, W.ws);
        auto SL = sl_subgroup(full_group(W.matrix));
        std::vector<std::pair<long long, std::string>> out;
        for (const auto& G : subgroups_between(J, SL))
            out.push_back({G.order() / J.order(), group_literal(G.gens)});
        return out;
    });
    m.def("dual_group_generators", [](const std::string& poly, const std::string& group) {
        auto parsed = parse_polynomial(poly);
        auto G = group_for(parsed, group);
        ExponentMatrix At{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) At[i][j] = parsed.poly.matrix[j][i];
        auto canonT = canonicalize(At);
        auto raw = dual_group(G, parsed.poly.matrix);
        std::vector<Vec4> dgens;
        for (const auto& g : raw.gens) {
            Vec4 t;
            for (int i = 0; i < 4; ++i) t[i] = g[canonT.perm[i]];
            dgens.push_back(t);
        }
        return group_literal(dgens);
    });

    m.def("lattice_info", [](const std::string& expr) {
        auto L = parse_lattice_expr(expr);
        auto d = discriminant(L);
        auto sig = signature(L);
        py::dict out;
        out["rank"] = L.rank();
        out["signature"] = std::make_pair(sig.first, sig.second);
        out["det"] = det_gram(L.gram);
        out["invariant_factors"] = d.invariant_factors;
        return out;
    });
    m.def("classify", [](int p, int r, int a) {
        auto row = classify(p, r, a);
        py::dict out;
        out["p"] = row.p;
        out["r"] = row.r;
        out["a"] = row.a;
        out["n"] = row.n;
        if (row.g) out["g"] = *row.g;
        if (row.k) out["k"] = *row.k;
        out["T"] = row.T_name;
        out["S"] = row.S_name;
        return out;
    });
    m.def("mirror_invariants", [](int p, int r, int a) { return mirror_invariants(p, r, a); });
    m.def("verify_mirror_decomposition",
          [](int p, int r, int a) { return verify_mirror_decomposition(p, r, a); });

    m.def("curve_genus", &curve_genus, py::arg("d"), py::arg("w1"), py::arg("w2"), py::arg("w3"));
    m.def("riemann_hurwitz", &riemann_hurwitz, py::arg("g_cover"), py::arg("deg"),
          py::arg("ram"));
    m.def("invariants_from_gnk", [](int p, int g, int n, int k) {
        auto li = invariants_from_gnk(p, FixedLocusInvariants{g, n, k});
        return std::make_pair(li.r, li.a);
    });
    m.def("resolve_fixed_locus",
          [](const std::string& poly, const std::string& group, int p) {
              auto parsed = parse_polynomial(poly);
              auto G = group_for(parsed, group);
              auto [f, li] = resolve_fixed_locus(parsed.poly, G, p);
              py::dict out;
              out["g"] = f.g;
              out["n"] = f.n;
              out["k"] = f.k;
              out["r"] = li.r;
              out["a"] = li.a;
              return out;
          },
          py::arg("poly"), py::arg("group") = std::string(), py::arg("p"));

    m.def("analyze",
          [](const std::string& poly, const std::string& group, int p) {
              auto parsed = parse_polynomial(poly);
              auto G = group_for(parsed, group);
              return record_to_dict(analyze(parsed.poly, G, p));
          },
          py::arg("poly"), py::arg("group") = std::string(), py::arg("p"));

    m.def("verify_tables", [](int p) {
        auto rep = verify_tables(p);
        py::dict out;
        out["p"] = rep.p;
        out["ok"] = rep.ok();
        out["mismatches"] = rep.mismatches;
        out["notes"] = rep.notes;
        out["rows"] = rep.rows.size();
        return out;
    });
    m.def("verify_tables_report", [](int p, const std::string& format) {
        auto rep = verify_tables(p);
        if (format == "json") return report_to_json(rep);
        if (format == "csv") return report_to_csv(rep);
        return report_to_md(rep);
    });
}

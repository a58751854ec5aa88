// k3mirror: classification of p-cyclic K3 surfaces from invertible
// polynomials x1^p + f(x2,x3,x4) and verification of the BHCR/LPK3 mirror
// correspondence against the built-in tables.

#include <iostream>
#include <string>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "k3mirror/diaggrp.hpp"
#include "k3mirror/error.hpp"
#include "k3mirror/fixedlocus.hpp"
#include "k3mirror/invpoly.hpp"
#include "k3mirror/lattices.hpp"
#include "k3mirror/pipeline.hpp"
#include "k3mirror/weights.hpp"

namespace {

using nlohmann::json;

json record_to_json(const k3::AnalysisRecord& rec) {
    json j;
    j["yonemura_no"] = rec.yonemura_no;
    j["weight_system"] = {rec.weight_system.w[0], rec.weight_system.w[1], rec.weight_system.w[2],
                          rec.weight_system.w[3], rec.weight_system.d};
    j["polynomial"] = rec.polynomial;
    j["p"] = rec.p;
    j["group_generators"] = k3::group_literal(rec.group_generators);
    j["index"] = rec.index;
    j["r"] = rec.r;
    j["a"] = rec.a;
    j["g"] = rec.gnk.g;
    j["n"] = rec.gnk.n;
    j["k"] = rec.gnk.k;
    j["dual_polynomial_no"] = rec.dual_polynomial_no;
    j["dual_polynomial"] = rec.dual_polynomial;
    j["dual_group_index"] = rec.dual_group_index;
    j["dual_r"] = rec.dual_r;
    j["dual_a"] = rec.dual_a;
    j["mirror_check"] = rec.mirror_check;
    return j;
}

// Transport group generators written in the input variable order to the
// canonical order chosen by the parser.
std::vector<k3::Vec4> transport_gens(const std::vector<k3::Vec4>& gens,
                                     const std::array<int, 4>& perm) {
    std::vector<k3::Vec4> out;
    for (const auto& g : gens) {
        k3::Vec4 t;
        for (int i = 0; i < 4; ++i) t[i] = g[perm[i]];
        out.push_back(t);
    }
    return out;
}

int run(int argc, char** argv) {
    CLI::App app{"p-cyclic K3 classification and BHCR/LPK3 mirror verification"};
    app.require_subcommand(1);

    // enumerate
    auto* enumerate = app.add_subcommand("enumerate", "list admissible polynomials for a prime");
    int en_p = 0;
    std::string en_weights;
    enumerate->add_option("--prime", en_p, "prime p in {3,5,7,13}")->required();
    enumerate->add_option("--weights", en_weights, "w1,w2,w3,w4,d (defaults to all families)");

    // analyze
    auto* analyze = app.add_subcommand("analyze", "full record for one (W,G) pair");
    std::string an_poly, an_group;
    long long an_index = 0;
    int an_p = 0;
    analyze->add_option("--poly", an_poly, "polynomial, e.g. \"x^2+y^3+z^8+w^24\"")->required();
    analyze->add_option("--prime", an_p, "prime p")->required();
    analyze->add_option("--group", an_group, "generators, e.g. \"1/2,0,0,1/2\" (';'-separated)");
    analyze->add_option("--group-index", an_index, "|G/J_W| (when that index is unique)");

    // dual
    auto* dual = app.add_subcommand("dual", "transpose polynomial and dual group");
    std::string du_poly, du_group;
    dual->add_option("--poly", du_poly, "polynomial")->required();
    dual->add_option("--group", du_group, "generators of G")->required();

    // lattice
    auto* lattice = app.add_subcommand("lattice", "invariants of a lattice expression");
    std::string la_expr;
    lattice->add_option("--expr", la_expr, "e.g. \"U+E8\" or \"U(3)+A2^2\"")->required();

    // mirror
    auto* mirror = app.add_subcommand("mirror", "mirror invariants of a classification row");
    int mi_p = 0, mi_r = 0, mi_a = 0;
    mirror->add_option("--prime", mi_p)->required();
    mirror->add_option("--r", mi_r)->required();
    mirror->add_option("--a", mi_a)->required();

    // verify-tables
    auto* verify = app.add_subcommand("verify-tables", "regenerate and diff one golden table");
    int ve_p = 0;
    std::string ve_format = "md", ve_golden;
    verify->add_option("--prime", ve_p, "prime p")->required();
    verify->add_option("--format", ve_format, "json|csv|md")
        ->check(CLI::IsMember({"json", "csv", "md"}));
    verify->add_option("--golden", ve_golden, "override the embedded golden tables");

    CLI11_PARSE(app, argc, argv);

    if (enumerate->parsed()) {
        json out = json::array();
        std::vector<std::pair<std::string, k3::WeightSystem>> systems;
        if (!en_weights.empty()) {
            std::array<long long, 5> v{};
            std::stringstream ss(en_weights);
            std::string part;
            int i = 0;
            while (std::getline(ss, part, ',') && i < 5) v[i++] = std::stoll(part);
            if (i != 5) k3::raise(k3::ErrorCode::ParseError, "--weights needs w1,w2,w3,w4,d");
            auto nr = k3::normalize({v[0], v[1], v[2], v[3]}, v[4]);
            systems.push_back({"", nr.ws});
        } else {
            for (const auto& f : k3::admissible_families(en_p)) systems.push_back({f.no, f.ws});
        }
        for (const auto& [no, ws] : systems) {
            json fam;
            fam["no"] = no;
            fam["weights"] = {ws.w[0], ws.w[1], ws.w[2], ws.w[3]};
            fam["degree"] = ws.d;
            fam["polynomials"] = json::array();
            for (const auto& W : k3::enumerate_form_p(ws, en_p)) {
                auto full = k3::full_group(W.matrix);
                auto SL = k3::sl_subgroup(full);
                auto J = k3::j_group(W.matrix, W.ws);
                json pj;
                pj["polynomial"] = W.str();
                pj["order_GW"] = full.order();
                pj["sl_index"] = SL.order() / J.order();
                fam["polynomials"].push_back(pj);
            }
            out.push_back(fam);
        }
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (analyze->parsed()) {
        auto parsed = k3::parse_polynomial(an_poly);
        auto W = parsed.poly;
        auto J = k3::j_group(W.matrix, W.ws);
        k3::SymmetryGroup G;
        if (!an_group.empty()) {
            auto gens = transport_gens(k3::parse_group_literal(an_group), parsed.perm);
            gens.insert(gens.end(), J.gens.begin(), J.gens.end());
            G = k3::subgroup_generated(W.matrix, gens);
        } else if (an_index > 0) {
            auto SL = k3::sl_subgroup(k3::full_group(W.matrix));
            auto subs = k3::subgroups_between(J, SL);
            int hits = 0;
            for (const auto& s : subs)
                if (s.order() / J.order() == an_index) {
                    G = s;
                    ++hits;
                }
            if (hits == 0)
                k3::raise(k3::ErrorCode::InvalidPair, "no subgroup of that index");
            if (hits > 1)
                k3::raise(k3::ErrorCode::Ambiguous,
                          "several subgroups of that index; pass --group");
        } else {
            G = J;
        }
        auto rec = k3::analyze(W, G, an_p);
        std::cout << record_to_json(rec).dump(2) << "\n";
        return 0;
    }

    if (dual->parsed()) {
        auto parsed = k3::parse_polynomial(du_poly);
        auto W = parsed.poly;
        auto J = k3::j_group(W.matrix, W.ws);
        auto gens = transport_gens(k3::parse_group_literal(du_group), parsed.perm);
        gens.insert(gens.end(), J.gens.begin(), J.gens.end());
        auto G = k3::subgroup_generated(W.matrix, gens);
        auto Wt = k3::transpose(W);
        // transport the dual group into the canonical coordinates of W^T
        k3::ExponentMatrix At{};
        for (int i = 0; i < 4; ++i)
            for (int j = 0; j < 4; ++j) At[i][j] = W.matrix[j][i];
        auto canonT = k3::canonicalize(At);
        auto raw = k3::dual_group(G, W.matrix);
        std::vector<k3::Vec4> dgens = transport_gens(raw.gens, canonT.perm);
        auto Gt = k3::subgroup_generated(Wt.matrix, dgens);
        json out;
        out["polynomial"] = W.str();
        out["dual_polynomial"] = Wt.str();
        out["dual_group_generators"] = k3::group_literal(Gt.gens);
        out["dual_group_order"] = Gt.order();
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (lattice->parsed()) {
        auto L = k3::parse_lattice_expr(la_expr);
        auto d = k3::discriminant(L);
        auto sig = k3::signature(L);
        json out;
        out["expr"] = la_expr;
        out["rank"] = L.rank();
        out["signature"] = {sig.first, sig.second};
        out["det"] = k3::det_gram(L.gram);
        out["discriminant_order"] = d.order;
        out["invariant_factors"] = d.invariant_factors;
        if (d.p_elementary)
            out["p_elementary"] = {{"p", d.p_elementary->first}, {"a", d.p_elementary->second}};
        out["gram"] = L.gram;
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (mirror->parsed()) {
        auto [mr, ma] = k3::mirror_invariants(mi_p, mi_r, mi_a);
        auto row = k3::classify(mi_p, mi_r, mi_a);
        auto mrow = k3::classify(mi_p, mr, ma);
        json out;
        out["p"] = mi_p;
        out["r"] = mi_r;
        out["a"] = mi_a;
        out["S"] = row.S_name;
        out["T"] = row.T_name;
        out["mirror_r"] = mr;
        out["mirror_a"] = ma;
        out["mirror_S"] = mrow.S_name;
        out["decomposition_ok"] = k3::verify_mirror_decomposition(mi_p, mi_r, mi_a);
        std::cout << out.dump(2) << "\n";
        return 0;
    }

    if (verify->parsed()) {
        if (!ve_golden.empty()) k3::set_golden_override(ve_golden);
        auto rep = k3::verify_tables(ve_p);
        if (ve_format == "json")
            std::cout << k3::report_to_json(rep) << "\n";
        else if (ve_format == "csv")
            std::cout << k3::report_to_csv(rep);
        else
            std::cout << k3::report_to_md(rep);
        return rep.ok() ? 0 : 1;
    }
    return 2;
}

} // namespace

int main(int argc, char** argv) {
    try {
        return run(argc, argv);
    } catch (const k3::Error& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
}

#include "k3mirror/weights.hpp"

#include <algorithm>
#include <numeric>
#include <sstream>

#include <nlohmann/json.hpp>

#include "k3mirror/data.hpp"
#include "k3mirror/error.hpp"

namespace k3 {

namespace {

std::string g_families_path; // optional runtime override

std::vector<FamilyEntry> load_families(const std::string& json_text) {
    std::vector<FamilyEntry> out;
    auto j = nlohmann::json::parse(json_text);
    for (const auto& e : j) {
        FamilyEntry fe;
        fe.no = e.at("no").get<std::string>();
        std::array<long long, 4> w{};
        for (int i = 0; i < 4; ++i) w[i] = e.at("weights").at(i).get<long long>();
        auto nr = normalize(w, e.at("degree").get<long long>());
        fe.ws = nr.ws;
        for (const auto& p : e.at("primes")) fe.primes.insert(p.get<int>());
        out.push_back(std::move(fe));
    }
    return out;
}

} // namespace

std::string WeightSystem::str() const {
    std::ostringstream os;
    os << "(" << w[0] << "," << w[1] << "," << w[2] << "," << w[3] << ";" << d << ")";
    return os.str();
}

NormalizeResult normalize(const std::array<long long, 4>& raw, long long degree) {
    for (auto wi : raw)
        if (wi <= 0) raise(ErrorCode::ZeroWeight, "weights must be positive");
    if (degree <= 0) raise(ErrorCode::ZeroWeight, "degree must be positive");

    long long g = 0;
    for (auto wi : raw) g = std::gcd(g, wi);
    if (degree % g != 0)
        raise(ErrorCode::Inconsistent, "degree not divisible by gcd of weights");

    std::array<int, 4> perm = {0, 1, 2, 3};
    std::stable_sort(perm.begin(), perm.end(),
                     [&](int i, int j) { return raw[i] > raw[j]; });

    NormalizeResult res;
    for (int i = 0; i < 4; ++i) res.ws.w[i] = raw[perm[i]] / g;
    res.ws.d = degree / g;
    res.perm = perm;
    return res;
}

bool is_calabi_yau(const WeightSystem& ws) {
    return ws.w[0] + ws.w[1] + ws.w[2] + ws.w[3] == ws.d;
}

const std::vector<FamilyEntry>& all_families() {
    static std::vector<FamilyEntry> families = load_families(kFamiliesJson);
    return families;
}

std::vector<FamilyEntry> admissible_families(int p) {
    if (p != 3 && p != 5 && p != 7 && p != 13)
        raise(ErrorCode::UnsupportedPrime, "p must be one of 3,5,7,13");
    std::vector<FamilyEntry> out;
    for (const auto& f : all_families())
        if (f.primes.count(p)) out.push_back(f);
    return out;
}

} // namespace k3

#pragma once

#include <array>
#include <tuple>
#include <set>
#include <string>
#include <vector>

namespace k3 {

// Weight system (w1,w2,w3,w4;d) of a weighted projective 3-space, normalized
// so that gcd(w)=1 and w1 >= w2 >= w3 >= w4.
struct WeightSystem {
    std::array<long long, 4> w{};
    long long d = 0;

    bool operator==(const WeightSystem& o) const { return w == o.w && d == o.d; }
    bool operator<(const WeightSystem& o) const { return std::tie(w, d) < std::tie(o.w, o.d); }
    std::string str() const;
};

struct NormalizeResult {
    WeightSystem ws;
    std::array<int, 4> perm; // perm[i] = original slot placed at canonical slot i
};

// gcd-divide, sort nonincreasing. Errors: ZeroWeight.
NormalizeResult normalize(const std::array<long long, 4>& raw, long long degree);

// True iff w1+w2+w3+w4 == d.
bool is_calabi_yau(const WeightSystem& ws);

struct FamilyEntry {
    std::string no; // Yonemura number, opaque identifier
    WeightSystem ws;
    std::set<int> primes;
};

// The 41 admissible weight systems carrying polynomials x1^p + f with p in
// {3,5,7,13}, keyed by Yonemura number. Errors: UnsupportedPrime.
std::vector<FamilyEntry> admissible_families(int p);

const std::vector<FamilyEntry>& all_families();

} // namespace k3

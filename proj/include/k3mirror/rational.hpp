#pragma once

#include <array>
#include <cstdint>
#include <numeric>
#include <string>

namespace k3 {

// Exact rational arithmetic on int64. All quantities in this project are tiny
// (denominators bounded by lcm's of weights, numerators by small table data),
// so no overflow guards beyond asserts in debug builds.
struct Rat {
    long long num = 0;
    long long den = 1; // > 0, gcd(num,den) == 1

    Rat() = default;
    Rat(long long n) : num(n), den(1) {}
    Rat(long long n, long long d) : num(n), den(d) { reduce(); }

    void reduce();

    bool is_integer() const { return den == 1; }

    Rat operator+(const Rat& o) const { return Rat(num * o.den + o.num * den, den * o.den); }
    Rat operator-(const Rat& o) const { return Rat(num * o.den - o.num * den, den * o.den); }
    Rat operator-() const { return Rat(-num, den); }
    Rat operator*(const Rat& o) const { return Rat(num * o.num, den * o.den); }
    Rat operator/(const Rat& o) const { return Rat(num * o.den, den * o.num); }

    bool operator==(const Rat& o) const { return num == o.num && den == o.den; }
    bool operator!=(const Rat& o) const { return !(*this == o); }
    bool operator<(const Rat& o) const { return num * o.den < o.num * den; }
    bool operator<=(const Rat& o) const { return num * o.den <= o.num * den; }
    bool operator>(const Rat& o) const { return o < *this; }
    bool operator>=(const Rat& o) const { return o <= *this; }

    // Representative in [0,1).
    Rat mod1() const {
        long long m = ((num % den) + den) % den;
        return Rat(m, den);
    }

    std::string str() const;
};

Rat parse_rat(const std::string& s);

using Vec4 = std::array<Rat, 4>;

inline Vec4 vadd(const Vec4& a, const Vec4& b) {
    return {(a[0] + b[0]).mod1(), (a[1] + b[1]).mod1(), (a[2] + b[2]).mod1(), (a[3] + b[3]).mod1()};
}
inline Vec4 vneg(const Vec4& a) {
    return {(-a[0]).mod1(), (-a[1]).mod1(), (-a[2]).mod1(), (-a[3]).mod1()};
}
inline bool vzero(const Vec4& a) {
    return a[0].num == 0 && a[1].num == 0 && a[2].num == 0 && a[3].num == 0;
}

std::string vec4_str(const Vec4& v);
Vec4 parse_vec4(const std::string& s);

// Order of an element of (Q/Z)^4 under addition.
long long element_order(const Vec4& v);

} // namespace k3

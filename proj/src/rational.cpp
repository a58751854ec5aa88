#include "k3mirror/rational.hpp"

#include <cstdlib>
#include <sstream>

#include "k3mirror/error.hpp"

namespace k3 {

const char* error_code_name(ErrorCode c) {
    switch (c) {
        case ErrorCode::ZeroWeight: return "ZeroWeight";
        case ErrorCode::UnsupportedPrime: return "UnsupportedPrime";
        case ErrorCode::NotInvertible: return "NotInvertible";
        case ErrorCode::NonIntegerGenus: return "NonIntegerGenus";
        case ErrorCode::Inconsistent: return "Inconsistent";
        case ErrorCode::Ambiguous: return "Ambiguous";
        case ErrorCode::NoConfiguration: return "NoConfiguration";
        case ErrorCode::CongruenceViolation: return "CongruenceViolation";
        case ErrorCode::NoSuchRow: return "NoSuchRow";
        case ErrorCode::NotMirrorHyperbolic: return "NotMirrorHyperbolic";
        case ErrorCode::InvalidPair: return "InvalidPair";
        case ErrorCode::ParseError: return "ParseError";
        case ErrorCode::DataError: return "DataError";
    }
    return "Error";
}

void Rat::reduce() {
    if (den == 0) raise(ErrorCode::Inconsistent, "zero denominator");
    if (den < 0) {
        num = -num;
        den = -den;
    }
    long long g = std::gcd(std::llabs(num), den);
    if (g > 1) {
        num /= g;
        den /= g;
    }
    if (num == 0) den = 1;
}

std::string Rat::str() const {
    if (den == 1) return std::to_string(num);
    return std::to_string(num) + "/" + std::to_string(den);
}

Rat parse_rat(const std::string& s) {
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rat(std::stoll(s));
        return Rat(std::stoll(s.substr(0, slash)), std::stoll(s.substr(slash + 1)));
    } catch (const std::exception&) {
        raise(ErrorCode::ParseError, "bad fraction '" + s + "'");
    }
}

std::string vec4_str(const Vec4& v) {
    std::ostringstream os;
    for (int i = 0; i < 4; ++i) {
        if (i) os << ",";
        os << v[i].str();
    }
    return os.str();
}

Vec4 parse_vec4(const std::string& s) {
    Vec4 v;
    std::stringstream ss(s);
    std::string part;
    int i = 0;
    while (std::getline(ss, part, ',')) {
        if (i >= 4) raise(ErrorCode::ParseError, "expected 4 coordinates in '" + s + "'");
        v[i++] = parse_rat(part).mod1();
    }
    if (i != 4) raise(ErrorCode::ParseError, "expected 4 coordinates in '" + s + "'");
    return v;
}

long long element_order(const Vec4& v) {
    long long l = 1;
    for (const auto& c : v) l = std::lcm(l, c.den);
    return l;
}

} // namespace k3

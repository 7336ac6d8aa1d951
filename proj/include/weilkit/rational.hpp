#pragma once
#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>

namespace weilkit {

using Int = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

struct BadRational : std::runtime_error {
    explicit BadRational(const std::string& s) : std::runtime_error("BadRational: " + s) {}
};

// Parses "p" or "p/q" with optional leading sign; q must be positive.
inline Rational parse_rational(const std::string& s) {
    auto bad = [&] { throw BadRational(s); };
    if (s.empty()) bad();
    auto slash = s.find('/');
    try {
        if (slash == std::string::npos) return Rational(Int(s));
        Int p(s.substr(0, slash)), q(s.substr(slash + 1));
        if (q <= 0) bad();
        return Rational(p, q);
    } catch (const std::runtime_error&) {
        bad();
    }
    return {};
}

// Renders as "p/q", or "p" when the denominator is 1.
inline std::string rat_str(const Rational& r) {
    Int num = numerator(r), den = denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

} // namespace weilkit

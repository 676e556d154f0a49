#include "bellpoly/rational.hpp"

#include <cmath>
#include <stdexcept>

#include "bellpoly/errors.hpp"

namespace bellpoly {

Rational rational_from_double(double x) {
    if (!std::isfinite(x)) {
        throw ValidationError("cannot convert non-finite double to rational");
    }
    return Rational(x);  // mpq_set_d is exact
}

double to_double(const Rational& r) { return r.convert_to<double>(); }

Rational parse_rational(const std::string& text) {
    if (text.empty()) throw ValidationError("empty rational literal");
    const auto slash = text.find('/');
    try {
        if (slash != std::string::npos) {
            BigInt num(text.substr(0, slash));
            BigInt den(text.substr(slash + 1));
            if (den == 0) throw ValidationError("zero denominator in '" + text + "'");
            return Rational(num, den);
        }
        const auto dot = text.find('.');
        if (dot == std::string::npos) {
            return Rational(BigInt(text));
        }
        // Decimal literal: digits before and after the point.
        std::string digits = text.substr(0, dot) + text.substr(dot + 1);
        const std::size_t frac_len = text.size() - dot - 1;
        BigInt den = 1;
        for (std::size_t i = 0; i < frac_len; ++i) den *= 10;
        return Rational(BigInt(digits), den);
    } catch (const std::runtime_error&) {
        throw ValidationError("bad rational literal '" + text + "'");
    }
}

std::string to_string(const Rational& r) { return r.str(); }

BigInt denominator_lcm(std::span<const Rational> values) {
    BigInt l = 1;
    for (const Rational& v : values) {
        l = boost::multiprecision::lcm(l, BigInt(boost::multiprecision::denominator(v)));
    }
    return l;
}

}  // namespace bellpoly

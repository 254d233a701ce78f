#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <stdexcept>
#include <string>
#include <string_view>

namespace proxivor {

using Int = boost::multiprecision::cpp_int;

// Exact rational, always in lowest terms with positive denominator
// (maintained by the backend).
using Rational = boost::multiprecision::cpp_rational;

class Error : public std::runtime_error {
public:
    explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Accepts "p", "-p", "p/q" with q > 0 after normalization. Rejects anything
// else (in particular decimal notation, which would silently lose exactness).
Rational parse_rational(std::string_view text);

// "p/q" when the denominator is not 1, otherwise just "p".
std::string rational_str(const Rational& r);

double rational_to_double(const Rational& r);

inline Rational rat(long long num, long long den = 1) {
    return Rational(Int(num), Int(den));
}

}  // namespace proxivor

#include "proxivor/rational.hpp"

#include <cctype>

namespace proxivor {

namespace {

bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s) {
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    }
    return true;
}

Int parse_int(std::string_view s, std::string_view original) {
    bool neg = false;
    if (!s.empty() && (s[0] == '-' || s[0] == '+')) {
        neg = s[0] == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) {
        throw Error("invalid rational literal: \"" + std::string(original) + "\"");
    }
    Int v{std::string(s)};
    return neg ? Int(-v) : v;
}

}  // namespace

Rational parse_rational(std::string_view text) {
    auto slash = text.find('/');
    if (slash == std::string_view::npos) {
        return Rational(parse_int(text, text));
    }
    Int num = parse_int(text.substr(0, slash), text);
    std::string_view den_part = text.substr(slash + 1);
    if (!den_part.empty() && den_part[0] == '-') {
        throw Error("invalid rational literal: \"" + std::string(text) +
                    "\" (denominator must be positive)");
    }
    Int den = parse_int(den_part, text);
    if (den == 0) {
        throw Error("invalid rational literal: \"" + std::string(text) +
                    "\" (zero denominator)");
    }
    return Rational(num, den);
}

std::string rational_str(const Rational& r) {
    Int num = boost::multiprecision::numerator(r);
    Int den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

double rational_to_double(const Rational& r) {
    return r.convert_to<double>();
}

}  // namespace proxivor

#ifndef BALLAST_RATIONAL_HPP
#define BALLAST_RATIONAL_HPP

#include <cctype>
#include <cstddef>
#include <string>
#include <string_view>

#include <boost/multiprecision/cpp_int.hpp>

#include "ballast/error.hpp"

namespace ballast {

// Every position, length and center in the library is an exact rational.
// cpp_rational keeps numerator/denominator canonical (gcd 1, denominator > 0).
using BigInt = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

inline Rational abs(const Rational& r) { return r < 0 ? Rational(-r) : r; }

namespace detail {

inline std::string_view trim(std::string_view s) {
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
    while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
    return s;
}

inline bool all_digits(std::string_view s) {
    if (s.empty()) return false;
    for (char c : s)
        if (!std::isdigit(static_cast<unsigned char>(c))) return false;
    return true;
}

// cpp_int treats a leading 0 as an octal prefix
inline BigInt from_digits(std::string_view digits) {
    const auto first = digits.find_first_not_of('0');
    if (first == std::string_view::npos) return 0;
    return BigInt{std::string(digits.substr(first))};
}

inline BigInt parse_integer(std::string_view s, std::string_view whole) {
    bool negative = false;
    if (!s.empty() && (s.front() == '+' || s.front() == '-')) {
        negative = s.front() == '-';
        s.remove_prefix(1);
    }
    if (!all_digits(s)) throw InputError("not a number: '" + std::string(whole) + "'");
    BigInt v = from_digits(s);
    return negative ? BigInt(-v) : v;
}

inline BigInt pow10(std::size_t e) {
    BigInt r = 1;
    for (std::size_t i = 0; i < e; ++i) r *= 10;
    return r;
}

} // namespace detail

/// Parses "7", "-7", "1/3", "0.8", "-1.25e-3" into an exact rational.
/// Decimal strings are read exactly (0.1 is 1/10, never a binary float).
inline Rational parse_rational(std::string_view text) {
    const std::string_view s = detail::trim(text);
    if (s.empty()) throw InputError("empty number");

    if (auto slash = s.find('/'); slash != std::string_view::npos) {
        BigInt num = detail::parse_integer(detail::trim(s.substr(0, slash)), s);
        BigInt den = detail::parse_integer(detail::trim(s.substr(slash + 1)), s);
        if (den == 0) throw InputError("zero denominator: '" + std::string(s) + "'");
        return Rational(num, den);
    }

    std::string_view mantissa = s;
    long long exponent = 0;
    if (auto e = s.find_first_of("eE"); e != std::string_view::npos) {
        mantissa = s.substr(0, e);
        std::string_view exp_text = s.substr(e + 1);
        BigInt exp_value = detail::parse_integer(exp_text, s);
        if (exp_value > 4096 || exp_value < -4096) throw InputError("exponent out of range: '" + std::string(s) + "'");
        exponent = exp_value.convert_to<long long>();
    }

    bool negative = false;
    if (!mantissa.empty() && (mantissa.front() == '+' || mantissa.front() == '-')) {
        negative = mantissa.front() == '-';
        mantissa.remove_prefix(1);
    }
    std::string digits;
    std::size_t fraction_digits = 0;
    if (auto dot = mantissa.find('.'); dot != std::string_view::npos) {
        std::string_view int_part = mantissa.substr(0, dot);
        std::string_view frac_part = mantissa.substr(dot + 1);
        if (int_part.empty() && frac_part.empty()) throw InputError("not a number: '" + std::string(s) + "'");
        if ((!int_part.empty() && !detail::all_digits(int_part)) || (!frac_part.empty() && !detail::all_digits(frac_part)))
            throw InputError("not a number: '" + std::string(s) + "'");
        digits = std::string(int_part) + std::string(frac_part);
        fraction_digits = frac_part.size();
    } else {
        if (!detail::all_digits(mantissa)) throw InputError("not a number: '" + std::string(s) + "'");
        digits = std::string(mantissa);
    }

    Rational value(detail::from_digits(digits), detail::pow10(fraction_digits));
    if (exponent > 0) value *= detail::pow10(static_cast<std::size_t>(exponent));
    if (exponent < 0) value /= detail::pow10(static_cast<std::size_t>(-exponent));
    return negative ? Rational(-value) : value;
}

/// Canonical exact rendering: "p" for integers, "p/q" otherwise. Lossless under parse_rational.
inline std::string to_string(const Rational& r) {
    const BigInt& num = boost::multiprecision::numerator(r);
    const BigInt& den = boost::multiprecision::denominator(r);
    if (den == 1) return num.str();
    return num.str() + "/" + den.str();
}

/// Decimal rendering with at most `digits` fractional digits, rounded half away
/// from zero, trailing zeros trimmed. Deterministic, so reports are byte-stable.
inline std::string to_decimal(const Rational& r, std::size_t digits = 12) {
    const bool negative = r < 0;
    const Rational a = abs(r);
    const BigInt scale = detail::pow10(digits);
    const BigInt num = boost::multiprecision::numerator(a) * scale;
    const BigInt den = boost::multiprecision::denominator(a);
    BigInt q = num / den;
    const BigInt rem = num % den;
    if (rem * 2 >= den) ++q;

    std::string s = q.str();
    if (s.size() <= digits) s.insert(0, digits + 1 - s.size(), '0');
    std::string int_part = s.substr(0, s.size() - digits);
    std::string frac_part = s.substr(s.size() - digits);
    while (!frac_part.empty() && frac_part.back() == '0') frac_part.pop_back();

    std::string out = int_part;
    if (!frac_part.empty()) out += "." + frac_part;
    if (negative && out != "0") out.insert(0, "-");
    return out;
}

} // namespace ballast

#endif // BALLAST_RATIONAL_HPP

#pragma once

// Exact integer/rational scalar types shared by every module, plus the
// error types thrown across the library.

#include <boost/multiprecision/cpp_bin_float.hpp>
#include <boost/multiprecision/cpp_int.hpp>

#include <cctype>
#include <cstddef>
#include <iomanip>
#include <sstream>
#include <stdexcept>
#include <string>
#include <string_view>

namespace mbl {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

/// Precondition or argument outside the mathematical domain of an operation.
struct DomainError : std::domain_error {
    using std::domain_error::domain_error;
};

/// A checked mathematical invariant did not hold. Carries a human-readable
/// witness so reports can name the offending value.
struct VerificationFailure : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct ParseError : std::runtime_error {
    ParseError(std::size_t line, const std::string& what)
        : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}
    std::size_t line() const noexcept { return line_; }

private:
    std::size_t line_;
};

inline Integer numerator_of(const Rational& r) { return boost::multiprecision::numerator(r); }
inline Integer denominator_of(const Rational& r) { return boost::multiprecision::denominator(r); }

inline int sign(const Integer& x) { return x.sign(); }
inline int sign(const Rational& x) { return x.sign(); }

inline Integer isqrt(const Integer& n) {
    if (n.sign() < 0) throw DomainError("isqrt of a negative integer");
    return boost::multiprecision::sqrt(n);
}

inline bool is_perfect_square(const Integer& n) {
    if (n.sign() < 0) return false;
    Integer s = isqrt(n);
    return s * s == n;
}

inline Integer gcd(const Integer& a, const Integer& b) {
    return boost::multiprecision::gcd(a, b);
}

inline Integer abs(const Integer& a) { return a.sign() < 0 ? Integer(-a) : a; }
inline Rational abs(const Rational& a) { return a.sign() < 0 ? Rational(-a) : a; }

inline Integer pow10(unsigned k) { return boost::multiprecision::pow(Integer(10), k); }

inline std::string to_string(const Integer& x) { return x.str(); }

/// "p/q" in lowest terms, or "p" when the denominator is one.
inline std::string to_string(const Rational& r) {
    if (denominator_of(r) == 1) return numerator_of(r).str();
    return numerator_of(r).str() + "/" + denominator_of(r).str();
}

inline Integer parse_integer(std::string_view text) {
    std::size_t i = 0;
    while (i < text.size() && std::isspace(static_cast<unsigned char>(text[i]))) ++i;
    std::size_t j = text.size();
    while (j > i && std::isspace(static_cast<unsigned char>(text[j - 1]))) --j;
    text = text.substr(i, j - i);
    std::size_t start = (!text.empty() && (text[0] == '-' || text[0] == '+')) ? 1 : 0;
    if (text.size() == start) throw std::invalid_argument("empty integer literal");
    for (std::size_t k = start; k < text.size(); ++k) {
        if (!std::isdigit(static_cast<unsigned char>(text[k])))
            throw std::invalid_argument("invalid integer literal '" + std::string(text) + "'");
    }
    Integer v(std::string(text.substr(start)));
    return text[0] == '-' ? Integer(-v) : v;
}

namespace detail {

// One summand: "p/q", "p", or a decimal such as "0.25", "2e-44", "1.5E3".
inline Rational parse_rational_term(std::string_view t) {
    auto slash = t.find('/');
    if (slash != std::string_view::npos) {
        Integer den = parse_integer(t.substr(slash + 1));
        if (den == 0) throw std::invalid_argument("zero denominator in '" + std::string(t) + "'");
        return Rational(parse_integer(t.substr(0, slash)), den);
    }
    auto epos = t.find_first_of("eE");
    std::string_view mant = t.substr(0, epos);
    long exponent = 0;
    if (epos != std::string_view::npos) {
        exponent = static_cast<long>(parse_integer(t.substr(epos + 1)));
    }
    auto dot = mant.find('.');
    std::string digits(mant.substr(0, dot));
    if (dot != std::string_view::npos) {
        std::string frac(mant.substr(dot + 1));
        digits += frac;
        exponent -= static_cast<long>(frac.size());
    }
    if (digits.empty() || digits == "-" || digits == "+")
        throw std::invalid_argument("invalid rational literal '" + std::string(t) + "'");
    Rational v(parse_integer(digits));
    if (exponent >= 0) return v * Rational(pow10(static_cast<unsigned>(exponent)));
    return v / Rational(pow10(static_cast<unsigned>(-exponent)));
}

}  // namespace detail

/// Parses exact rationals: "p/q", integers, decimals with optional exponent,
/// and sums of those joined by '+' (e.g. "1/3+2e-44").
inline Rational parse_rational(std::string_view text) {
    std::string compact;
    for (char ch : text)
        if (!std::isspace(static_cast<unsigned char>(ch))) compact.push_back(ch);
    if (compact.empty()) throw std::invalid_argument("empty rational literal");
    Rational total = 0;
    std::size_t start = 0;
    for (std::size_t i = 1; i <= compact.size(); ++i) {
        bool split = i == compact.size() ||
                     (compact[i] == '+' && compact[i - 1] != 'e' && compact[i - 1] != 'E');
        if (!split) continue;
        std::string_view term(compact.data() + start, i - start);
        if (!term.empty() && term[0] == '+') term.remove_prefix(1);
        total += detail::parse_rational_term(term);
        start = i + 1;
    }
    return total;
}

/// Human-readable decimal preview with `digits` significant digits. Display only.
inline std::string decimal_preview(const Rational& r, int digits = 12) {
    using Float = boost::multiprecision::cpp_bin_float_100;
    Float v = static_cast<Float>(numerator_of(r)) / static_cast<Float>(denominator_of(r));
    std::ostringstream os;
    os << std::setprecision(digits) << v;
    return os.str();
}

}  // namespace mbl

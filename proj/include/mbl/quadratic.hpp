#pragma once

// Exact values q + s*sqrt(r) with rational q, s and a non-negative radicand,
// with sign-exact comparison. Enough algebra for Lagrange numbers and the
// accumulation points 2/(3 + sqrt(9 - 4/a^2)); not a general number field.

#include "mbl/numeric.hpp"

#include <compare>
#include <ostream>
#include <string>

namespace mbl {

class QuadraticValue {
public:
    QuadraticValue() = default;
    QuadraticValue(Rational q) : q_(std::move(q)) {}  // NOLINT(google-explicit-constructor)
    QuadraticValue(Rational q, Rational s, const Rational& r) : q_(std::move(q)), s_(std::move(s)) {
        if (r.sign() < 0) throw DomainError("QuadraticValue: negative radicand " + mbl::to_string(r));
        // sqrt(n/d) = sqrt(n*d)/d keeps the radicand integral.
        Integer d = denominator_of(r);
        r_ = numerator_of(r) * d;
        s_ /= Rational(d);
        normalize();
    }

    static QuadraticValue sqrt_of(const Rational& x) { return {Rational(0), Rational(1), x}; }

    const Rational& q() const noexcept { return q_; }
    const Rational& s() const noexcept { return s_; }
    /// Square-free-reduced (over small primes) radicand; 0 for rational values.
    const Integer& r() const noexcept { return r_; }
    bool is_rational() const { return s_.sign() == 0; }

    QuadraticValue operator-() const { return raw(-q_, -s_, r_); }
    friend QuadraticValue operator+(const QuadraticValue& x, const Rational& y) {
        return raw(x.q_ + y, x.s_, x.r_);
    }
    friend QuadraticValue operator-(const QuadraticValue& x, const Rational& y) { return x + Rational(-y); }
    friend QuadraticValue operator*(const QuadraticValue& x, const Rational& y) {
        return raw(x.q_ * y, x.s_ * y, x.r_);
    }
    /// Sum of values sharing a radicand (or where one side is rational).
    friend QuadraticValue operator+(const QuadraticValue& x, const QuadraticValue& y) {
        if (y.is_rational()) return x + y.q_;
        if (x.is_rational()) return y + x.q_;
        if (x.r_ != y.r_) throw DomainError("QuadraticValue: sum of different radicands is not representable");
        return raw(x.q_ + y.q_, x.s_ + y.s_, x.r_);
    }
    friend QuadraticValue operator-(const QuadraticValue& x, const QuadraticValue& y) { return x + (-y); }

    /// 1/(q + s sqrt r) = (q - s sqrt r)/(q^2 - s^2 r).
    QuadraticValue reciprocal() const {
        Rational norm = q_ * q_ - s_ * s_ * Rational(r_);
        if (norm.sign() == 0) throw DomainError("QuadraticValue: reciprocal of zero");
        return raw(q_ / norm, -s_ / norm, r_);
    }

    /// Exact sign of this value.
    int sign() const { return sign_of(q_, s_, r_); }

    friend std::strong_ordering compare(const QuadraticValue& x, const QuadraticValue& y) {
        int s = difference_sign(x, y);
        return s < 0 ? std::strong_ordering::less
               : s > 0 ? std::strong_ordering::greater
                       : std::strong_ordering::equal;
    }
    friend std::strong_ordering operator<=>(const QuadraticValue& x, const QuadraticValue& y) {
        return compare(x, y);
    }
    friend bool operator==(const QuadraticValue& x, const QuadraticValue& y) {
        return difference_sign(x, y) == 0;
    }

    std::string str() const {
        if (is_rational()) return mbl::to_string(q_);
        std::string out;
        if (q_.sign() != 0) out = mbl::to_string(q_) + (s_.sign() > 0 ? " + " : " - ");
        else if (s_.sign() < 0) out = "-";
        Rational mag = abs(s_);
        if (mag != 1) out += mbl::to_string(mag) + "*";
        return out + "sqrt(" + r_.str() + ")";
    }

    /// Decimal preview for display only.
    std::string preview(int digits = 12) const {
        using Float = boost::multiprecision::cpp_bin_float_100;
        auto as_float = [](const Rational& v) -> Float {
            return static_cast<Float>(numerator_of(v)) / static_cast<Float>(denominator_of(v));
        };
        Float v = as_float(q_) + as_float(s_) * boost::multiprecision::sqrt(static_cast<Float>(r_));
        std::ostringstream os;
        os << std::setprecision(digits) << v;
        return os.str();
    }

    friend std::ostream& operator<<(std::ostream& os, const QuadraticValue& v) { return os << v.str(); }

    /// sign(A + B*sqrt(r)) for r >= 0, decided by one squaring.
    static int sign_of(const Rational& A, const Rational& B, const Integer& r) {
        int sa = A.sign();
        int sb = r.sign() == 0 ? 0 : B.sign();
        if (sb == 0) return sa;
        if (sa == 0 || sa == sb) return sb;
        Rational lhs = A * A;
        Rational rhs = B * B * Rational(r);
        if (lhs > rhs) return sa;
        if (lhs < rhs) return sb;
        return 0;
    }

private:
    static QuadraticValue raw(Rational q, Rational s, Integer r) {
        QuadraticValue v;
        v.q_ = std::move(q);
        v.s_ = std::move(s);
        v.r_ = std::move(r);
        if (v.s_.sign() == 0 || v.r_.sign() == 0) {
            v.s_ = 0;
            v.r_ = 0;
        }
        return v;
    }

    void normalize() {
        if (s_.sign() == 0 || r_.sign() == 0) {
            s_ = 0;
            r_ = 0;
            return;
        }
        // Pull out small square factors; full square-free reduction would need factoring.
        // Composite p never divides twice here once its prime factors are gone.
        for (unsigned p = 2; p < 1000; ++p) {
            Integer pp = Integer(p) * p;
            if (pp > r_) break;
            while (r_ % pp == 0) {
                r_ /= pp;
                s_ *= p;
            }
        }
        if (is_perfect_square(r_)) {
            q_ += s_ * Rational(isqrt(r_));
            s_ = 0;
            r_ = 0;
        }
    }

    // sign(x - y), using at most two squarings.
    static int difference_sign(const QuadraticValue& x, const QuadraticValue& y) {
        Rational A = x.q_ - y.q_;
        if (y.is_rational()) return sign_of(A, x.s_, x.r_);
        if (x.is_rational()) return sign_of(A, -y.s_, y.r_);
        if (x.r_ == y.r_) return sign_of(A, x.s_ - y.s_, x.r_);
        // A + B sqrt(r1) + C sqrt(r2), with X = A + B sqrt(r1), Y = C sqrt(r2).
        const Rational& B = x.s_;
        Rational C = -y.s_;
        int sx = sign_of(A, B, x.r_);
        int sy = C.sign();
        if (sx == 0) return sy;
        if (sx == sy) return sx;
        // Opposite signs: sign(X + Y) = sx * sign(X^2 - Y^2).
        int s = sign_of(A * A + B * B * Rational(x.r_) - C * C * Rational(y.r_), 2 * A * B, x.r_);
        return sx * s;
    }

    Rational q_ = 0;
    Rational s_ = 0;
    Integer r_ = 0;
};

}  // namespace mbl

#pragma once

// Relative Gromov widths w(a,b,c) = bc/a, their closed surd form, Lagrange
// numbers sqrt(9 - 4/a^2) and the accumulation points 2/(3 + sqrt(9 - 4/a^2)).

#include "mbl/markov.hpp"
#include "mbl/quadratic.hpp"

#include <compare>
#include <utility>
#include <vector>

namespace mbl {

/// Exact positive rational in lowest terms.
class Capacity {
public:
    Capacity() = default;
    explicit Capacity(Rational v) : value_(std::move(v)) {
        if (value_.sign() <= 0) throw DomainError("Capacity must be positive, got " + mbl::to_string(value_));
    }
    Capacity(const Integer& num, const Integer& den) : Capacity(Rational(num, den)) {}

    const Rational& value() const noexcept { return value_; }
    Integer num() const { return numerator_of(value_); }
    Integer den() const { return denominator_of(value_); }
    std::string str() const { return mbl::to_string(value_); }
    std::string preview(int digits = 12) const { return decimal_preview(value_, digits); }

    operator QuadraticValue() const { return QuadraticValue(value_); }  // NOLINT(google-explicit-constructor)

    friend bool operator==(const Capacity& l, const Capacity& r) { return l.value_ == r.value_; }
    friend std::strong_ordering operator<=>(const Capacity& l, const Capacity& r) {
        return l.value_ < r.value_ ? std::strong_ordering::less
               : r.value_ < l.value_ ? std::strong_ordering::greater
                                     : std::strong_ordering::equal;
    }
    friend std::ostream& operator<<(std::ostream& os, const Capacity& c) { return os << c.str(); }

private:
    Rational value_ = 1;
};

inline std::strong_ordering compare(const QuadraticValue& x, const Capacity& y) {
    return compare(x, QuadraticValue(y.value()));
}
inline std::strong_ordering compare(const Capacity& x, const QuadraticValue& y) {
    return compare(QuadraticValue(x.value()), y);
}
inline std::strong_ordering compare(const Capacity& x, const Capacity& y) { return x <=> y; }

/// bc/a for the ordered triple (a, b, c).
inline Capacity width(const MarkovTriple& t) { return Capacity(t.b() * t.c(), t.a()); }

/// 2/(3 + sqrt(x)) as an exact quadratic value.
inline QuadraticValue two_over_three_plus_sqrt(const Rational& x) {
    return (QuadraticValue::sqrt_of(x) + Rational(3)).reciprocal() * Rational(2);
}

/// Integer form of bc/a = 2/(3 + sqrt(9 - 4/c^2 - 4/b^2)):
/// (2a - 3bc)^2 = 9b^2c^2 - 4b^2 - 4c^2 together with 2a >= 3bc.
inline bool surd_identity_check(const MarkovTriple& t) {
    const Integer &a = t.a(), &b = t.b(), &c = t.c();
    Integer lhs = 2 * a - 3 * b * c;
    return lhs * lhs == 9 * b * b * c * c - 4 * b * b - 4 * c * c && lhs.sign() >= 0;
}

/// The width as 2/(3 + sqrt(9 - 4/c^2 - 4/b^2)), checked equal to bc/a.
/// At (1,1,1) the identity selects the wrong root (2a - 3bc = -1), so it is rejected.
inline QuadraticValue width_as_surd(const MarkovTriple& t) {
    if (t.is_root())
        throw DomainError("width_as_surd: (1,1,1) has 2a - 3bc = -1 < 0; the closed form picks the other root");
    const Integer &b = t.b(), &c = t.c();
    QuadraticValue v = two_over_three_plus_sqrt(Rational(9) - Rational(4, c * c) - Rational(4, b * b));
    if (compare(v, width(t)) != 0)
        throw VerificationFailure("width_as_surd: closed form differs from bc/a at " + t.str());
    return v;
}

namespace detail {

inline QuadraticValue lagrange_unchecked(const Integer& a) {
    return QuadraticValue(Rational(0), Rational(1, a), Rational(9 * a * a - 4));
}

inline QuadraticValue limit_point_unchecked(const Integer& a) {
    return two_over_three_plus_sqrt(Rational(9) - Rational(4, a * a));
}

}  // namespace detail

/// lambda(a) = sqrt(9 - 4/a^2) for a Markov number a.
inline QuadraticValue lagrange_number(const Integer& a) {
    if (!is_markov_number(a)) throw DomainError("lagrange_number: " + a.str() + " is not a Markov number");
    return detail::lagrange_unchecked(a);
}

/// 2/(3 + lambda(a)): where widths accumulate along subtrees preserving a.
inline QuadraticValue limit_point(const Integer& a) {
    if (!is_markov_number(a)) throw DomainError("limit_point: " + a.str() + " is not a Markov number");
    return detail::limit_point_unchecked(a);
}

enum class Side { Left, Right };

struct ConvergenceStep {
    MarkovTriple triple;
    Capacity width;
    QuadraticValue gap;  // width - limit_point(a), exact
};

/// Walks down one branch of the subtree preserving a = spec.preserved,
/// starting at the apex and taking `side` at the apex, and records the
/// exact gaps to the accumulation point. Throws VerificationFailure if a
/// gap is not positive or fails to decrease strictly.
inline std::vector<ConvergenceStep> convergence_trace(const SubtreeSpec& spec, std::size_t n,
                                                      Side side = Side::Left) {
    if (n == 0) throw DomainError("convergence_trace: n must be >= 1");
    QuadraticValue limit = detail::limit_point_unchecked(spec.preserved);
    std::vector<ConvergenceStep> out;
    MarkovTriple t = spec.apex;
    for (std::size_t i = 0; i < n; ++i) {
        Capacity w = width(t);
        QuadraticValue gap = QuadraticValue(w.value()) + (-limit);
        if (gap.sign() <= 0)
            throw VerificationFailure("convergence_trace: width " + w.str() + " at " + t.str() +
                                      " is not above the limit point");
        if (!out.empty() && compare(gap, out.back().gap) >= 0)
            throw VerificationFailure("convergence_trace: gap does not decrease at " + t.str());
        out.push_back({t, w, gap});
        auto children = detail::preserving_children(t, spec.preserved);
        if (children.empty()) break;
        t = (children.size() > 1 && side == Side::Right) ? children[1] : children[0];
    }
    return out;
}

}  // namespace mbl

#pragma once

// Order of the widths w(m) inside one subtree (alternating descent), and the
// global decreasing order obtained by juxtaposing the essential sequences
// of m_1 < m_2 < ... together with the places where that order breaks.

#include "mbl/capacity.hpp"
#include "mbl/markov.hpp"

#include <algorithm>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mbl {

/// f_1 = 3ab - c, f_{j+1} = 3a f_j - f_{j-1} (f_0 = b) and g_j(b,c) = f_j(c,b),
/// the middle entries down the two branches below the apex (a,b,c).
struct ChainValues {
    Integer a, b, c;
    std::vector<Integer> f;  // f[0] = b, f[1] = f_1, ...
    std::vector<Integer> g;  // g[0] = c, g[1] = g_1, ...

    static ChainValues compute(const MarkovTriple& apex, std::size_t k) {
        ChainValues cv{apex.a(), apex.b(), apex.c(), {apex.b()}, {apex.c()}};
        cv.f.push_back(3 * cv.a * cv.b - cv.c);
        cv.g.push_back(3 * cv.a * cv.c - cv.b);
        while (cv.f.size() < k + 1) {
            std::size_t j = cv.f.size() - 1;
            cv.f.push_back(3 * cv.a * cv.f[j] - cv.f[j - 1]);
            cv.g.push_back(3 * cv.a * cv.g[j] - cv.g[j - 1]);
        }
        return cv;
    }

    /// Every (f_{j+1}, f_j, a) and (g_{j+1}, g_j, a) is a Markov triple.
    bool all_markov() const {
        if (!is_markov(f[1], a, b) || !is_markov(g[1], a, c)) return false;
        for (std::size_t j = 1; j + 1 < f.size(); ++j) {
            if (!is_markov(f[j + 1], f[j], a) || !is_markov(g[j + 1], g[j], a)) return false;
        }
        return true;
    }

    /// g_1 < f_1 < g_2 < f_2 < ... (holds when a > b > c).
    bool interleaved() const {
        for (std::size_t j = 1; j < f.size(); ++j) {
            if (!(g[j] < f[j])) return false;
            if (j + 1 < g.size() && !(f[j] < g[j + 1])) return false;
        }
        return true;
    }
};

struct OrderEntry {
    MarkovTriple triple;
    Capacity width;
};

struct DescentViolation : VerificationFailure {
    using VerificationFailure::VerificationFailure;
};

/// Apex, left child, right child, left grandchild, ... with widths checked
/// strictly decreasing. For the apexes (1,1,1) and (2,1,1) this is the
/// Fibonacci resp. Pell chain.
inline std::vector<OrderEntry> alternating_order(const MarkovTriple& apex, std::size_t depth) {
    std::vector<OrderEntry> out;
    for (auto& node : wedge(SubtreeSpec(apex), depth)) {
        Capacity w = width(node.triple);
        if (!out.empty() && !(w < out.back().width))
            throw DescentViolation("width does not decrease from " + out.back().triple.str() + " (" +
                                   out.back().width.str() + ") to " + node.triple.str() + " (" + w.str() + ")");
        out.push_back({node.triple, w});
    }
    return out;
}

/// The descent chain bc/a > ac/g_1 > ab/f_1 > a g_1/g_2 > a f_1/f_2 > ... > a g_k/g_{k+1}
/// for a sorted Markov triple with a >= 5, plus Markov-ness of the chain triples.
inline bool verify_chain_inequalities(const Integer& a, const Integer& b, const Integer& c, std::size_t k) {
    MarkovTriple apex(a, b, c);
    if (apex.a() != a || apex.b() != b || apex.c() != c)
        throw DomainError("verify_chain_inequalities: triple must be given sorted");
    if (a < 5) throw DomainError("verify_chain_inequalities: needs a >= 5");
    if (k == 0) throw DomainError("verify_chain_inequalities: k must be >= 1");
    ChainValues cv = ChainValues::compute(apex, k + 1);
    std::vector<Rational> chain{Rational(b * c, a), Rational(a * c, cv.g[1]), Rational(a * b, cv.f[1])};
    for (std::size_t j = 1; j < k; ++j) {
        chain.emplace_back(a * cv.g[j], cv.g[j + 1]);
        chain.emplace_back(a * cv.f[j], cv.f[j + 1]);
    }
    chain.emplace_back(a * cv.g[k], cv.g[k + 1]);
    for (std::size_t i = 1; i < chain.size(); ++i)
        if (!(chain[i] < chain[i - 1])) return false;
    return cv.all_markov() && cv.interleaved();
}

struct SpectrumRow {
    std::size_t n = 0;
    Integer m;
    MarkovTriple apex;
    Integer b;
    std::vector<Capacity> first_capacities;
    QuadraticValue limit;
};

/// Markov numbers m_1 < m_2 < ... with their apex triples, grown on demand.
/// Indices are 1-based. Construction verifies that every Markov number in
/// range is the maximum of exactly one triple, which the indexing by m_n needs.
class Spectrum {
public:
    explicit Spectrum(std::size_t count = 1) { ensure_count(count); }

    void ensure_count(std::size_t count) {
        while (numbers_.size() < count) load(bound_ < 8 ? Integer(8) : Integer(bound_ * 4));
    }
    /// All Markov numbers <= bound are loaded afterwards.
    void ensure_bound(const Integer& bound) {
        if (bound > bound_) load(bound);
    }

    std::size_t size() const noexcept { return numbers_.size(); }
    const Integer& loaded_bound() const noexcept { return bound_; }
    const Integer& m(std::size_t n) const { return numbers_.at(n - 1); }
    const MarkovTriple& apex(std::size_t n) const { return apexes_.at(n - 1); }
    const std::vector<Integer>& numbers() const noexcept { return numbers_; }

    /// Second smallest Markov number in the essential subtree of m_n:
    /// 3ac - b for the apex (a,b,c) when a >= 5; 2 and 5 for m = 1, 2.
    Integer b(std::size_t n) const {
        const MarkovTriple& t = apex(n);
        if (t.a() == 1) return 2;
        if (t.a() == 2) return 5;
        return 3 * t.a() * t.c() - t.b();
    }

    /// Triples of the essential subtree of m_n in decreasing order of width.
    std::vector<MarkovTriple> essential(std::size_t n, std::size_t k) const {
        const MarkovTriple& t = apex(n);
        std::vector<MarkovTriple> out;
        if (t.a() <= 2) {
            MarkovTriple cur = t.a() == 1 ? t : MarkovTriple(29, 5, 2);
            while (out.size() < k) {
                out.push_back(cur);
                cur = detail::preserving_children(cur, t.a()).front();
            }
            return out;
        }
        ChainValues cv = ChainValues::compute(t, k / 2 + 2);
        for (std::size_t j = 1; out.size() < k; ++j) {
            out.emplace_back(cv.g[j + 1], cv.g[j], t.a());
            if (out.size() < k) out.emplace_back(cv.f[j + 1], cv.f[j], t.a());
        }
        return out;
    }

    std::vector<Capacity> capacities(std::size_t n, std::size_t k) const {
        std::vector<Capacity> out;
        for (const auto& t : essential(n, k)) out.push_back(width(t));
        return out;
    }

    QuadraticValue limit(std::size_t n) const { return detail::limit_point_unchecked(m(n)); }

    SpectrumRow row(std::size_t n, std::size_t k) const {
        return {n, m(n), apex(n), b(n), capacities(n, k), limit(n)};
    }

    /// 1/m_n^2 - 1/m_{n'}^2 - 1/b_{n'}^2; nonnegative iff the whole essential
    /// sequence of m_n precedes that of m_{n'}.
    Rational nn_slack(std::size_t n, std::size_t n_prime) const {
        const Integer& mn = m(n);
        const Integer& mp = m(n_prime);
        Integer bp = b(n_prime);
        return Rational(1, mn * mn) - Rational(1, mp * mp) - Rational(1, bp * bp);
    }
    bool nn_holds(std::size_t n, std::size_t n_prime) const { return nn_slack(n, n_prime).sign() >= 0; }

    /// Largest n' with m_{n'}^2 < 2 m_n^2. Since b_{n'} > m_{n'}, no n' beyond
    /// can violate the juxtaposition inequality against n.
    std::size_t window_end(std::size_t n) {
        Integer two_sq = 2 * m(n) * m(n);
        ensure_bound(isqrt(two_sq) + 1);
        std::size_t e = n;
        while (e < numbers_.size() && numbers_[e] * numbers_[e] < two_sq) ++e;
        return e;
    }

private:
    void load(const Integer& bound) {
        std::map<Integer, MarkovTriple> by_max;
        for (auto& node : enumerate_triples(bound)) {
            auto [it, inserted] = by_max.emplace(node.triple.max(), node.triple);
            if (!inserted)
                throw VerificationFailure("uniqueness fails: " + it->second.str() + " and " + node.triple.str());
        }
        numbers_.clear();
        apexes_.clear();
        for (auto& [m, t] : by_max) {
            numbers_.push_back(m);
            apexes_.push_back(t);
        }
        bound_ = bound;
    }

    Integer bound_ = 0;
    std::vector<Integer> numbers_;
    std::vector<MarkovTriple> apexes_;
};

inline std::vector<SpectrumRow> spectrum_rows(std::size_t n_max, std::size_t k) {
    if (n_max == 0) throw DomainError("spectrum_rows: n_max must be >= 1");
    Spectrum s(n_max);
    std::vector<SpectrumRow> rows;
    for (std::size_t n = 1; n <= n_max; ++n) rows.push_back(s.row(n, k));
    return rows;
}

/// 1/m_n^2 >= 1/m_{n'}^2 + 1/b_{n'}^2, exactly.
inline bool check_nn_inequality(const Spectrum& s, std::size_t n, std::size_t n_prime) {
    if (n == 0 || n >= n_prime) throw DomainError("check_nn_inequality: need 1 <= n < n'");
    return s.nn_holds(n, n_prime);
}

inline bool check_nn_inequality(std::size_t n, std::size_t n_prime) {
    return check_nn_inequality(Spectrum(std::max(n, n_prime)), n, n_prime);
}

/// A higher sequence n + span whose leading width moves ahead of the
/// sequences n, ..., n + span - 1.
struct IrregularityRecord {
    std::size_t n = 0;
    std::size_t span = 1;
    std::vector<std::size_t> lower;  // every j < n + span violating the inequality against n + span
    std::string kind;

    std::size_t higher() const { return n + span; }
    friend bool operator==(const IrregularityRecord& l, const IrregularityRecord& r) {
        return l.n == r.n && l.span == r.span;
    }
};

namespace detail {

inline std::string swap_kind(std::size_t n, std::size_t higher) {
    std::string s = "w1(m_" + std::to_string(higher) + ") precedes w(m_" + std::to_string(n) + ")";
    for (std::size_t j = n + 1; j < higher; ++j) s += ", w(m_" + std::to_string(j) + ")";
    return s;
}

// All j < n' whose pair (j, n') violates the inequality.
inline std::vector<std::size_t> violators_of(Spectrum& s, std::size_t n_prime) {
    std::vector<std::size_t> out;
    for (std::size_t j = n_prime; j-- > 1;) {
        if (s.m(n_prime) * s.m(n_prime) >= 2 * s.m(j) * s.m(j)) break;
        if (!s.nn_holds(j, n_prime)) out.push_back(j);
    }
    std::reverse(out.begin(), out.end());
    return out;
}

}  // namespace detail

/// Scans every pair (n, n') with n <= n_max inside the finite window and groups
/// violations by the higher index: a record starts at the smallest violating n.
inline std::vector<IrregularityRecord> find_irregularities(Spectrum& s, std::size_t n_max) {
    s.ensure_count(n_max);
    std::set<std::size_t> higher;
    for (std::size_t n = 1; n <= n_max; ++n) {
        std::size_t end = s.window_end(n);
        for (std::size_t np = n + 1; np <= end; ++np)
            if (!s.nn_holds(n, np)) higher.insert(np);
    }
    std::vector<IrregularityRecord> out;
    for (std::size_t np : higher) {
        auto lower = detail::violators_of(s, np);
        IrregularityRecord rec;
        rec.n = lower.front();
        rec.span = np - rec.n;
        rec.lower = std::move(lower);
        rec.kind = detail::swap_kind(rec.n, np);
        out.push_back(std::move(rec));
    }
    std::sort(out.begin(), out.end(), [](const auto& l, const auto& r) { return l.n < r.n; });
    return out;
}

inline std::vector<IrregularityRecord> find_irregularities(std::size_t n_max) {
    Spectrum s(n_max);
    return find_irregularities(s, n_max);
}

/// Checks that only the leading width w_1 of the higher sequence n' = n + span
/// moves, and that it moves ahead of all of w(m_n), ..., w(m_{n'-1}):
///  - w_1(n') > w_1(j) for every j in [n, n'),
///  - w_2(n') <= inf w(m_j) = limit(j), i.e. 1/m_j^2 >= 1/m_{n'}^2 + 1/f_1^2 with f_1
///    the second middle entry of the higher sequence (cross-checked against
///    a direct surd comparison),
///  - the sequences in [n, n') keep their juxtaposed order among themselves.
/// A record without any violation is vacuously true.
inline bool verify_swap_pattern(const Spectrum& s, const IrregularityRecord& rec) {
    std::size_t np = rec.higher();
    bool any_violation = false;
    for (std::size_t j = rec.n; j < np; ++j) any_violation |= !s.nn_holds(j, np);
    if (!any_violation) return true;

    auto second = s.essential(np, 2)[1];
    Capacity w1 = s.capacities(np, 1)[0];
    Capacity w2 = width(second);
    const Integer& mp = s.m(np);
    const Integer& f1 = second.b();
    for (std::size_t j = rec.n; j < np; ++j) {
        if (s.nn_holds(j, np)) return false;
        if (!(w1 > s.capacities(j, 1)[0])) return false;
        const Integer& mj = s.m(j);
        bool rest_after = Rational(1, mj * mj) >= Rational(1, mp * mp) + Rational(1, f1 * f1);
        bool direct = compare(w2, s.limit(j)) < 0;
        if (rest_after != direct)
            throw VerificationFailure("swap pattern: inequality and surd comparison disagree at j = " +
                                      std::to_string(j));
        if (!rest_after) return false;
        for (std::size_t jj = j + 1; jj < np; ++jj)
            if (!s.nn_holds(j, jj)) return false;
    }
    return true;
}

inline bool verify_swap_pattern(const IrregularityRecord& rec) {
    Spectrum s(rec.higher());
    return verify_swap_pattern(s, rec);
}

struct CompletenessReport {
    Rational threshold;
    std::size_t n_max = 0;
    bool certified = false;
    /// Indices n with w_1(m_n) >= threshold; all are below tail_index.
    std::vector<std::size_t> contributing;
    /// From this index on, w_1 - 1/3 < tail_bound < threshold - 1/3.
    std::size_t tail_index = 0;
    Rational tail_bound;
    /// Violated pairs (n, n') with both sequences contributing.
    std::vector<std::pair<std::size_t, std::size_t>> relevant_violations;
    std::optional<std::size_t> offending_index;
    std::vector<std::string> conditions;
    std::string failure;
};

/// Certifies that the juxtaposed order with the catalogued swaps up to n_max
/// describes every width >= threshold. Sufficient conditions, all checked exactly:
///  (1) for n >= N, w_1(m_n) - 1/3 <= s/(3(6 - s/3)^2) with s = 8/m_n^2 (uses
///      b_n > m_n and w - 1/3 = s/(3(3 + sqrt(9 - s))^2)), and that bound is
///      below threshold - 1/3 at m_N, so no later sequence reaches the threshold;
///  (2) the sequences n < N with w_1 >= threshold are listed explicitly;
///  (3) every violated pair among them has its lower index <= n_max and
///      belongs to a record whose swap pattern verifies;
///  (4) every Markov number up to m_N is the maximum of a unique triple.
inline CompletenessReport ordered_prefix_complete_above(const Rational& threshold, std::size_t n_max) {
    const Rational third(1, 3);
    if (threshold <= third)
        throw DomainError("ordered_prefix_complete_above: threshold must exceed 1/3, an accumulation point");
    if (n_max == 0) throw DomainError("ordered_prefix_complete_above: n_max must be >= 1");
    CompletenessReport rep;
    rep.threshold = threshold;
    rep.n_max = n_max;
    Rational gap = threshold - third;

    Spectrum s(std::max<std::size_t>(n_max, 3));
    auto tail = [&](std::size_t n) -> Rational {
        Rational sv(8, s.m(n) * s.m(n));
        Rational d = Rational(6) - sv / 3;
        return sv / (3 * d * d);
    };
    std::size_t n = 3;
    for (;; ++n) {
        s.ensure_count(n);
        if (tail(n) < gap) break;
    }
    rep.tail_index = n;
    rep.tail_bound = tail(n);

    for (std::size_t j = 1; j < rep.tail_index; ++j)
        if (s.capacities(j, 1)[0].value() >= threshold) rep.contributing.push_back(j);

    auto records = find_irregularities(s, n_max);
    std::set<std::size_t> in_k(rep.contributing.begin(), rep.contributing.end());
    bool ok = true;
    for (std::size_t j : rep.contributing) {
        std::size_t end = s.window_end(j);
        for (std::size_t jp = j + 1; jp <= end; ++jp) {
            if (!in_k.count(jp) || s.nn_holds(j, jp)) continue;
            rep.relevant_violations.emplace_back(j, jp);
            if (!ok) continue;
            auto rec = std::find_if(records.begin(), records.end(), [&](const IrregularityRecord& r) {
                return r.higher() == jp && std::find(r.lower.begin(), r.lower.end(), j) != r.lower.end();
            });
            if (j > n_max || rec == records.end()) {
                ok = false;
                rep.offending_index = j;
                rep.failure = "violation (" + std::to_string(j) + "," + std::to_string(jp) +
                              ") is not covered by the catalogue up to n_max";
            } else if (!verify_swap_pattern(s, *rec)) {
                ok = false;
                rep.offending_index = jp;
                rep.failure = "swap pattern fails for the record at n = " + std::to_string(rec->n);
            }
        }
    }
    rep.certified = ok;
    rep.conditions = {
        "tail: for n >= " + std::to_string(rep.tail_index) + ", w1(m_n) - 1/3 <= " + decimal_preview(rep.tail_bound) +
            " < threshold - 1/3 = " + decimal_preview(gap),
        "contributing sequences: " + std::to_string(rep.contributing.size()) + " indices below " +
            std::to_string(rep.tail_index) + " have w1 >= threshold",
        "violated pairs among contributing sequences: " + std::to_string(rep.relevant_violations.size()) +
            ", each required to be catalogued with lower index <= " + std::to_string(n_max) +
            " and a verified swap pattern",
        "unique triple per Markov number up to " + s.m(rep.tail_index).str(),
    };
    return rep;
}

}  // namespace mbl

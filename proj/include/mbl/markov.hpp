#pragma once

// Markov triples a^2 + b^2 + c^2 = 3abc, the three mutations, the Markov
// tree and its bivalent subtrees.

#include "mbl/numeric.hpp"

#include <algorithm>
#include <array>
#include <cstddef>
#include <deque>
#include <map>
#include <ostream>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace mbl {

inline bool is_markov(const Integer& a, const Integer& b, const Integer& c) {
    if (a < 1 || b < 1 || c < 1) throw DomainError("Markov entries must be positive");
    return a * a + b * b + c * c == 3 * a * b * c;
}

/// Ordered Markov triple, stored with a >= b >= c >= 1.
class MarkovTriple {
public:
    MarkovTriple() : a_(1), b_(1), c_(1) {}

    /// Accepts the entries in any order; throws DomainError unless they
    /// solve the Markov equation.
    MarkovTriple(Integer x, Integer y, Integer z) {
        std::array<Integer, 3> v{std::move(x), std::move(y), std::move(z)};
        std::sort(v.begin(), v.end(), [](const Integer& l, const Integer& r) { return l > r; });
        if (!is_markov(v[0], v[1], v[2]))
            throw DomainError("not a Markov triple: (" + v[0].str() + "," + v[1].str() + "," +
                              v[2].str() + ")");
        a_ = std::move(v[0]);
        b_ = std::move(v[1]);
        c_ = std::move(v[2]);
    }

    const Integer& a() const noexcept { return a_; }
    const Integer& b() const noexcept { return b_; }
    const Integer& c() const noexcept { return c_; }
    const Integer& max() const noexcept { return a_; }
    const Integer& mid() const noexcept { return b_; }
    const Integer& min() const noexcept { return c_; }

    bool contains(const Integer& p) const { return a_ == p || b_ == p || c_ == p; }
    bool is_root() const { return a_ == 1; }

    std::string str() const { return "(" + a_.str() + "," + b_.str() + "," + c_.str() + ")"; }

    friend bool operator==(const MarkovTriple& l, const MarkovTriple& r) {
        return l.a_ == r.a_ && l.b_ == r.b_ && l.c_ == r.c_;
    }
    friend bool operator!=(const MarkovTriple& l, const MarkovTriple& r) { return !(l == r); }
    /// Deterministic order by (max, mid, min).
    friend bool operator<(const MarkovTriple& l, const MarkovTriple& r) {
        if (l.a_ != r.a_) return l.a_ < r.a_;
        if (l.b_ != r.b_) return l.b_ < r.b_;
        return l.c_ < r.c_;
    }
    friend std::ostream& operator<<(std::ostream& os, const MarkovTriple& t) { return os << t.str(); }

private:
    Integer a_, b_, c_;
};

/// Which entry of the ordered triple gets replaced by the other root.
enum class MutationKind { EliminateMin, EliminateMid, EliminateMax };

inline constexpr std::array<MutationKind, 3> all_mutation_kinds{
    MutationKind::EliminateMin, MutationKind::EliminateMid, MutationKind::EliminateMax};

inline const char* to_string(MutationKind k) {
    switch (k) {
        case MutationKind::EliminateMin: return "min";
        case MutationKind::EliminateMid: return "mid";
        case MutationKind::EliminateMax: return "max";
    }
    return "?";
}

inline MarkovTriple mutate(const MarkovTriple& t, MutationKind k) {
    const Integer &a = t.a(), &b = t.b(), &c = t.c();
    switch (k) {
        case MutationKind::EliminateMin: return {3 * a * b - c, a, b};
        case MutationKind::EliminateMid: return {3 * a * c - b, a, c};
        case MutationKind::EliminateMax: return {b, c, 3 * b * c - a};
    }
    throw DomainError("unknown mutation kind");
}

struct TrackedMutation {
    MarkovTriple result;
    /// Slot of the re-inserted entry in the sorted result; mutating there undoes the move.
    MutationKind inverse;
};

inline TrackedMutation mutate_tracked(const MarkovTriple& t, MutationKind k) {
    MarkovTriple r = mutate(t, k);
    const Integer &a = t.a(), &b = t.b(), &c = t.c();
    Integer fresh = k == MutationKind::EliminateMin   ? Integer(3 * a * b - c)
                    : k == MutationKind::EliminateMid ? Integer(3 * a * c - b)
                                                      : Integer(3 * b * c - a);
    MutationKind slot = fresh == r.a()   ? MutationKind::EliminateMax
                        : fresh == r.b() ? MutationKind::EliminateMid
                                         : MutationKind::EliminateMin;
    return {std::move(r), slot};
}

/// A triple located in the Markov tree: `path` replays from (1,1,1).
struct TreeNode {
    MarkovTriple triple;
    std::size_t depth = 0;
    std::vector<MutationKind> path;
};

inline MarkovTriple replay(const std::vector<MutationKind>& path) {
    MarkovTriple t;
    for (MutationKind k : path) t = mutate(t, k);
    return t;
}

/// Path from the root obtained by walking EliminateMax down to (1,1,1).
inline std::vector<MutationKind> path_from_root(const MarkovTriple& t) {
    std::vector<MarkovTriple> chain{t};
    while (!chain.back().is_root()) chain.push_back(mutate(chain.back(), MutationKind::EliminateMax));
    std::vector<MutationKind> path;
    for (std::size_t i = chain.size() - 1; i > 0; --i) {
        const MarkovTriple& parent = chain[i];
        const MarkovTriple& child = chain[i - 1];
        for (MutationKind k : all_mutation_kinds) {
            if (mutate(parent, k) == child) {
                path.push_back(k);
                break;
            }
        }
    }
    return path;
}

inline TreeNode tree_node(const MarkovTriple& t) {
    auto path = path_from_root(t);
    std::size_t depth = path.size();
    return {t, depth, std::move(path)};
}

/// All distinct triples with maximal entry <= max_bound, sorted by (max, mid, min).
/// Breadth-first from (1,1,1); only mutations that grow the maximum are followed.
inline std::vector<TreeNode> enumerate_triples(const Integer& max_bound) {
    if (max_bound < 1) throw DomainError("enumerate_triples: max_bound must be >= 1");
    std::map<MarkovTriple, TreeNode> seen;
    std::deque<TreeNode> queue{TreeNode{}};
    seen.emplace(MarkovTriple{}, TreeNode{});
    while (!queue.empty()) {
        TreeNode node = std::move(queue.front());
        queue.pop_front();
        for (MutationKind k : all_mutation_kinds) {
            MarkovTriple child = mutate(node.triple, k);
            if (child.max() <= node.triple.max() || child.max() > max_bound) continue;
            if (seen.count(child)) continue;
            TreeNode next{child, node.depth + 1, node.path};
            next.path.push_back(k);
            seen.emplace(child, next);
            queue.push_back(std::move(next));
        }
    }
    std::vector<TreeNode> out;
    out.reserve(seen.size());
    for (auto& [t, node] : seen) out.push_back(std::move(node));
    return out;
}

/// The first n Markov numbers m_1 < m_2 < ... .
inline std::vector<Integer> markov_numbers(std::size_t n) {
    if (n == 0) throw DomainError("markov_numbers: n must be >= 1");
    Integer bound = 8;
    for (;;) {
        std::set<Integer> maxima;
        for (const auto& node : enumerate_triples(bound)) maxima.insert(node.triple.max());
        if (maxima.size() >= n) {
            std::vector<Integer> out(maxima.begin(), maxima.end());
            out.resize(n);
            return out;
        }
        bound *= 4;
    }
}

/// Root of the bivalent subtree of triples reachable from `t` while keeping p.
inline MarkovTriple apex_for(const Integer& p, MarkovTriple t) {
    if (!t.contains(p)) throw DomainError("apex_for: " + p.str() + " is not an entry of " + t.str());
    while (t.max() != p) t = mutate(t, MutationKind::EliminateMax);
    return t;
}

/// The subtree of triples obtained from `apex` by mutations preserving p,
/// where p is the maximal entry of the apex.
struct SubtreeSpec {
    MarkovTriple apex;
    Integer preserved;

    SubtreeSpec(MarkovTriple apex_, Integer p) : apex(std::move(apex_)), preserved(std::move(p)) {
        if (apex.max() != preserved)
            throw DomainError("SubtreeSpec: " + preserved.str() + " must be the maximal entry of " +
                              apex.str());
    }
    explicit SubtreeSpec(MarkovTriple apex_) : SubtreeSpec(apex_, apex_.max()) {}
};

namespace detail {

// Children of `t` inside the subtree preserving p: left (middle entry
// eliminated) before right (minimal entry eliminated), deduplicated.
inline std::vector<MarkovTriple> preserving_children(const MarkovTriple& t, const Integer& p) {
    std::vector<MarkovTriple> out;
    for (MutationKind k : {MutationKind::EliminateMid, MutationKind::EliminateMin}) {
        MarkovTriple child = mutate(t, k);
        if (!child.contains(p) || child.max() <= t.max()) continue;
        if (std::find(out.begin(), out.end(), child) != out.end()) continue;
        out.push_back(std::move(child));
    }
    return out;
}

}  // namespace detail

/// Breadth-first listing of the subtree down to `depth` levels below the apex;
/// within a level the left branch precedes the right one.
inline std::vector<TreeNode> wedge(const SubtreeSpec& spec, std::size_t depth) {
    std::vector<TreeNode> out{tree_node(spec.apex)};
    std::vector<std::size_t> level{0};
    for (std::size_t d = 0; d < depth; ++d) {
        std::vector<std::size_t> next;
        for (std::size_t idx : level) {
            for (MarkovTriple& child : detail::preserving_children(out[idx].triple, spec.preserved)) {
                TreeNode node = out[idx];
                // Record the forward move from the parent for the path.
                for (MutationKind k : all_mutation_kinds) {
                    if (mutate(node.triple, k) == child) {
                        node.path.push_back(k);
                        break;
                    }
                }
                node.triple = std::move(child);
                node.depth = node.path.size();
                next.push_back(out.size());
                out.push_back(std::move(node));
            }
        }
        if (next.empty()) break;
        level = std::move(next);
    }
    return out;
}

/// The triple whose maximal entry is p; DomainError if p is not a Markov number.
inline MarkovTriple triple_with_max(const Integer& p) {
    if (p < 1) throw DomainError("Markov numbers are positive");
    for (auto& node : enumerate_triples(p))
        if (node.triple.max() == p) return node.triple;
    throw DomainError(p.str() + " is not a Markov number");
}

inline bool is_markov_number(const Integer& p) {
    try {
        triple_with_max(p);
        return true;
    } catch (const DomainError&) {
        return false;
    }
}

/// Essential part of the subtree with apex maximum p: the triples whose
/// minimum is p. For p = 1 and p = 2 the subtree is a single chain and `depth`
/// counts triples; for p >= 5 it counts levels of two triples each.
inline std::vector<MarkovTriple> essential_subtree(const Integer& p, std::size_t depth) {
    MarkovTriple apex = triple_with_max(p);
    std::vector<MarkovTriple> out;
    if (p == 1 || p == 2) {
        std::size_t skip = p == 1 ? 0 : 2;  // (2,1,1) and (5,2,1) leave the Pell chain
        auto nodes = wedge(SubtreeSpec(apex), depth + skip);
        for (std::size_t i = skip; i < nodes.size() && out.size() < depth; ++i)
            out.push_back(nodes[i].triple);
        return out;
    }
    auto nodes = wedge(SubtreeSpec(apex), depth + 1);
    for (std::size_t i = 3; i < nodes.size(); ++i) out.push_back(nodes[i].triple);
    return out;
}

inline Integer fibonacci(std::size_t n) {
    Integer prev = 0, cur = 1;
    if (n == 0) return prev;
    for (std::size_t i = 1; i < n; ++i) {
        Integer next = prev + cur;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

inline Integer pell(std::size_t n) {
    Integer prev = 0, cur = 1;
    if (n == 0) return prev;
    for (std::size_t i = 1; i < n; ++i) {
        Integer next = 2 * cur + prev;
        prev = std::move(cur);
        cur = std::move(next);
    }
    return cur;
}

enum class Branch { Fibonacci, Pell };

/// (F_{2n+1}, F_{2n-1}, 1) or (P_{2n+1}, P_{2n-1}, 2).
inline MarkovTriple branch_triple(Branch kind, std::size_t n) {
    if (n == 0) throw DomainError("branch_triple: n must be >= 1");
    if (kind == Branch::Fibonacci) return {fibonacci(2 * n + 1), fibonacci(2 * n - 1), 1};
    return {pell(2 * n + 1), pell(2 * n - 1), 2};
}

struct NotCooccurring : DomainError {
    using DomainError::DomainError;
};

/// The triple (p1, p2, c) with c the smaller root of c^2 - 3 p1 p2 c + p1^2 + p2^2.
inline MarkovTriple complete_triple(const Integer& p1, const Integer& p2) {
    if (p2 < 1 || p1 <= p2) throw DomainError("complete_triple: need p1 > p2 >= 1");
    Integer disc = 9 * p1 * p1 * p2 * p2 - 4 * (p1 * p1 + p2 * p2);
    auto fail = [&] {
        return NotCooccurring(p1.str() + " and " + p2.str() + " do not occur in a common Markov triple");
    };
    if (!is_perfect_square(disc)) throw fail();
    Integer twice = 3 * p1 * p2 - isqrt(disc);
    if (twice % 2 != 0) throw fail();
    Integer c = twice / 2;
    if (c < 1 || c >= p1) throw fail();
    return {p1, p2, c};
}

/// True iff no two enumerated triples with max <= max_bound share their maximum.
inline bool uniqueness_check(const Integer& max_bound) {
    std::set<Integer> maxima;
    for (const auto& node : enumerate_triples(max_bound))
        if (!maxima.insert(node.triple.max()).second) return false;
    return true;
}

}  // namespace mbl

#include "mbl/markov.hpp"

#include <gtest/gtest.h>

#include <set>
#include <tuple>

using namespace mbl;

namespace {

using Key = std::tuple<Integer, Integer, Integer>;

Key key(const MarkovTriple& t) { return {t.a(), t.b(), t.c()}; }

// Exhaustive oracle: for each a >= b, c solves c^2 - 3ab c + a^2 + b^2 = 0.
std::set<Key> brute_force_triples(long bound) {
    std::set<Key> out;
    for (long a = 1; a <= bound; ++a) {
        for (long b = 1; b <= a; ++b) {
            Integer disc = Integer(9) * a * a * b * b - Integer(4) * (Integer(a) * a + Integer(b) * b);
            if (disc < 0) continue;
            Integer r = isqrt(disc);
            if (r * r != disc) continue;
            for (Integer twice : {Integer(3 * a * b) - r, Integer(3 * a * b) + r}) {
                if (twice % 2 != 0) continue;
                Integer c = twice / 2;
                if (c >= 1 && c <= b) out.insert({a, b, c});
            }
        }
    }
    return out;
}

}  // namespace

TEST(IsMarkov, Examples) {
    EXPECT_TRUE(is_markov(1, 1, 1));
    EXPECT_TRUE(is_markov(433, 29, 5));
    EXPECT_TRUE(is_markov(5, 433, 29));
    EXPECT_FALSE(is_markov(3, 1, 1));
    EXPECT_THROW(is_markov(0, 1, 1), DomainError);
    EXPECT_THROW(is_markov(-1, 1, 1), DomainError);
}

TEST(MarkovTriple, SortsAndValidates) {
    MarkovTriple t(5, 433, 29);
    EXPECT_EQ(t.a(), 433);
    EXPECT_EQ(t.b(), 29);
    EXPECT_EQ(t.c(), 5);
    EXPECT_EQ(t.str(), "(433,29,5)");
    EXPECT_THROW(MarkovTriple(3, 1, 1), DomainError);
}

TEST(Mutate, Examples) {
    EXPECT_EQ(mutate(MarkovTriple(1, 1, 1), MutationKind::EliminateMax), MarkovTriple(2, 1, 1));
    EXPECT_EQ(mutate(MarkovTriple(5, 2, 1), MutationKind::EliminateMin), MarkovTriple(29, 5, 2));
    EXPECT_EQ(mutate(MarkovTriple(5, 2, 1), MutationKind::EliminateMid), MarkovTriple(13, 5, 1));
    EXPECT_EQ(mutate(MarkovTriple(29, 5, 2), MutationKind::EliminateMax), MarkovTriple(5, 2, 1));
}

TEST(Mutate, TrackedInverseUndoes) {
    for (auto& node : enumerate_triples(100000)) {
        for (MutationKind k : all_mutation_kinds) {
            auto m = mutate_tracked(node.triple, k);
            EXPECT_EQ(mutate(m.result, m.inverse), node.triple) << node.triple << " " << to_string(k);
        }
    }
}

TEST(EnumerateTriples, SmallBounds) {
    auto five = enumerate_triples(5);
    ASSERT_EQ(five.size(), 3u);
    EXPECT_EQ(five[0].triple, MarkovTriple(1, 1, 1));
    EXPECT_EQ(five[1].triple, MarkovTriple(2, 1, 1));
    EXPECT_EQ(five[2].triple, MarkovTriple(5, 2, 1));
    EXPECT_EQ(enumerate_triples(433).size(), 11u);
    EXPECT_EQ(enumerate_triples(1).size(), 1u);
    EXPECT_THROW(enumerate_triples(0), DomainError);
}

TEST(EnumerateTriples, MatchesExhaustiveSearchTo2000) {
    std::set<Key> got;
    for (auto& node : enumerate_triples(2000)) got.insert(key(node.triple));
    EXPECT_EQ(got, brute_force_triples(2000));
}

TEST(EnumerateTriples, PathsReplay) {
    for (auto& node : enumerate_triples(1000000)) {
        EXPECT_EQ(replay(node.path), node.triple);
        EXPECT_EQ(node.depth, node.path.size());
    }
}

TEST(MarkovNumbers, Prefixes) {
    EXPECT_EQ(markov_numbers(3), (std::vector<Integer>{1, 2, 5}));
    EXPECT_EQ(markov_numbers(6), (std::vector<Integer>{1, 2, 5, 13, 29, 34}));
    auto ms = markov_numbers(34);
    EXPECT_EQ(ms[32], 195025);
    EXPECT_EQ(ms[33], 196418);
}

TEST(ApexFor, Examples) {
    EXPECT_EQ(apex_for(5, MarkovTriple(29, 5, 2)), MarkovTriple(5, 2, 1));
    EXPECT_EQ(apex_for(13, MarkovTriple(194, 13, 5)), MarkovTriple(13, 5, 1));
    EXPECT_EQ(apex_for(5, MarkovTriple(5, 2, 1)), MarkovTriple(5, 2, 1));
    EXPECT_THROW(apex_for(7, MarkovTriple(5, 2, 1)), DomainError);
}

TEST(Wedge, TwoLevelsBelowFive) {
    auto nodes = wedge(SubtreeSpec(MarkovTriple(5, 2, 1)), 2);
    std::vector<MarkovTriple> ts;
    for (auto& n : nodes) ts.push_back(n.triple);
    EXPECT_EQ(ts, (std::vector<MarkovTriple>{{5, 2, 1}, {13, 5, 1}, {29, 5, 2}, {194, 13, 5}, {433, 29, 5}}));
}

TEST(Wedge, FibonacciAndPellChains) {
    auto fib = wedge(SubtreeSpec(MarkovTriple(1, 1, 1)), 3);
    ASSERT_EQ(fib.size(), 4u);
    EXPECT_EQ(fib[1].triple, MarkovTriple(2, 1, 1));
    EXPECT_EQ(fib[2].triple, MarkovTriple(5, 2, 1));
    EXPECT_EQ(fib[3].triple, MarkovTriple(13, 5, 1));
    auto pell_chain = wedge(SubtreeSpec(MarkovTriple(2, 1, 1), 2), 2);
    ASSERT_EQ(pell_chain.size(), 3u);
    EXPECT_EQ(pell_chain[1].triple, MarkovTriple(5, 2, 1));
    EXPECT_EQ(pell_chain[2].triple, MarkovTriple(29, 5, 2));
    EXPECT_THROW(SubtreeSpec(MarkovTriple(5, 2, 1), 2), DomainError);
}

TEST(EssentialSubtree, Examples) {
    EXPECT_EQ(essential_subtree(5, 1), (std::vector<MarkovTriple>{{194, 13, 5}, {433, 29, 5}}));
    EXPECT_EQ(essential_subtree(2, 3).front(), MarkovTriple(29, 5, 2));
    EXPECT_EQ(essential_subtree(1, 3).front(), MarkovTriple(1, 1, 1));
    for (const auto& t : essential_subtree(13, 3)) EXPECT_EQ(t.min(), 13) << t;
    for (const auto& t : essential_subtree(2, 5)) EXPECT_EQ(t.min(), 2) << t;
}

TEST(BranchTriple, Examples) {
    EXPECT_EQ(branch_triple(Branch::Fibonacci, 13), MarkovTriple(196418, 75025, 1));
    EXPECT_EQ(branch_triple(Branch::Pell, 7), MarkovTriple(195025, 33461, 2));
    EXPECT_EQ(branch_triple(Branch::Fibonacci, 1), MarkovTriple(2, 1, 1));
    EXPECT_EQ(fibonacci(27), 196418);
    EXPECT_EQ(pell(15), 195025);
}

TEST(CompleteTriple, Examples) {
    EXPECT_EQ(complete_triple(5, 2), MarkovTriple(5, 2, 1));
    EXPECT_EQ(complete_triple(29, 5), MarkovTriple(29, 5, 2));
    EXPECT_EQ(complete_triple(13, 5), MarkovTriple(13, 5, 1));
    EXPECT_EQ(complete_triple(29, 2), MarkovTriple(29, 5, 2));
    EXPECT_THROW(complete_triple(34, 5), NotCooccurring);
    EXPECT_THROW(complete_triple(5, 5), DomainError);
}

TEST(Uniqueness, Bounds) {
    EXPECT_TRUE(uniqueness_check(1));
    EXPECT_TRUE(uniqueness_check(433));
    EXPECT_TRUE(uniqueness_check(Integer(1000000000)));
}

TEST(TripleWithMax, RejectsNonMarkov) {
    EXPECT_EQ(triple_with_max(433), MarkovTriple(433, 29, 5));
    EXPECT_TRUE(is_markov_number(6466));
    EXPECT_FALSE(is_markov_number(6));
    EXPECT_THROW(triple_with_max(6), DomainError);
}

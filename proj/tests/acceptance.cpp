// Acceptance run: one PASS/FAIL line per criterion with its wall time and
// budget. Exit status is the number of failed criteria (capped at 1).

#include "mbl/commands.hpp"

#include <chrono>
#include <cmath>
#include <cstdint>
#include <functional>
#include <iostream>
#include <random>
#include <set>
#include <tuple>

using namespace mbl;

namespace {

struct Criterion {
    std::string id;
    std::string title;
    double budget_seconds;
    std::function<std::string()> run;  // empty string on success, else the reason
};

std::string expect(bool ok, const std::string& why) { return ok ? std::string() : why; }

// Exhaustive search over a >= b >= c with max <= bound, in 64-bit integers
// (9 a^2 b^2 < 2^63 for bound <= 10^4).
std::set<std::tuple<Integer, Integer, Integer>> brute_force_triples(std::int64_t bound) {
    std::set<std::tuple<Integer, Integer, Integer>> out;
    for (std::int64_t a = 1; a <= bound; ++a)
        for (std::int64_t b = 1; b <= a; ++b) {
            std::int64_t disc = 9 * a * a * b * b - 4 * (a * a + b * b);
            if (disc < 0) continue;
            auto r = static_cast<std::int64_t>(std::sqrt(static_cast<double>(disc)));
            while (r * r > disc) --r;
            while ((r + 1) * (r + 1) <= disc) ++r;
            if (r * r != disc) continue;
            for (std::int64_t twice : {3 * a * b - r, 3 * a * b + r}) {
                if (twice % 2 != 0) continue;
                std::int64_t c = twice / 2;
                if (c >= 1 && c <= b) out.insert({a, b, c});
            }
        }
    return out;
}

// -1/0/1 from enclosures of q + s*sqrt(r) of width 10^-200.
int interval_order(const Rational& q1, const Rational& s1, const Integer& r1, const Rational& q2, const Rational& s2,
                   const Integer& r2) {
    static const Integer scale = pow10(200);
    auto enclose = [](const Rational& q, const Rational& s, const Integer& r) -> std::pair<Rational, Rational> {
        Integer root = isqrt(r * scale * scale);
        Rational down(root, scale), up(root + 1, scale);
        if (s.sign() >= 0) return {q + s * down, q + s * up};
        return {q + s * up, q + s * down};
    };
    auto [lo1, hi1] = enclose(q1, s1, r1);
    auto [lo2, hi2] = enclose(q2, s2, r2);
    if (hi1 < lo2) return -1;
    if (hi2 < lo1) return 1;
    return 0;
}

UnimodularMap random_map(std::mt19937_64& rng) {
    const std::array<std::array<int, 4>, 5> gens{{{0, -1, 1, 0}, {1, 1, 0, 1}, {1, 0, 1, 1}, {1, -1, 0, 1}, {1, 0, 0, -1}}};
    std::uniform_int_distribution<std::size_t> pick(0, gens.size() - 1);
    std::uniform_int_distribution<int> len(1, 8), num(-9, 9), den(1, 7);
    Integer a = 1, b = 0, c = 0, d = 1;
    for (int i = 0, n = len(rng); i < n; ++i) {
        const auto& g = gens[pick(rng)];
        Integer na = g[0] * a + g[1] * c, nb = g[0] * b + g[1] * d;
        Integer nc = g[2] * a + g[3] * c, nd = g[2] * b + g[3] * d;
        a = na, b = nb, c = nc, d = nd;
    }
    return UnimodularMap(a, b, c, d, {Rational(num(rng), den(rng)), Rational(num(rng), den(rng))});
}

std::string ac1() {
    RunConfig cfg;
    cfg.command = "widths";
    auto out = cmd_widths(cfg);
    std::vector<std::string> got;
    for (auto& r : out.table.rows) got.push_back(r[3]);
    return expect(got == std::vector<std::string>{"1/2", "2/5", "5/13", "10/29", "145/433"}, "width column differs");
}

// Coverage is "every triple": the enumerated set must equal the exhaustive
// search, which finds 21 triples with max <= 10^4.
std::string ac2() {
    auto nodes = enumerate_triples(10000);
    std::set<std::tuple<Integer, Integer, Integer>> got;
    for (auto& node : nodes) got.insert({node.triple.a(), node.triple.b(), node.triple.c()});
    if (got != brute_force_triples(10000)) return "enumeration misses triples with max <= 10^4";
    for (auto& node : nodes) {
        auto lw = lattice_width(vianna_triangle(node.triple).polygon());
        if (!(lw.width == width(node.triple))) return "width mismatch at " + node.triple.str();
        if (!(lw.direction == LatticeVector{0, 1})) return "minimizer not (0,1) at " + node.triple.str();
    }
    return {};
}

std::string ac3() {
    Spectrum s(452);
    auto recs = find_irregularities(s, 450);
    std::set<std::size_t> span1, span2;
    for (auto& r : recs) {
        if (r.span == 1) span1.insert(r.n);
        else if (r.span == 2) span2.insert(r.n);
        else return "unexpected span " + std::to_string(r.span) + " at n=" + std::to_string(r.n);
    }
    std::set<std::size_t> want1{33, 37, 42, 104, 112, 118, 120, 214, 227, 309, 353, 382, 400, 416, 450}, want2{369, 433};
    if (span1 != want1 || span2 != want2) return "record sets differ";
    if (s.m(33) != 195025 || s.m(34) != 196418) return "m_33/m_34 differ";
    return expect(s.b(33) == 1136689 && s.b(34) == 514229, "b_33/b_34 differ");
}

std::string ac4() {
    Spectrum s(40);
    for (std::size_t n = 1; n <= 32; ++n) {
        std::size_t end = s.window_end(n);
        for (std::size_t np = n + 1; np <= end; ++np)
            if (!check_nn_inequality(s, n, np)) return "fails at (" + std::to_string(n) + "," + std::to_string(np) + ")";
    }
    return {};
}

std::string ac5() {
    for (auto& node : enumerate_triples(10000)) {
        try {
            alternating_order(node.triple, 8);
        } catch (const DescentViolation& e) {
            return e.what();
        }
        const auto& t = node.triple;
        if (t.a() >= 5 && !verify_chain_inequalities(t.a(), t.b(), t.c(), 8)) return "chain fails at " + t.str();
    }
    auto order = alternating_order(MarkovTriple(5, 2, 1), 3);
    std::vector<MarkovTriple> got;
    for (auto& e : order) got.push_back(e.triple);
    return expect(got == std::vector<MarkovTriple>{{5, 2, 1}, {13, 5, 1}, {29, 5, 2}, {194, 13, 5}, {433, 29, 5},
                                                   {2897, 194, 5}, {6466, 433, 5}},
                  "order of (5,2,1) differs");
}

std::string ac6() {
    struct Branch {
        std::string name;
        SubtreeSpec spec;
        Side side;
    };
    std::vector<Branch> branches{{"fibonacci", SubtreeSpec(MarkovTriple(1, 1, 1)), Side::Left},
                                 {"pell", SubtreeSpec(MarkovTriple(2, 1, 1)), Side::Left},
                                 {"(5,2,1) left", SubtreeSpec(MarkovTriple(5, 2, 1)), Side::Left},
                                 {"(5,2,1) right", SubtreeSpec(MarkovTriple(5, 2, 1)), Side::Right},
                                 {"(13,5,1) left", SubtreeSpec(MarkovTriple(13, 5, 1)), Side::Left},
                                 {"(13,5,1) right", SubtreeSpec(MarkovTriple(13, 5, 1)), Side::Right}};
    for (auto& br : branches) {
        auto trace = convergence_trace(br.spec, 25, br.side);
        if (trace.size() != 25) return br.name + ": short trace";
        for (std::size_t i = 0; i < trace.size(); ++i) {
            if (trace[i].gap.sign() <= 0) return br.name + ": non-positive gap";
            if (i > 0 && !(trace[i].gap < trace[i - 1].gap)) return br.name + ": gap not decreasing";
        }
    }
    if (lagrange_number(1) != QuadraticValue::sqrt_of(5)) return "lambda(1)";
    if (lagrange_number(2) != QuadraticValue::sqrt_of(8)) return "lambda(2)";
    return expect(lagrange_number(5) == QuadraticValue::sqrt_of(221) * Rational(1, 5), "lambda(5)");
}

std::string ac7() {
    auto rep = ordered_prefix_complete_above(Rational(1, 3) + Rational(2, pow10(44)), 450);
    return expect(rep.certified, rep.failure);
}

std::string ac8() {
    if (surd_identity_check(MarkovTriple())) return "identity holds at (1,1,1)";
    for (auto& node : enumerate_triples(10000))
        if (!node.triple.is_root() && !surd_identity_check(node.triple)) return "fails at " + node.triple.str();
    return {};
}

std::string ac9() {
    BFileStore::Options o;
    o.vendored_dir = std::filesystem::path(MBL_DATA_DIR);
    BFileStore store(std::move(o));
    auto markov = store.load(SequenceKind::Markov);
    auto fib = store.load(SequenceKind::Fibonacci);
    auto pell = store.load(SequenceKind::Pell);
    auto rep = cross_check(SequenceKind::Markov, 500, markov);
    if (!rep.match) return "A002559 mismatch at " + std::to_string(rep.first_mismatch->index);
    Spectrum s(34);
    if (s.m(33) != pell.entries.at(15)) return "m_33 != P_15";
    if (s.m(34) != fib.entries.at(27)) return "m_34 != F_27";
    if (s.b(34) != fib.entries.at(29)) return "b_34 != F_29";
    return expect(s.b(33) == pell.entries.at(17), "b_33 != P_17");
}

std::string ac10() {
    std::set<std::tuple<Integer, Integer, Integer>> got;
    for (auto& node : enumerate_triples(2000)) got.insert({node.triple.a(), node.triple.b(), node.triple.c()});
    if (got != brute_force_triples(2000)) return "enumeration differs from exhaustive search";

    std::mt19937_64 rng(2024);
    LatticePolygon P = vianna_triangle(MarkovTriple(433, 29, 5)).polygon();
    Capacity w = lattice_width(P).width;
    for (int i = 0; i < 100; ++i)
        if (!(lattice_width(random_map(rng)(P)).width == w)) return "width changed under map " + std::to_string(i);

    std::mt19937_64 qrng(20240521);
    std::uniform_int_distribution<int> small(-40, 40), den(1, 30), rad(0, 60);
    auto draw = [&] {
        return std::tuple<Rational, Rational, Integer>{Rational(small(qrng), den(qrng)), Rational(small(qrng), den(qrng)),
                                                       Integer(rad(qrng))};
    };
    for (int i = 0; i < 1000; ++i) {
        auto [q1, s1, r1] = draw();
        auto [q2, s2, r2] = draw();
        if (i % 4 == 0) q2 = q1, s2 = s1 / 2, r2 = r1 * 4;
        QuadraticValue x(q1, s1, Rational(r1)), y(q2, s2, Rational(r2));
        auto c = compare(x, y);
        int got_order = c < 0 ? -1 : c > 0 ? 1 : 0;
        if (got_order != interval_order(q1, s1, r1, q2, s2, r2)) return "surd order disagrees at sample " + std::to_string(i);
    }
    return expect(uniqueness_check(Integer(1000000000)), "uniqueness fails below 10^9");
}

}  // namespace

int main() {
    std::vector<Criterion> criteria{
        {"AC1", "width table", 1, ac1},
        {"AC2", "lattice width of base triangles, max <= 10^4", 60, ac2},
        {"AC3", "irregularity catalogue to n = 450", 120, ac3},
        {"AC4", "regular prefix n <= 32", 30, ac4},
        {"AC5", "alternating descent, max <= 10^4, depth 8", 60, ac5},
        {"AC6", "limit points and Lagrange values", 30, ac6},
        {"AC7", "completeness above 1/3 + 2e-44", 120, ac7},
        {"AC8", "surd identity, max <= 10^4", 10, ac8},
        {"AC9", "b-file cross-checks", 10, ac9},
        {"AC10", "property suites", 120, ac10},
    };
    int failed = 0;
    for (auto& c : criteria) {
        auto start = std::chrono::steady_clock::now();
        std::string reason;
        try {
            reason = c.run();
        } catch (const std::exception& e) {
            reason = std::string("exception: ") + e.what();
        }
        double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
        if (reason.empty() && secs > c.budget_seconds)
            reason = "over budget (" + std::to_string(secs) + " s > " + std::to_string(c.budget_seconds) + " s)";
        bool pass = reason.empty();
        failed += !pass;
        std::cout << c.id << (pass ? " PASS" : " FAIL") << "  " << c.title << "  [" << std::fixed
                  << std::setprecision(3) << secs << " s / " << std::setprecision(0) << c.budget_seconds << " s]";
        if (!pass) std::cout << "  " << reason;
        std::cout << '\n';
    }
    std::cout << (criteria.size() - failed) << "/" << criteria.size() << " criteria passed\n";
    return failed ? 1 : 0;
}

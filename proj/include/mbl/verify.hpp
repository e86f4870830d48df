#pragma once

// Invariant suites behind `mbl verify`. Each check records how many items it
// covered and the first witness of failure.

#include "mbl/serialize.hpp"

#include <algorithm>
#include <functional>
#include <iterator>
#include <optional>
#include <string>
#include <vector>

namespace mbl {

struct CheckResult {
    std::string invariant;
    bool passed = true;
    std::size_t checked = 0;
    std::string witness;
};

struct SuiteReport {
    std::string name;
    std::vector<CheckResult> checks;
    Json details = Json::object();

    bool passed() const {
        return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
    }
};

struct VerifyConfig {
    Integer max_bound = 10000;
    std::size_t n_max = 450;
    std::size_t depth = 8;
    std::size_t trace_terms = 25;
    /// Expected irregularity records; compared when present.
    std::optional<std::vector<IrregularityRecord>> fixture;
    /// Source of b-files for the ingest suite.
    std::optional<BFileStore> store;
};

inline const std::vector<std::string>& suite_names() {
    static const std::vector<std::string> names{"markov", "capacity", "ordering", "lattice", "ingest"};
    return names;
}

namespace detail {

class SuiteBuilder {
public:
    explicit SuiteBuilder(std::string name) { report_.name = std::move(name); }

    /// Runs `pred` over `items`; stops at the first failure, which becomes the witness.
    template <class Range, class Pred, class Label>
    void each(const std::string& invariant, const Range& items, Pred pred, Label label) {
        CheckResult r;
        r.invariant = invariant;
        for (const auto& item : items) {
            ++r.checked;
            std::string why;
            try {
                if (pred(item)) continue;
            } catch (const std::exception& e) {
                why = std::string(": ") + e.what();
            }
            r.passed = false;
            r.witness = label(item) + why;
            break;
        }
        report_.checks.push_back(std::move(r));
    }

    void single(const std::string& invariant, const std::function<bool()>& pred, std::string witness = {}) {
        CheckResult r;
        r.invariant = invariant;
        r.checked = 1;
        try {
            r.passed = pred();
        } catch (const std::exception& e) {
            r.passed = false;
            witness += std::string(witness.empty() ? "" : ": ") + e.what();
        }
        if (!r.passed) r.witness = std::move(witness);
        report_.checks.push_back(std::move(r));
    }

    Json& details() { return report_.details; }
    SuiteReport finish() { return std::move(report_); }

private:
    SuiteReport report_;
};

inline std::vector<MarkovTriple> triples_up_to(const Integer& bound) {
    std::vector<MarkovTriple> out;
    for (auto& node : enumerate_triples(bound)) out.push_back(node.triple);
    return out;
}

inline std::vector<MarkovTriple> non_root(std::vector<MarkovTriple> ts) {
    std::erase_if(ts, [](const MarkovTriple& t) { return t.is_root(); });
    return ts;
}

inline auto triple_label = [](const MarkovTriple& t) { return t.str(); };

}  // namespace detail

inline SuiteReport verify_markov(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("markov");
    auto triples = detail::triples_up_to(cfg.max_bound);
    sb.each("enumerated triples satisfy a^2+b^2+c^2 = 3abc", triples,
            [](const MarkovTriple& t) { return is_markov(t.a(), t.b(), t.c()); }, detail::triple_label);
    sb.each("replaying the root path reproduces the triple", triples,
            [](const MarkovTriple& t) { return replay(path_from_root(t)) == t; }, detail::triple_label);
    sb.each("every mutation is an involution", triples,
            [](const MarkovTriple& t) {
                for (MutationKind k : all_mutation_kinds) {
                    auto m = mutate_tracked(t, k);
                    if (mutate(m.result, m.inverse) != t) return false;
                }
                return true;
            },
            detail::triple_label);
    sb.each("apex_for returns the triple with maximum p", triples,
            [](const MarkovTriple& t) {
                for (const Integer& p : {t.a(), t.b(), t.c()})
                    if (apex_for(p, t).max() != p) return false;
                return true;
            },
            detail::triple_label);
    sb.single("each Markov number is the maximum of a unique triple", [&] { return uniqueness_check(cfg.max_bound); },
              "max_bound " + cfg.max_bound.str());
    sb.details()["triples"] = triples.size();
    return sb.finish();
}

inline SuiteReport verify_capacity(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("capacity");
    auto triples = detail::non_root(detail::triples_up_to(cfg.max_bound));
    const Rational third(1, 3), half(1, 2);
    sb.each("1/3 < bc/a <= 1/2 away from the root", triples,
            [&](const MarkovTriple& t) {
                Rational w = width(t).value();
                return w > third && w <= half;
            },
            detail::triple_label);
    sb.each("surd identity (2a-3bc)^2 = 9b^2c^2-4b^2-4c^2 with 2a >= 3bc", triples, surd_identity_check,
            detail::triple_label);
    sb.each("closed form 2/(3+sqrt(9-4/b^2-4/c^2)) equals bc/a", triples,
            [](const MarkovTriple& t) { return compare(width_as_surd(t), width(t)) == 0; }, detail::triple_label);
    sb.single("surd identity fails at (1,1,1)", [] { return !surd_identity_check(MarkovTriple()); });
    sb.single("Lagrange numbers sqrt(5), sqrt(8), sqrt(221)/5", [] {
        return lagrange_number(1) == QuadraticValue::sqrt_of(5) && lagrange_number(2) == QuadraticValue::sqrt_of(8) &&
               lagrange_number(5) == QuadraticValue::sqrt_of(Rational(221)) * Rational(1, 5);
    });

    std::vector<std::pair<std::string, std::pair<SubtreeSpec, Side>>> branches{
        {"Fibonacci branch", {SubtreeSpec(MarkovTriple()), Side::Left}},
        {"Pell branch", {SubtreeSpec(MarkovTriple(2, 1, 1)), Side::Left}},
        {"(5,2,1) left", {SubtreeSpec(MarkovTriple(5, 2, 1)), Side::Left}},
        {"(5,2,1) right", {SubtreeSpec(MarkovTriple(5, 2, 1)), Side::Right}},
        {"(13,5,1) left", {SubtreeSpec(MarkovTriple(13, 5, 1)), Side::Left}},
        {"(13,5,1) right", {SubtreeSpec(MarkovTriple(13, 5, 1)), Side::Right}},
    };
    sb.each("gaps to 2/(3+lambda(a)) are positive and strictly decreasing", branches,
            [&](const auto& br) { return convergence_trace(br.second.first, cfg.trace_terms, br.second.second).size() == cfg.trace_terms; },
            [](const auto& br) { return br.first; });
    sb.details()["triples"] = triples.size();
    return sb.finish();
}

inline SuiteReport verify_ordering(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("ordering");
    auto apexes = detail::triples_up_to(cfg.max_bound);
    sb.each("widths strictly decrease in alternating order down to depth " + std::to_string(cfg.depth), apexes,
            [&](const MarkovTriple& t) { return alternating_order(t, cfg.depth).size() > 1; }, detail::triple_label);
    std::vector<MarkovTriple> chain_apexes;
    std::copy_if(apexes.begin(), apexes.end(), std::back_inserter(chain_apexes),
                 [](const MarkovTriple& t) { return t.a() >= 5; });
    sb.each("chain inequalities bc/a > ac/g1 > ab/f1 > ...", chain_apexes,
            [&](const MarkovTriple& t) { return verify_chain_inequalities(t.a(), t.b(), t.c(), cfg.depth); },
            detail::triple_label);

    Spectrum s(cfg.n_max);
    std::vector<std::size_t> regular;
    for (std::size_t n = 1; n <= std::min<std::size_t>(32, cfg.n_max); ++n) regular.push_back(n);
    sb.each("juxtaposition inequality holds for every n <= 32", regular,
            [&](std::size_t n) {
                for (std::size_t np = n + 1, end = s.window_end(n); np <= end; ++np)
                    if (!s.nn_holds(n, np)) return false;
                return true;
            },
            [](std::size_t n) { return "n = " + std::to_string(n); });

    auto records = find_irregularities(s, cfg.n_max);
    sb.each("swap pattern of each irregularity", records,
            [&](const IrregularityRecord& r) { return verify_swap_pattern(s, r); },
            [](const IrregularityRecord& r) { return "n = " + std::to_string(r.n); });
    if (cfg.fixture) {
        std::vector<std::pair<std::size_t, std::size_t>> got, want;
        for (auto& r : records) got.emplace_back(r.n, r.span);
        for (auto& r : *cfg.fixture)
            if (r.higher() <= cfg.n_max + 1 && r.n <= cfg.n_max) want.emplace_back(r.n, r.span);
        std::string witness;
        if (got != want) {
            Json g = got, w = want;
            witness = "found " + g.dump() + ", fixture " + w.dump();
        }
        sb.single("irregularities match the fixture", [&] { return got == want; }, witness);
    }
    sb.details()["irregularities"] = records;
    return sb.finish();
}

inline SuiteReport verify_lattice(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("lattice");
    auto triples = detail::triples_up_to(cfg.max_bound);
    auto rest = detail::non_root(triples);
    sb.each("base triangle has area 1/2, affine perimeter 3 and edges a^2, b^2, c^2 over abc", triples,
            [](const MarkovTriple& t) {
                auto T = vianna_triangle(t);
                return T.area() == Rational(1, 2) && T.affine_perimeter() == 3;
            },
            detail::triple_label);
    sb.each("lattice width equals bc/a with minimizer (0,1)", triples,
            [](const MarkovTriple& t) {
                auto lw = lattice_width(vianna_triangle(t).polygon());
                return lw.width == width(t) && lw.direction == LatticeVector{0, 1};
            },
            detail::triple_label);
    sb.each("central point at affine distance 1/3 from every edge", triples,
            [](const MarkovTriple& t) {
                auto T = vianna_triangle(t);
                auto P = T.polygon();
                return P.contains_strictly(central_point(T));
            },
            detail::triple_label);
    sb.each("a/(bc) > 2bc/a", rest, check_alg_lemma, detail::triple_label);
    sb.each("shear-normalized triangle contains the right triangle of legs h - eps/2 (eps = h/10)", rest,
            [](const MarkovTriple& t) {
                auto N = shear_normalize(vianna_triangle(t)).first;
                return inscribed_right_triangle(N, N.height / 10);
            },
            detail::triple_label);
    sb.each("lattice width is below 1", rest, check_width_inequality_failure, detail::triple_label);
    sb.details()["triples"] = triples.size();
    return sb.finish();
}

inline SuiteReport verify_ingest(const VerifyConfig& cfg) {
    detail::SuiteBuilder sb("ingest");
    if (!cfg.store) {
        sb.single("b-files available", [] { return false; }, "no b-file store configured");
        return sb.finish();
    }
    std::vector<std::pair<SequenceKind, std::size_t>> jobs{
        {SequenceKind::Markov, 500}, {SequenceKind::Fibonacci, 1000}, {SequenceKind::Pell, 1000}};
    Json reports = Json::array();
    sb.each("generated prefixes match the b-files", jobs,
            [&](const auto& job) {
                auto rep = cross_check(job.first, job.second, *cfg.store);
                reports.push_back(rep);
                return rep.match;
            },
            [](const auto& job) { return sequence_id(job.first) + " n = " + std::to_string(job.second); });
    sb.single("m_33 = P_15, m_34 = F_27, b_33 = P_17, b_34 = F_29 in the ingested files", [&] {
        auto M = cfg.store->load(SequenceKind::Markov).entries;
        auto F = cfg.store->load(SequenceKind::Fibonacci).entries;
        auto P = cfg.store->load(SequenceKind::Pell).entries;
        Spectrum s(34);
        return M.at(33) == P.at(15) && M.at(34) == F.at(27) && s.b(33) == P.at(17) && s.b(34) == F.at(29);
    });
    sb.details()["cross_checks"] = reports;
    return sb.finish();
}

inline SuiteReport run_suite(const std::string& name, const VerifyConfig& cfg) {
    if (name == "markov") return verify_markov(cfg);
    if (name == "capacity") return verify_capacity(cfg);
    if (name == "ordering") return verify_ordering(cfg);
    if (name == "lattice") return verify_lattice(cfg);
    if (name == "ingest") return verify_ingest(cfg);
    throw std::invalid_argument("unknown suite '" + name + "'");
}

inline void to_json(Json& j, const CheckResult& c) {
    j = {{"invariant", c.invariant}, {"passed", c.passed}, {"checked", c.checked}};
    if (!c.passed) j["witness"] = c.witness;
}

inline void to_json(Json& j, const SuiteReport& r) {
    j = {{"suite", r.name}, {"passed", r.passed()}, {"checks", r.checks}, {"details", r.details}};
}

}  // namespace mbl

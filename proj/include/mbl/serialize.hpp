#pragma once

// JSON forms. Integers and rationals travel as decimal strings so that
// bignums round-trip exactly.

#include "mbl/capacity.hpp"
#include "mbl/ingest.hpp"
#include "mbl/lattice.hpp"
#include "mbl/ordering.hpp"

#include <nlohmann/json.hpp>

namespace mbl {

using Json = nlohmann::ordered_json;

inline Json rational_json(const Rational& r) {
    return {{"num", numerator_of(r).str()}, {"den", denominator_of(r).str()}};
}

inline Rational rational_from_json(const Json& j) {
    return Rational(parse_integer(j.at("num").get<std::string>()), parse_integer(j.at("den").get<std::string>()));
}

inline void to_json(Json& j, const MarkovTriple& t) { j = {{"a", t.a().str()}, {"b", t.b().str()}, {"c", t.c().str()}}; }
inline void from_json(const Json& j, MarkovTriple& t) {
    t = MarkovTriple(parse_integer(j.at("a").get<std::string>()), parse_integer(j.at("b").get<std::string>()),
                     parse_integer(j.at("c").get<std::string>()));
}

inline void to_json(Json& j, const Capacity& c) { j = rational_json(c.value()); }
inline void from_json(const Json& j, Capacity& c) { c = Capacity(rational_from_json(j)); }

inline void to_json(Json& j, const QuadraticValue& v) {
    j = {{"q", rational_json(v.q())}, {"s", rational_json(v.s())}, {"r", v.r().str()}};
}
inline void from_json(const Json& j, QuadraticValue& v) {
    v = QuadraticValue(rational_from_json(j.at("q")), rational_from_json(j.at("s")),
                       Rational(parse_integer(j.at("r").get<std::string>())));
}

/// ["p/q", "p/q"]
inline void to_json(Json& j, const RationalPoint& p) { j = Json::array({to_string(p.x), to_string(p.y)}); }
inline void from_json(const Json& j, RationalPoint& p) {
    p = {parse_rational(j.at(0).get<std::string>()), parse_rational(j.at(1).get<std::string>())};
}

inline void to_json(Json& j, const LatticeVector& v) { j = Json::array({v.x.str(), v.y.str()}); }
inline void from_json(const Json& j, LatticeVector& v) {
    v = {parse_integer(j.at(0).get<std::string>()), parse_integer(j.at(1).get<std::string>())};
}


inline void to_json(Json& j, const LatticeWidth& w) { j = {{"width", w.width}, {"direction", w.direction}}; }

inline void to_json(Json& j, const ViannaTriangle& T) {
    j = {{"triple", T.triple},
         {"vertices", T.vertices},
         {"ell", to_string(T.ell)},
         {"height", to_string(T.height)},
         {"lambda", to_string(T.lambda)},
         {"residue", T.residue.str()},
         {"central_point", central_point(T)}};
}

inline void to_json(Json& j, const OrderEntry& e) { j = {{"triple", e.triple}, {"width", e.width}}; }

inline void to_json(Json& j, const SpectrumRow& r) {
    j = {{"n", r.n},
         {"m", r.m.str()},
         {"apex", r.apex},
         {"b", r.b.str()},
         {"capacities", r.first_capacities},
         {"limit", r.limit}};
}
inline void from_json(const Json& j, SpectrumRow& r) {
    r.n = j.at("n").get<std::size_t>();
    r.m = parse_integer(j.at("m").get<std::string>());
    r.apex = j.at("apex").get<MarkovTriple>();
    r.b = parse_integer(j.at("b").get<std::string>());
    r.first_capacities = j.at("capacities").get<std::vector<Capacity>>();
    r.limit = j.at("limit").get<QuadraticValue>();
}

inline void to_json(Json& j, const IrregularityRecord& r) {
    j = {{"n", r.n}, {"span", r.span}, {"higher", r.higher()}, {"lower", r.lower}, {"kind", r.kind}};
}
inline void from_json(const Json& j, IrregularityRecord& r) {
    r.n = j.at("n").get<std::size_t>();
    r.span = j.at("span").get<std::size_t>();
    r.lower = j.at("lower").get<std::vector<std::size_t>>();
    r.kind = j.at("kind").get<std::string>();
}

inline void to_json(Json& j, const CompletenessReport& r) {
    j = {{"threshold", rational_json(r.threshold)},
         {"n_max", r.n_max},
         {"certified", r.certified},
         {"tail_index", r.tail_index},
         {"tail_bound", rational_json(r.tail_bound)},
         {"contributing_count", r.contributing.size()},
         {"relevant_violations", r.relevant_violations},
         {"conditions", r.conditions}};
    if (r.offending_index) j["offending_index"] = *r.offending_index;
    if (!r.failure.empty()) j["failure"] = r.failure;
}

inline void to_json(Json& j, const ConvergenceStep& s) {
    j = {{"triple", s.triple}, {"width", s.width}, {"gap", s.gap}, {"gap_preview", s.gap.preview()}};
}

inline void to_json(Json& j, const CrossCheckReport& r) {
    j = {{"sequence", sequence_id(r.kind)}, {"compared", r.compared}, {"match", r.match}, {"origin", r.origin}};
    if (r.first_mismatch)
        j["first_mismatch"] = {{"index", r.first_mismatch->index},
                               {"file", r.first_mismatch->expected},
                               {"generated", r.first_mismatch->actual}};
}

}  // namespace mbl

// LatticePolygon has no empty state, so it is read through adl_serializer.
template <>
struct nlohmann::adl_serializer<mbl::LatticePolygon> {
    static mbl::LatticePolygon from_json(const mbl::Json& j) {
        return mbl::LatticePolygon(j.get<std::vector<mbl::RationalPoint>>());
    }
    static void to_json(mbl::Json& j, const mbl::LatticePolygon& P) { j = P.vertices(); }
};

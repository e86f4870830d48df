#pragma once

// Subcommands of the `mbl` tool as library calls: each builds a JSON document
// and a flat table, or SVG bytes for figures. Parsing of argv and network
// access stay in the executable.

#include "mbl/figures.hpp"
#include "mbl/verify.hpp"

#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

namespace mbl {

enum class Format { Text, Json, Csv, Svg };

inline Format parse_format(std::string_view s) {
    if (s == "text") return Format::Text;
    if (s == "json") return Format::Json;
    if (s == "csv") return Format::Csv;
    if (s == "svg") return Format::Svg;
    throw std::invalid_argument("unknown format '" + std::string(s) + "'");
}

/// Thrown for unusable arguments; maps to exit status 2.
struct UsageError : std::invalid_argument {
    using std::invalid_argument::invalid_argument;
};

/// Thrown for unreadable or unwritable files; maps to exit status 3.
struct IoError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

struct RunConfig {
    std::string command;
    Format format = Format::Text;
    std::optional<Integer> max_bound;
    std::optional<std::size_t> n_max;
    std::optional<std::size_t> depth;
    std::optional<std::size_t> k;
    std::optional<std::size_t> n;
    std::vector<MarkovTriple> triples;
    std::optional<std::string> threshold;
    std::optional<std::string> eps;
    std::optional<std::string> polygon;
    std::optional<std::string> figure;
    std::vector<std::string> suites;
    std::vector<std::string> sequences;
    std::optional<std::size_t> count;
    std::optional<std::string> fixture;
    std::optional<std::filesystem::path> cache_dir;
    std::optional<std::filesystem::path> data_dir;
    std::map<SequenceKind, std::filesystem::path> local_files;
    bool offline = true;
    BFileStore::Fetcher fetcher;
};

struct Table {
    std::vector<std::string> columns;
    std::vector<std::vector<std::string>> rows;
};

struct Output {
    Json json = Json::object();
    Table table;
    std::string svg;
    /// 0 ok, 1 a verification failed.
    int status = 0;
};

/// "a,b,c" -> sorted, validated triple.
inline MarkovTriple parse_triple(std::string_view s) {
    std::vector<Integer> parts;
    std::size_t pos = 0;
    while (pos <= s.size()) {
        std::size_t comma = s.find(',', pos);
        std::string_view piece = s.substr(pos, comma == std::string_view::npos ? std::string_view::npos : comma - pos);
        try {
            parts.push_back(parse_integer(piece));
        } catch (const std::invalid_argument&) {
            throw UsageError("--triple expects a,b,c with integers, got '" + std::string(s) + "'");
        }
        if (comma == std::string_view::npos) break;
        pos = comma + 1;
    }
    if (parts.size() != 3) throw UsageError("--triple expects three entries, got '" + std::string(s) + "'");
    try {
        return MarkovTriple(parts[0], parts[1], parts[2]);
    } catch (const DomainError& e) {
        throw UsageError(e.what());
    }
}

inline Rational parse_rational_arg(const std::string& flag, const std::string& s) {
    try {
        return parse_rational(s);
    } catch (const std::exception&) {
        throw UsageError(flag + " expects a rational such as p/q, got '" + s + "'");
    }
}

inline std::string read_text_file(const std::filesystem::path& p) {
    std::ifstream in(p, std::ios::binary);
    if (!in) throw IoError("cannot read " + p.string());
    std::ostringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

inline std::vector<IrregularityRecord> load_irregularity_fixture(const std::filesystem::path& p) {
    Json j;
    try {
        j = Json::parse(read_text_file(p));
    } catch (const Json::parse_error& e) {
        throw IoError("fixture " + p.string() + " is not valid JSON: " + e.what());
    }
    std::vector<IrregularityRecord> out;
    for (const auto& r : j.at("records")) {
        IrregularityRecord rec;
        rec.n = r.at("n").get<std::size_t>();
        rec.span = r.at("span").get<std::size_t>();
        out.push_back(rec);
    }
    return out;
}

inline BFileStore make_store(const RunConfig& cfg) {
    BFileStore::Options o;
    o.cache_dir = cfg.cache_dir ? cfg.cache_dir : BFileStore::env_cache_dir();
    o.vendored_dir = cfg.data_dir;
    o.local_paths = cfg.local_files;
    o.fetcher = cfg.fetcher;
    o.offline = cfg.offline;
    return BFileStore(std::move(o));
}

namespace detail {

inline std::vector<std::string> triple_cells(const MarkovTriple& t) { return {t.a().str(), t.b().str(), t.c().str()}; }

inline std::vector<std::string> concat(std::vector<std::string> a, const std::vector<std::string>& b) {
    a.insert(a.end(), b.begin(), b.end());
    return a;
}

inline std::string csv_cell(const std::string& s) {
    if (s.find_first_of(",\"\n") == std::string::npos) return s;
    std::string out = "\"";
    for (char ch : s) out += ch == '"' ? std::string("\"\"") : std::string(1, ch);
    return out + "\"";
}

inline MarkovTriple single_triple(const RunConfig& cfg, const MarkovTriple& fallback) {
    if (cfg.triples.size() > 1) throw UsageError(cfg.command + " takes a single --triple");
    return cfg.triples.empty() ? fallback : cfg.triples.front();
}

}  // namespace detail

inline std::string render(const Output& out, Format f) {
    switch (f) {
        case Format::Json: return out.json.dump(2) + "\n";
        case Format::Svg:
            if (out.svg.empty()) throw UsageError("this command has no SVG output");
            return out.svg;
        case Format::Csv: {
            std::string s;
            auto line = [&](const std::vector<std::string>& cells) {
                for (std::size_t i = 0; i < cells.size(); ++i) s += (i ? "," : "") + detail::csv_cell(cells[i]);
                s += "\n";
            };
            line(out.table.columns);
            for (auto& r : out.table.rows) line(r);
            return s;
        }
        case Format::Text: {
            std::vector<std::size_t> w(out.table.columns.size());
            for (std::size_t i = 0; i < w.size(); ++i) w[i] = out.table.columns[i].size();
            for (auto& r : out.table.rows)
                for (std::size_t i = 0; i < r.size() && i < w.size(); ++i) w[i] = std::max(w[i], r[i].size());
            std::string s;
            auto line = [&](const std::vector<std::string>& cells) {
                std::string l;
                for (std::size_t i = 0; i < cells.size(); ++i) {
                    l += cells[i];
                    if (i + 1 < cells.size()) l += std::string(w[i] - cells[i].size() + 2, ' ');
                }
                s += l + "\n";
            };
            line(out.table.columns);
            for (auto& r : out.table.rows) line(r);
            return s;
        }
    }
    return {};
}

/// Widths bc/a. Default rows are the first five non-root triples.
inline Output cmd_widths(const RunConfig& cfg) {
    std::vector<MarkovTriple> ts = cfg.triples;
    if (ts.empty()) {
        if (cfg.max_bound) {
            for (auto& node : enumerate_triples(*cfg.max_bound)) ts.push_back(node.triple);
        } else {
            ts = {MarkovTriple(2, 1, 1), MarkovTriple(5, 2, 1), MarkovTriple(13, 5, 1), MarkovTriple(29, 5, 2),
                  MarkovTriple(433, 29, 5)};
        }
    }
    Output out;
    out.table.columns = {"a", "b", "c", "width", "preview"};
    out.json["rows"] = Json::array();
    for (auto& t : ts) {
        Capacity w = width(t);
        out.table.rows.push_back(detail::concat(detail::triple_cells(t), {w.str(), w.preview()}));
        out.json["rows"].push_back({{"triple", t}, {"width", w}, {"preview", w.preview()}});
    }
    return out;
}

inline Output cmd_triples(const RunConfig& cfg) {
    Integer bound = cfg.max_bound.value_or(433);
    if (bound < 1) throw UsageError("--max-bound must be >= 1");
    Output out;
    out.table.columns = {"a", "b", "c", "depth", "path"};
    out.json["max_bound"] = bound.str();
    out.json["triples"] = Json::array();
    for (auto& node : enumerate_triples(bound)) {
        std::string path;
        for (auto k : node.path) path += std::string(path.empty() ? "" : " ") + to_string(k);
        out.table.rows.push_back(detail::concat(detail::triple_cells(node.triple), {std::to_string(node.depth), path}));
        Json steps = Json::array();
        for (auto k : node.path) steps.push_back(to_string(k));
        out.json["triples"].push_back({{"triple", node.triple}, {"depth", node.depth}, {"path", steps}});
    }
    out.json["count"] = out.table.rows.size();
    return out;
}

/// The subtree preserving the apex maximum; with --k also the essential
/// subtree of that maximum down to k levels.
inline Output cmd_subtree(const RunConfig& cfg) {
    MarkovTriple apex = detail::single_triple(cfg, MarkovTriple(5, 2, 1));
    std::size_t depth = cfg.depth.value_or(2);
    Output out;
    out.table.columns = {"a", "b", "c", "depth", "width"};
    out.json["apex"] = apex;
    out.json["preserved"] = apex.max().str();
    out.json["nodes"] = Json::array();
    for (auto& node : wedge(SubtreeSpec(apex), depth)) {
        std::size_t level = node.depth - tree_node(apex).depth;
        Capacity w = width(node.triple);
        out.table.rows.push_back(detail::concat(detail::triple_cells(node.triple), {std::to_string(level), w.str()}));
        out.json["nodes"].push_back({{"triple", node.triple}, {"level", level}, {"width", w}});
    }
    if (cfg.k) out.json["essential"] = essential_subtree(apex.max(), *cfg.k);
    out.svg = figures::subtree(apex, depth);
    return out;
}

inline Output cmd_order(const RunConfig& cfg) {
    MarkovTriple apex = detail::single_triple(cfg, MarkovTriple(5, 2, 1));
    std::size_t depth = cfg.depth.value_or(3);
    Output out;
    out.table.columns = {"rank", "a", "b", "c", "width", "preview"};
    auto order = alternating_order(apex, depth);
    out.json["apex"] = apex;
    out.json["order"] = order;
    for (std::size_t i = 0; i < order.size(); ++i)
        out.table.rows.push_back(detail::concat(
            detail::concat({std::to_string(i + 1)}, detail::triple_cells(order[i].triple)),
            {order[i].width.str(), order[i].width.preview()}));
    if (apex.a() >= 5) {
        bool chain = verify_chain_inequalities(apex.a(), apex.b(), apex.c(), std::max<std::size_t>(depth, 1));
        out.json["chain_inequalities"] = chain;
        if (!chain) out.status = 1;
    }
    out.svg = figures::subtree(apex, depth);
    return out;
}

/// Irregularity catalogue up to --n-max, optionally compared with --fixture,
/// and with --threshold the completeness certificate above that width.
inline Output cmd_irregularities(const RunConfig& cfg) {
    std::size_t n_max = cfg.n_max.value_or(450);
    if (n_max == 0) throw UsageError("--n-max must be >= 1");
    Spectrum s(n_max);
    auto records = find_irregularities(s, n_max);
    Output out;
    out.table.columns = {"n", "span", "higher", "m_n", "m_higher", "swap_pattern"};
    out.json["n_max"] = n_max;
    out.json["records"] = Json::array();
    for (auto& r : records) {
        bool ok = verify_swap_pattern(s, r);
        if (!ok) out.status = 1;
        Json j = r;
        j["swap_pattern"] = ok;
        out.json["records"].push_back(j);
        out.table.rows.push_back({std::to_string(r.n), std::to_string(r.span), std::to_string(r.higher()),
                                  s.m(r.n).str(), s.m(r.higher()).str(), ok ? "verified" : "FAILED"});
    }
    if (cfg.fixture) {
        auto want = load_irregularity_fixture(*cfg.fixture);
        std::vector<std::pair<std::size_t, std::size_t>> a, b;
        for (auto& r : records) a.emplace_back(r.n, r.span);
        for (auto& r : want)
            if (r.n <= n_max) b.emplace_back(r.n, r.span);
        out.json["fixture_match"] = a == b;
        if (a != b) out.status = 1;
    }
    if (cfg.threshold) {
        auto rep = ordered_prefix_complete_above(parse_rational_arg("--threshold", *cfg.threshold), n_max);
        out.json["completeness"] = rep;
        if (!rep.certified) out.status = 1;
    }
    return out;
}

inline Output cmd_triangle(const RunConfig& cfg) {
    MarkovTriple t = detail::single_triple(cfg, MarkovTriple(5, 2, 1));
    ViannaTriangle T = vianna_triangle(t);
    Output out;
    out.json = T;
    out.json["area"] = to_string(T.area());
    out.json["affine_perimeter"] = to_string(T.affine_perimeter());
    out.json["edges"] = Json::array();
    out.table.columns = {"edge", "from", "to", "direction", "affine_length", "weight"};
    for (std::size_t i = 0; i < T.edges.size(); ++i) {
        const auto& e = T.edges[i];
        out.json["edges"].push_back({{"from", e.from},
                                     {"to", e.to},
                                     {"direction", e.direction},
                                     {"affine_length", to_string(e.affine_length)},
                                     {"weight", e.weight.str()}});
        out.table.rows.push_back({std::to_string(i), e.from.str(), e.to.str(), e.direction.str(),
                                  to_string(e.affine_length), e.weight.str()});
    }
    if (!t.is_root()) {
        auto [N, M] = shear_normalize(T);
        Rational eps = cfg.eps ? parse_rational_arg("--eps", *cfg.eps) : Rational(N.height / 10);
        out.json["normal_form"] = {{"shear", M.m01.str()}, {"vertices", N.vertices}};
        out.json["inscribed_right_triangle"] = {{"eps", to_string(eps)}, {"contained", inscribed_right_triangle(N, eps)}};
        out.json["alg_lemma"] = check_alg_lemma(t);
    }
    out.svg = figures::triangle(t);
    return out;
}

/// Lattice width of --polygon (JSON list of ["p/q","p/q"]) or of the base triangle of --triple.
inline Output cmd_width(const RunConfig& cfg) {
    std::optional<LatticePolygon> P;
    Output out;
    if (cfg.polygon) {
        std::string text = *cfg.polygon;
        if (!text.empty() && text.front() == '@') text = read_text_file(text.substr(1));
        try {
            P = Json::parse(text).get<LatticePolygon>();
        } catch (const Json::exception& e) {
            throw UsageError(std::string("--polygon expects a JSON list of [\"p/q\",\"p/q\"] pairs: ") + e.what());
        }
    } else {
        MarkovTriple t = detail::single_triple(cfg, MarkovTriple(5, 2, 1));
        P = vianna_triangle(t).polygon();
        out.json["triple"] = t;
        out.json["expected"] = width(t);
    }
    LatticeWidth lw = lattice_width(*P);
    out.json["polygon"] = *P;
    out.json["lattice_width"] = lw;
    if (out.json.contains("expected") && !(lw.width == out.json["expected"].get<Capacity>())) out.status = 1;
    out.table.columns = {"width", "direction", "preview"};
    out.table.rows.push_back({lw.width.str(), lw.direction.str(), lw.width.preview()});
    return out;
}

/// Lagrange numbers and accumulation points for m_1..m_{n-max}; with --triple,
/// the convergence of both branches below that apex.
inline Output cmd_limits(const RunConfig& cfg) {
    Output out;
    if (!cfg.triples.empty()) {
        MarkovTriple apex = detail::single_triple(cfg, MarkovTriple(5, 2, 1));
        std::size_t terms = cfg.depth.value_or(25);
        out.table.columns = {"side", "a", "b", "c", "width", "gap"};
        for (Side side : {Side::Left, Side::Right}) {
            const char* name = side == Side::Left ? "left" : "right";
            auto trace = convergence_trace(SubtreeSpec(apex), terms, side);
            out.json[name] = trace;
            for (auto& st : trace)
                out.table.rows.push_back(detail::concat(detail::concat({name}, detail::triple_cells(st.triple)),
                                                        {st.width.str(), st.gap.preview()}));
        }
        out.json["limit"] = limit_point(apex.max());
        return out;
    }
    std::size_t n = cfg.n_max.value_or(10);
    Spectrum s(n);
    out.table.columns = {"n", "m", "b", "lagrange", "limit", "preview"};
    out.json["rows"] = Json::array();
    for (std::size_t j = 1; j <= n; ++j) {
        QuadraticValue lam = detail::lagrange_unchecked(s.m(j));
        QuadraticValue lim = s.limit(j);
        out.json["rows"].push_back({{"n", j}, {"m", s.m(j).str()}, {"b", s.b(j).str()}, {"lagrange", lam}, {"limit", lim}});
        out.table.rows.push_back({std::to_string(j), s.m(j).str(), s.b(j).str(), lam.str(), lim.str(), lim.preview()});
    }
    return out;
}

inline VerifyConfig verify_config(const RunConfig& cfg) {
    VerifyConfig v;
    if (cfg.max_bound) v.max_bound = *cfg.max_bound;
    if (cfg.n_max) v.n_max = *cfg.n_max;
    if (cfg.depth) v.depth = *cfg.depth;
    if (cfg.fixture) v.fixture = load_irregularity_fixture(*cfg.fixture);
    v.store = make_store(cfg);
    return v;
}

inline Output cmd_verify(const RunConfig& cfg) {
    std::vector<std::string> suites = cfg.suites.empty() ? suite_names() : cfg.suites;
    for (auto& s : suites)
        if (std::find(suite_names().begin(), suite_names().end(), s) == suite_names().end())
            throw UsageError("unknown suite '" + s + "'");
    VerifyConfig v = verify_config(cfg);
    Output out;
    out.table.columns = {"suite", "invariant", "checked", "result", "witness"};
    out.json["suites"] = Json::array();
    bool all = true;
    for (auto& name : suites) {
        SuiteReport r = run_suite(name, v);
        all = all && r.passed();
        out.json["suites"].push_back(r);
        for (auto& c : r.checks)
            out.table.rows.push_back({name, c.invariant, std::to_string(c.checked), c.passed ? "pass" : "FAIL", c.witness});
    }
    out.json["passed"] = all;
    out.status = all ? 0 : 1;
    return out;
}

/// Figures: order5 (or subtree with --triple/--depth), numberline --n, triangle --triple.
inline Output cmd_plot(const RunConfig& cfg) {
    std::string fig = cfg.figure.value_or("order5");
    Output out;
    if (fig == "order5" || fig == "subtree") {
        MarkovTriple apex = detail::single_triple(cfg, MarkovTriple(5, 2, 1));
        out.svg = figures::subtree(apex, cfg.depth.value_or(3));
    } else if (fig == "numberline") {
        std::size_t n = cfg.n.value_or(33);
        Spectrum s(n + 2);
        out.svg = figures::numberline(s, n, cfg.k.value_or(6));
    } else if (fig == "triangle") {
        out.svg = figures::triangle(detail::single_triple(cfg, MarkovTriple()));
    } else {
        throw UsageError("unknown figure '" + fig + "' (order5, subtree, numberline, triangle)");
    }
    out.json["figure"] = fig;
    out.json["svg"] = out.svg;
    out.table.columns = {"figure", "bytes"};
    out.table.rows.push_back({fig, std::to_string(out.svg.size())});
    return out;
}

/// Loads b-files and cross-checks the generated prefixes.
inline Output cmd_ingest(const RunConfig& cfg) {
    std::vector<std::string> names = cfg.sequences.empty() ? std::vector<std::string>{"markov", "fibonacci", "pell"}
                                                           : cfg.sequences;
    BFileStore store = make_store(cfg);
    Output out;
    out.table.columns = {"sequence", "source", "entries", "compared", "match", "first_mismatch"};
    out.json["sequences"] = Json::array();
    for (auto& name : names) {
        SequenceKind kind;
        try {
            kind = parse_sequence_kind(name);
        } catch (const std::invalid_argument& e) {
            throw UsageError(e.what());
        }
        BFile f = store.load(kind);
        std::size_t n = cfg.count.value_or(kind == SequenceKind::Markov ? 500 : 1000);
        CrossCheckReport rep = cross_check(kind, n, f);
        Json j = rep;
        j["source"] = to_string(f.source);
        j["entries"] = f.entries.size();
        out.json["sequences"].push_back(j);
        std::string mm = rep.first_mismatch ? std::to_string(rep.first_mismatch->index) : "";
        out.table.rows.push_back({sequence_id(kind), to_string(f.source), std::to_string(f.entries.size()),
                                  std::to_string(rep.compared), rep.match ? "yes" : "NO", mm});
        if (!rep.match) out.status = 1;
    }
    return out;
}

inline Output run_command(const RunConfig& cfg) {
    const std::string& c = cfg.command;
    if (c == "widths") return cmd_widths(cfg);
    if (c == "triples") return cmd_triples(cfg);
    if (c == "subtree") return cmd_subtree(cfg);
    if (c == "order") return cmd_order(cfg);
    if (c == "irregularities") return cmd_irregularities(cfg);
    if (c == "triangle") return cmd_triangle(cfg);
    if (c == "width") return cmd_width(cfg);
    if (c == "limits") return cmd_limits(cfg);
    if (c == "verify") return cmd_verify(cfg);
    if (c == "plot") return cmd_plot(cfg);
    if (c == "ingest") return cmd_ingest(cfg);
    throw UsageError("unknown command '" + c + "'");
}

}  // namespace mbl

#include "mbl/commands.hpp"

#include <gtest/gtest.h>

using namespace mbl;

namespace {

RunConfig config(std::string command) {
    RunConfig c;
    c.command = std::move(command);
    c.data_dir = std::filesystem::path(MBL_DATA_DIR);
    return c;
}

}  // namespace

TEST(Widths, DefaultRows) {
    auto out = cmd_widths(config("widths"));
    ASSERT_EQ(out.table.rows.size(), 5u);
    std::vector<std::string> ws;
    for (auto& r : out.table.rows) ws.push_back(r[3]);
    EXPECT_EQ(ws, (std::vector<std::string>{"1/2", "2/5", "5/13", "10/29", "145/433"}));
}

TEST(Widths, ExplicitTriples) {
    auto c = config("widths");
    c.triples = {parse_triple("194,13,5"), parse_triple("1,1,1")};
    auto out = cmd_widths(c);
    EXPECT_EQ(out.table.rows[0][3], "65/194");
    EXPECT_EQ(out.table.rows[1][3], "1");
    EXPECT_EQ(out.json["rows"][0]["width"]["num"], "65");
}

TEST(ParseTriple, Errors) {
    EXPECT_EQ(parse_triple("1,2,5"), MarkovTriple(5, 2, 1));
    EXPECT_THROW(parse_triple("5,2"), UsageError);
    EXPECT_THROW(parse_triple("5,2,x"), UsageError);
    EXPECT_THROW(parse_triple("5,2,2"), UsageError);
    EXPECT_THROW(parse_triple(""), UsageError);
}

TEST(Triples, CountAndPaths) {
    auto c = config("triples");
    auto out = cmd_triples(c);
    EXPECT_EQ(out.json["count"], 11);
    c.max_bound = Integer(0);
    EXPECT_THROW(cmd_triples(c), UsageError);
}

TEST(Order, RankingBelowFive) {
    auto out = cmd_order(config("order"));
    ASSERT_EQ(out.table.rows.size(), 7u);
    EXPECT_EQ(out.table.rows[6][1], "6466");
    EXPECT_EQ(out.table.rows[6][4], "2165/6466");
    EXPECT_EQ(out.json["chain_inequalities"], true);
    EXPECT_EQ(out.status, 0);
}

TEST(Irregularities, FixtureAndCompleteness) {
    auto c = config("irregularities");
    c.fixture = std::string(MBL_FIXTURE_DIR) + "/irregularities_450.json";
    c.threshold = "1/3+x";
    EXPECT_THROW(cmd_irregularities(c), UsageError);
    c.threshold = "1/3 + 2e-44";
    auto out = cmd_irregularities(c);
    EXPECT_EQ(out.json["fixture_match"], true);
    EXPECT_EQ(out.json["records"].size(), 17u);
    EXPECT_EQ(out.json["completeness"]["certified"], true);
    EXPECT_EQ(out.status, 0);
}

TEST(Irregularities, MissingFixtureIsIoError) {
    auto c = config("irregularities");
    c.n_max = 40;
    c.fixture = "/nonexistent/fixture.json";
    EXPECT_THROW(cmd_irregularities(c), IoError);
}

TEST(Verify, AggregateIsConjunctionOfSuites) {
    auto c = config("verify");
    c.max_bound = Integer(1);
    c.suites = {"markov"};
    auto one = cmd_verify(c);
    EXPECT_EQ(one.status, 0);
    EXPECT_EQ(one.json["passed"], true);

    c.max_bound = Integer(2000);
    c.n_max = 60;
    c.depth = 4;
    c.suites = {};
    auto all = cmd_verify(c);
    bool conj = true;
    for (auto& s : all.json["suites"]) conj = conj && s["passed"].get<bool>();
    EXPECT_EQ(all.json["passed"].get<bool>(), conj);
    EXPECT_TRUE(conj);

    c.suites = {"nonsense"};
    EXPECT_THROW(cmd_verify(c), UsageError);
}

TEST(Verify, IngestWithoutDataFails) {
    auto c = config("verify");
    c.data_dir.reset();
    c.suites = {"ingest"};
    auto out = cmd_verify(c);
    EXPECT_EQ(out.status, 1);
}

TEST(Json, RoundTrips) {
    MarkovTriple t(433, 29, 5);
    EXPECT_EQ(Json(t).get<MarkovTriple>(), t);
    Capacity w = width(t);
    EXPECT_EQ(Json(w).get<Capacity>(), w);
    QuadraticValue q = limit_point(5);
    EXPECT_EQ(Json(q).get<QuadraticValue>(), q);
    LatticePolygon P = vianna_triangle(t).polygon();
    EXPECT_EQ(Json(P).get<LatticePolygon>().vertices(), P.vertices());
    Spectrum s(10);
    SpectrumRow row = s.row(5, 3);
    SpectrumRow back = Json(row).get<SpectrumRow>();
    EXPECT_EQ(back.m, row.m);
    EXPECT_EQ(back.apex, row.apex);
    EXPECT_EQ(back.b, row.b);
    EXPECT_EQ(back.first_capacities, row.first_capacities);
    EXPECT_EQ(back.limit, row.limit);
    for (auto& r : find_irregularities(120)) {
        IrregularityRecord rr = Json(r).get<IrregularityRecord>();
        EXPECT_EQ(rr, r);
        EXPECT_EQ(rr.lower, r.lower);
    }
}

TEST(Render, CsvAndText) {
    auto out = cmd_widths(config("widths"));
    std::string csv = render(out, Format::Csv);
    EXPECT_EQ(csv.substr(0, csv.find('\n')), "a,b,c,width,preview");
    EXPECT_NE(csv.find("\n433,29,5,145/433,"), std::string::npos);
    std::string text = render(out, Format::Text);
    EXPECT_NE(text.find("145/433"), std::string::npos);
    EXPECT_THROW(render(out, Format::Svg), UsageError);
    Table t{{"x"}, {{"a,\"b\""}}};
    Output o;
    o.table = t;
    EXPECT_EQ(render(o, Format::Csv), "x\n\"a,\"\"b\"\"\"\n");
}

TEST(Plot, DeterministicAndLabelled) {
    auto c = config("plot");
    for (std::string fig : {"order5", "numberline", "triangle"}) {
        c.figure = fig;
        auto a = cmd_plot(c).svg, b = cmd_plot(c).svg;
        EXPECT_EQ(a, b) << fig;
        EXPECT_EQ(a.rfind("<svg", 0), 0u) << fig;
        EXPECT_NE(a.find("</svg>"), std::string::npos) << fig;
    }
    c.figure = "order5";
    std::string order5 = cmd_plot(c).svg;
    for (const char* label : {"(5,2,1)", "(6466,433,5)", "2165/6466", "#7"})
        EXPECT_NE(order5.find(label), std::string::npos) << label;
    c.figure = "numberline";
    std::string nl = cmd_plot(c).svg;
    EXPECT_NE(nl.find("195025"), std::string::npos);
    EXPECT_NE(nl.find("196418"), std::string::npos);
    c.figure = "triangle";
    EXPECT_NE(cmd_plot(c).svg.find("(1/3,1/3)"), std::string::npos);
    c.figure = "pie";
    EXPECT_THROW(cmd_plot(c), UsageError);
}

TEST(Ingest, VendoredAndOffline) {
    auto c = config("ingest");
    auto out = cmd_ingest(c);
    EXPECT_EQ(out.status, 0);
    EXPECT_EQ(out.table.rows.size(), 3u);
    for (auto& r : out.table.rows) EXPECT_EQ(r[4], "yes");
    c.data_dir.reset();
    c.cache_dir = std::filesystem::temp_directory_path() / "mbl-empty-cache-does-not-exist";
    EXPECT_THROW(cmd_ingest(c), OfflineError);
    c.sequences = {"lucas"};
    EXPECT_THROW(cmd_ingest(c), UsageError);
}

TEST(Width, PolygonArgument) {
    auto c = config("width");
    c.polygon = R"([["0","0"],["1","0"],["0","1"]])";
    auto out = cmd_width(c);
    EXPECT_EQ(out.table.rows[0][0], "1");
    c.polygon = "[1,2";
    EXPECT_THROW(cmd_width(c), UsageError);
    c.polygon.reset();
    c.triples = {MarkovTriple(433, 29, 5)};
    EXPECT_EQ(cmd_width(c).table.rows[0][0], "145/433");
}

TEST(Limits, TableAndTrace) {
    auto c = config("limits");
    c.n_max = 3;
    auto out = cmd_limits(c);
    ASSERT_EQ(out.table.rows.size(), 3u);
    EXPECT_EQ(out.table.rows[0][3], "sqrt(5)");
    c.triples = {MarkovTriple(5, 2, 1)};
    c.depth = 5;
    auto tr = cmd_limits(c);
    EXPECT_EQ(tr.table.rows.size(), 10u);
}

TEST(RunCommand, UnknownCommand) { EXPECT_THROW(run_command(config("frobnicate")), UsageError); }

#include "mbl/commands.hpp"

#include <CLI11.hpp>
#include <curl/curl.h>

#include <fstream>
#include <iostream>

#ifndef MBL_DATA_DIR
#define MBL_DATA_DIR ""
#endif

namespace {

enum Exit { Ok = 0, Failed = 1, Usage = 2, Io = 3 };

std::string curl_fetch(const std::string& url) {
    struct Handle {
        CURL* h = curl_easy_init();
        ~Handle() { curl_easy_cleanup(h); }
    } handle;
    if (!handle.h) throw mbl::IoError("curl initialisation failed");
    std::string body;
    auto sink = +[](char* data, std::size_t size, std::size_t n, void* user) -> std::size_t {
        static_cast<std::string*>(user)->append(data, size * n);
        return size * n;
    };
    curl_easy_setopt(handle.h, CURLOPT_URL, url.c_str());
    curl_easy_setopt(handle.h, CURLOPT_FOLLOWLOCATION, 1L);
    curl_easy_setopt(handle.h, CURLOPT_FAILONERROR, 1L);
    curl_easy_setopt(handle.h, CURLOPT_TIMEOUT, 60L);
    curl_easy_setopt(handle.h, CURLOPT_WRITEFUNCTION, sink);
    curl_easy_setopt(handle.h, CURLOPT_WRITEDATA, &body);
    if (CURLcode rc = curl_easy_perform(handle.h); rc != CURLE_OK)
        throw mbl::IoError("fetching " + url + " failed: " + curl_easy_strerror(rc));
    return body;
}

mbl::Integer integer_arg(const std::string& flag, const std::string& s) {
    try {
        return mbl::parse_integer(s);
    } catch (const std::exception&) {
        throw mbl::UsageError(flag + " expects an integer, got '" + s + "'");
    }
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Markov triples, Gromov widths of pinwheel complements and their decreasing order"};
    app.require_subcommand(1);
    app.fallthrough();

    std::string format = "text", out_path, max_bound, threshold, eps, polygon, figure, fixture, cache_dir;
    std::string data_dir = MBL_DATA_DIR;
    std::vector<std::string> triples, suites, sequences, files;
    std::size_t n_max = 0, depth = 0, k = 0, n = 0, count = 0;
    bool offline = false, fetch = false;

    app.add_option("--format", format, "text, json, csv or svg")
        ->check(CLI::IsMember({"text", "json", "csv", "svg"}));
    app.add_option("--out", out_path, "write output to this file instead of stdout");

    auto add_triple = [&](CLI::App* c, bool many = false) {
        auto* o = c->add_option("--triple", triples, many ? "Markov triples a,b,c ..." : "Markov triple a,b,c");
        if (!many) o->expected(1);
    };
    auto add_network = [&](CLI::App* c) {
        c->add_flag("--offline", offline, "never touch the network (overrides --fetch)");
        c->add_flag("--fetch", fetch, "download missing b-files from oeis.org");
        c->add_option("--cache-dir", cache_dir, "b-file cache directory (default $MBL_CACHE_DIR)");
        c->add_option("--data-dir", data_dir, "directory of vendored b-files");
    };

    auto* widths = app.add_subcommand("widths", "widths bc/a of Markov triples");
    add_triple(widths, true);
    widths->add_option("--max-bound", max_bound, "all triples with maximum <= bound");

    auto* tri = app.add_subcommand("triples", "enumerate the Markov tree");
    tri->add_option("--max-bound", max_bound, "largest maximal entry (default 433)");

    auto* sub = app.add_subcommand("subtree", "subtree preserving the maximum of an apex");
    add_triple(sub);
    sub->add_option("--depth", depth, "levels below the apex (default 2)")->check(CLI::PositiveNumber);
    sub->add_option("--k", k, "also list the essential subtree to this depth")->check(CLI::PositiveNumber);

    auto* ord = app.add_subcommand("order", "decreasing order of widths along a subtree");
    add_triple(ord);
    ord->add_option("--depth", depth, "levels below the apex (default 3)")->check(CLI::PositiveNumber);

    auto* irr = app.add_subcommand("irregularities", "catalogue of swaps in the global order");
    irr->add_option("--n-max", n_max, "scan m_1..m_{n-max} (default 450)")->check(CLI::PositiveNumber);
    irr->add_option("--fixture", fixture, "expected records (JSON) to compare against");
    irr->add_option("--threshold", threshold, "certify completeness above this width, e.g. 1/3+2e-44");

    auto* trg = app.add_subcommand("triangle", "base triangle, central point and normal form");
    add_triple(trg);
    trg->add_option("--eps", eps, "epsilon for the inscribed right triangle");

    auto* wid = app.add_subcommand("width", "lattice width of a polygon or base triangle");
    add_triple(wid);
    wid->add_option("--polygon", polygon, "JSON list of [\"p/q\",\"p/q\"] vertices, or @file");

    auto* lim = app.add_subcommand("limits", "Lagrange numbers and accumulation points");
    lim->add_option("--n-max", n_max, "rows m_1..m_{n-max} (default 10)")->check(CLI::PositiveNumber);
    add_triple(lim);
    lim->add_option("--depth", depth, "terms per branch when --triple is given (default 25)")->check(CLI::PositiveNumber);

    auto* ver = app.add_subcommand("verify", "run invariant suites");
    ver->add_option("--suite", suites, "markov, capacity, ordering, lattice, ingest (repeatable)");
    ver->add_option("--max-bound", max_bound, "triples with maximum <= bound (default 10000)");
    ver->add_option("--n-max", n_max, "irregularity scan limit (default 450)")->check(CLI::PositiveNumber);
    ver->add_option("--depth", depth, "subtree depth (default 8)")->check(CLI::PositiveNumber);
    ver->add_option("--fixture", fixture, "expected irregularity records (JSON)");
    add_network(ver);

    auto* plot = app.add_subcommand("plot", "SVG figures");
    plot->add_option("figure,--figure", figure, "order5, subtree, numberline or triangle");
    add_triple(plot);
    plot->add_option("--depth", depth, "subtree depth")->check(CLI::PositiveNumber);
    plot->add_option("--n", n, "index for the number line (default 33)")->check(CLI::PositiveNumber);
    plot->add_option("--k", k, "widths per sequence on the number line (default 6)")->check(CLI::PositiveNumber);

    auto* ing = app.add_subcommand("ingest", "load OEIS b-files and cross-check");
    ing->add_option("--sequence", sequences, "markov, fibonacci or pell (repeatable)");
    ing->add_option("--count", count, "terms to compare")->check(CLI::PositiveNumber);
    ing->add_option("--file", files, "SEQ=PATH local b-file (repeatable)");
    add_network(ing);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? Ok : Usage;
    }

    try {
        mbl::RunConfig cfg;
        cfg.command = app.get_subcommands().front()->get_name();
        cfg.format = mbl::parse_format(format);
        if (cfg.command == "plot" && format == "text") cfg.format = mbl::Format::Svg;
        if (!max_bound.empty()) cfg.max_bound = integer_arg("--max-bound", max_bound);
        auto positive = [](std::size_t v) -> std::optional<std::size_t> {
            if (v == 0) return std::nullopt;
            return v;
        };
        cfg.n_max = positive(n_max);
        cfg.depth = positive(depth);
        cfg.k = positive(k);
        cfg.n = positive(n);
        cfg.count = positive(count);
        for (auto& t : triples) cfg.triples.push_back(mbl::parse_triple(t));
        if (!threshold.empty()) cfg.threshold = threshold;
        if (!eps.empty()) cfg.eps = eps;
        if (!polygon.empty()) cfg.polygon = polygon;
        if (!figure.empty()) cfg.figure = figure;
        if (!fixture.empty()) cfg.fixture = fixture;
        if (!cache_dir.empty()) cfg.cache_dir = cache_dir;
        if (!data_dir.empty()) cfg.data_dir = data_dir;
        cfg.suites = suites;
        cfg.sequences = sequences;
        for (auto& f : files) {
            auto eq = f.find('=');
            if (eq == std::string::npos) throw mbl::UsageError("--file expects SEQ=PATH");
            cfg.local_files[mbl::parse_sequence_kind(f.substr(0, eq))] = f.substr(eq + 1);
        }
        cfg.offline = offline || !fetch;
        if (!cfg.offline) cfg.fetcher = curl_fetch;

        mbl::Output out = mbl::run_command(cfg);
        std::string bytes = mbl::render(out, cfg.format);
        if (out_path.empty()) {
            std::cout << bytes;
        } else {
            std::ofstream os(out_path, std::ios::binary);
            if (!os || !(os << bytes)) throw mbl::IoError("cannot write " + out_path);
        }
        return out.status == 0 ? Ok : Failed;
    } catch (const mbl::VerificationFailure& e) {
        std::cerr << "verification failed: " << e.what() << '\n';
        return Failed;
    } catch (const mbl::IoError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Io;
    } catch (const mbl::OfflineError& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Io;
    } catch (const mbl::ParseError& e) {
        std::cerr << "error: malformed b-file, " << e.what() << '\n';
        return Io;
    } catch (const std::filesystem::filesystem_error& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Io;
    } catch (const std::logic_error& e) {
        // UsageError, DomainError and other argument problems.
        std::cerr << "usage error: " << e.what() << '\n';
        return Usage;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << '\n';
        return Io;
    }
}

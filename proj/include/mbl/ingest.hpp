#pragma once

// OEIS b-files for the Markov (A002559), Fibonacci (A000045) and Pell
// (A000129) numbers: parsing, a checksummed local cache, and prefix
// cross-checks against the generated sequences.

#include "mbl/markov.hpp"

#include <boost/crc.hpp>
#include <nlohmann/json.hpp>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iomanip>
#include <functional>
#include <map>
#include <optional>
#include <sstream>
#include <string>
#include <string_view>

namespace mbl {

enum class SequenceKind { Markov, Fibonacci, Pell };

inline std::string sequence_id(SequenceKind k) {
    switch (k) {
        case SequenceKind::Markov: return "A002559";
        case SequenceKind::Fibonacci: return "A000045";
        case SequenceKind::Pell: return "A000129";
    }
    return "";
}

inline SequenceKind parse_sequence_kind(std::string_view s) {
    if (s == "markov" || s == "A002559") return SequenceKind::Markov;
    if (s == "fibonacci" || s == "A000045") return SequenceKind::Fibonacci;
    if (s == "pell" || s == "A000129") return SequenceKind::Pell;
    throw std::invalid_argument("unknown sequence '" + std::string(s) + "'");
}

/// "b002559.txt" for "A002559".
inline std::string bfile_name(SequenceKind k) { return "b" + sequence_id(k).substr(1) + ".txt"; }

inline std::string bfile_url(SequenceKind k) {
    return "https://oeis.org/" + sequence_id(k) + "/" + bfile_name(k);
}

enum class BFileSource { Remote, Cache, LocalPath };

inline const char* to_string(BFileSource s) {
    switch (s) {
        case BFileSource::Remote: return "remote";
        case BFileSource::Cache: return "cache";
        case BFileSource::LocalPath: return "local";
    }
    return "?";
}

struct BFile {
    std::string sequence_id;
    std::map<long, Integer> entries;
    BFileSource source = BFileSource::LocalPath;
    std::string origin;

    friend bool operator==(const BFile& l, const BFile& r) {
        return l.sequence_id == r.sequence_id && l.entries == r.entries;
    }
};

/// Lines "<index> <value>" separated by spaces or tabs; '#' comments and
/// blank lines are skipped; LF and CRLF endings are accepted.
inline BFile parse_bfile(std::string_view text, std::string sequence_id = {}) {
    BFile out;
    out.sequence_id = std::move(sequence_id);
    std::size_t line_no = 0;
    std::size_t pos = 0;
    while (pos < text.size()) {
        std::size_t eol = text.find('\n', pos);
        std::string_view line = text.substr(pos, eol == std::string_view::npos ? std::string_view::npos : eol - pos);
        pos = eol == std::string_view::npos ? text.size() : eol + 1;
        ++line_no;
        if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
        std::size_t first = line.find_first_not_of(" \t");
        if (first == std::string_view::npos || line[first] == '#') continue;
        line = line.substr(first);
        std::size_t sep = line.find_first_of(" \t");
        if (sep == std::string_view::npos) throw ParseError(line_no, "expected '<index> <value>'");
        std::string_view idx_text = line.substr(0, sep);
        std::string_view val_text = line.substr(line.find_first_not_of(" \t", sep));
        std::size_t trail = val_text.find_first_of(" \t");
        if (trail != std::string_view::npos) {
            if (val_text.find_first_not_of(" \t", trail) != std::string_view::npos)
                throw ParseError(line_no, "trailing fields");
            val_text = val_text.substr(0, trail);
        }
        Integer idx, value;
        try {
            idx = parse_integer(idx_text);
            value = parse_integer(val_text);
        } catch (const std::invalid_argument& e) {
            throw ParseError(line_no, e.what());
        }
        long index = static_cast<long>(idx);
        if (!out.entries.empty() && index <= out.entries.rbegin()->first)
            throw ParseError(line_no, "indices must be strictly increasing");
        out.entries.emplace(index, std::move(value));
    }
    return out;
}

inline std::string crc32_hex(std::string_view bytes) {
    boost::crc_32_type crc;
    crc.process_bytes(bytes.data(), bytes.size());
    std::ostringstream os;
    os << std::hex << std::setw(8) << std::setfill('0') << crc.checksum();
    return os.str();
}

struct OfflineError : std::runtime_error {
    using std::runtime_error::runtime_error;
};

/// Resolves b-files: explicit local path, then the cache directory (whose
/// manifest.json records a CRC-32 per file), then the vendored data
/// directory, then the network when a fetcher is installed and allowed.
class BFileStore {
public:
    using Fetcher = std::function<std::string(const std::string& url)>;

    struct Options {
        std::optional<std::filesystem::path> cache_dir;
        std::optional<std::filesystem::path> vendored_dir;
        std::map<SequenceKind, std::filesystem::path> local_paths;
        Fetcher fetcher;
        bool offline = true;
    };

    explicit BFileStore(Options opts) : opts_(std::move(opts)) {}

    /// Cache directory from MBL_CACHE_DIR, if set.
    static std::optional<std::filesystem::path> env_cache_dir() {
        if (const char* v = std::getenv("MBL_CACHE_DIR"); v && *v) return std::filesystem::path(v);
        return std::nullopt;
    }

    BFile load(SequenceKind kind) const {
        const std::string id = sequence_id(kind);
        if (auto it = opts_.local_paths.find(kind); it != opts_.local_paths.end())
            return from_file(it->second, id, BFileSource::LocalPath);
        if (opts_.cache_dir) {
            auto path = *opts_.cache_dir / bfile_name(kind);
            if (std::filesystem::exists(path)) {
                std::string bytes = read_file(path);
                auto manifest = read_manifest();
                if (manifest.contains(id) && manifest[id].value("crc32", "") != crc32_hex(bytes))
                    throw std::runtime_error("cache checksum mismatch for " + path.string());
                BFile f = parse_bfile(bytes, id);
                f.source = BFileSource::Cache;
                f.origin = path.string();
                return f;
            }
        }
        if (opts_.vendored_dir) {
            auto path = *opts_.vendored_dir / bfile_name(kind);
            if (std::filesystem::exists(path)) return from_file(path, id, BFileSource::Cache);
        }
        if (opts_.offline || !opts_.fetcher)
            throw OfflineError("no local copy of " + bfile_name(kind) + " and network access is disabled");
        std::string url = bfile_url(kind);
        std::string bytes = opts_.fetcher(url);
        BFile f = parse_bfile(bytes, id);
        f.source = BFileSource::Remote;
        f.origin = url;
        if (opts_.cache_dir) store(kind, bytes, url);
        return f;
    }

private:
    static std::string read_file(const std::filesystem::path& p) {
        std::ifstream in(p, std::ios::binary);
        if (!in) throw std::runtime_error("cannot read " + p.string());
        std::ostringstream ss;
        ss << in.rdbuf();
        return ss.str();
    }

    static BFile from_file(const std::filesystem::path& p, const std::string& id, BFileSource src) {
        BFile f = parse_bfile(read_file(p), id);
        f.source = src;
        f.origin = p.string();
        return f;
    }

    nlohmann::json read_manifest() const {
        auto path = *opts_.cache_dir / "manifest.json";
        if (!std::filesystem::exists(path)) return nlohmann::json::object();
        return nlohmann::json::parse(read_file(path));
    }

    void store(SequenceKind kind, const std::string& bytes, const std::string& url) const {
        std::filesystem::create_directories(*opts_.cache_dir);
        {
            std::ofstream out(*opts_.cache_dir / bfile_name(kind), std::ios::binary);
            out << bytes;
        }
        auto manifest = read_manifest();
        manifest[sequence_id(kind)] = {{"file", bfile_name(kind)}, {"crc32", crc32_hex(bytes)}, {"url", url}};
        std::ofstream out(*opts_.cache_dir / "manifest.json", std::ios::binary);
        out << manifest.dump(2) << '\n';
    }

    Options opts_;
};

/// Generated values in b-file indexing: Markov from 1, Fibonacci and Pell from 0.
inline std::map<long, Integer> generated_prefix(SequenceKind kind, std::size_t n) {
    std::map<long, Integer> out;
    if (kind == SequenceKind::Markov) {
        auto ms = markov_numbers(n);
        for (std::size_t i = 0; i < ms.size(); ++i) out.emplace(static_cast<long>(i + 1), ms[i]);
        return out;
    }
    Integer prev = 0, cur = 1;
    for (std::size_t i = 0; i < n; ++i) {
        out.emplace(static_cast<long>(i), prev);
        Integer next = kind == SequenceKind::Fibonacci ? Integer(cur + prev) : Integer(2 * cur + prev);
        prev = std::move(cur);
        cur = std::move(next);
    }
    return out;
}

struct CrossCheckReport {
    SequenceKind kind{};
    std::size_t compared = 0;
    bool match = false;
    struct Mismatch {
        long index;
        std::string expected;  // file
        std::string actual;    // generated
    };
    std::optional<Mismatch> first_mismatch;
    std::string origin;
};

/// Compares the first n generated terms with the b-file prefix.
inline CrossCheckReport cross_check(SequenceKind kind, std::size_t n, const BFile& file) {
    if (file.entries.size() < n)
        throw DomainError("cross_check: " + file.sequence_id + " has only " + std::to_string(file.entries.size()) +
                          " entries, " + std::to_string(n) + " requested");
    CrossCheckReport rep;
    rep.kind = kind;
    rep.origin = file.origin;
    auto gen = generated_prefix(kind, n);
    auto fit = file.entries.begin();
    for (auto& [idx, value] : gen) {
        ++rep.compared;
        if (fit->first != idx || fit->second != value) {
            rep.first_mismatch = CrossCheckReport::Mismatch{idx, fit->second.str(), value.str()};
            break;
        }
        ++fit;
    }
    rep.match = !rep.first_mismatch.has_value();
    return rep;
}

inline CrossCheckReport cross_check(SequenceKind kind, std::size_t n, const BFileStore& store) {
    return cross_check(kind, n, store.load(kind));
}

}  // namespace mbl

#include "mbl/ingest.hpp"

#include <gtest/gtest.h>

#include <fstream>

using namespace mbl;
namespace fs = std::filesystem;

namespace {

const fs::path data_dir = fs::path(MBL_DATA_DIR);

BFileStore vendored() {
    BFileStore::Options o;
    o.vendored_dir = data_dir;
    return BFileStore(std::move(o));
}

// Fresh directory removed on scope exit.
struct TempDir {
    fs::path path;
    TempDir() {
        path = fs::temp_directory_path() /
               ("mbl-test-" + std::to_string(::testing::UnitTest::GetInstance()->random_seed()) + "-" +
                ::testing::UnitTest::GetInstance()->current_test_info()->name());
        fs::remove_all(path);
        fs::create_directories(path);
    }
    ~TempDir() { fs::remove_all(path); }
    TempDir(const TempDir&) = delete;
    TempDir& operator=(const TempDir&) = delete;
};

const std::string tiny = "# A002559\n1 1\n2 2\n3 5\n4 13\n5 29\n";

}  // namespace

TEST(SequenceKind, Names) {
    EXPECT_EQ(sequence_id(SequenceKind::Markov), "A002559");
    EXPECT_EQ(bfile_name(SequenceKind::Fibonacci), "b000045.txt");
    EXPECT_EQ(bfile_url(SequenceKind::Pell), "https://oeis.org/A000129/b000129.txt");
    EXPECT_EQ(parse_sequence_kind("markov"), SequenceKind::Markov);
    EXPECT_EQ(parse_sequence_kind("A000129"), SequenceKind::Pell);
    EXPECT_THROW(parse_sequence_kind("lucas"), std::invalid_argument);
}

TEST(ParseBFile, Examples) {
    BFile f = parse_bfile(tiny, "A002559");
    ASSERT_EQ(f.entries.size(), 5u);
    EXPECT_EQ(f.entries.at(5), 29);
    BFile crlf = parse_bfile("# c\r\n\r\n0 0\r\n1 1\r\n2 1\r\n", "A000045");
    EXPECT_EQ(crlf.entries.size(), 3u);
    EXPECT_EQ(crlf.entries.at(2), 1);
    BFile big = parse_bfile("1 123456789012345678901234567890\n");
    EXPECT_EQ(big.entries.at(1).str(), "123456789012345678901234567890");
}

TEST(ParseBFile, ErrorsCarryLineNumbers) {
    try {
        parse_bfile("1 1\n2 x\n");
        FAIL();
    } catch (const ParseError& e) {
        EXPECT_EQ(e.line(), 2u);
    }
    EXPECT_THROW(parse_bfile("1 1 1\n"), ParseError);
    EXPECT_THROW(parse_bfile("2 1\n1 1\n"), ParseError);
    EXPECT_THROW(parse_bfile("1 1\n1 2\n"), ParseError);
    EXPECT_THROW(parse_bfile("1\n"), ParseError);
}

TEST(Crc32, KnownValue) { EXPECT_EQ(crc32_hex("123456789"), "cbf43926"); }

TEST(GeneratedPrefix, Indexing) {
    auto fib = generated_prefix(SequenceKind::Fibonacci, 30);
    EXPECT_EQ(fib.at(0), 0);
    EXPECT_EQ(fib.at(27), 196418);
    auto pell = generated_prefix(SequenceKind::Pell, 20);
    EXPECT_EQ(pell.at(15), 195025);
    auto mk = generated_prefix(SequenceKind::Markov, 34);
    EXPECT_EQ(mk.at(1), 1);
    EXPECT_EQ(mk.at(34), 196418);
}

TEST(CrossCheck, VendoredFiles) {
    auto store = vendored();
    auto m = cross_check(SequenceKind::Markov, 500, store);
    EXPECT_TRUE(m.match);
    EXPECT_EQ(m.compared, 500u);
    EXPECT_TRUE(cross_check(SequenceKind::Fibonacci, 1000, store).match);
    EXPECT_TRUE(cross_check(SequenceKind::Pell, 1000, store).match);
    auto fib = store.load(SequenceKind::Fibonacci);
    auto pell = store.load(SequenceKind::Pell);
    auto mk = store.load(SequenceKind::Markov);
    EXPECT_EQ(fib.entries.at(27), mk.entries.at(34));
    EXPECT_EQ(pell.entries.at(15), mk.entries.at(33));
    EXPECT_EQ(mk.source, BFileSource::Cache);
}

TEST(CrossCheck, ReportsFirstMismatchAndShortFiles) {
    BFile f = parse_bfile("1 1\n2 2\n3 6\n4 13\n");
    auto rep = cross_check(SequenceKind::Markov, 4, f);
    EXPECT_FALSE(rep.match);
    ASSERT_TRUE(rep.first_mismatch.has_value());
    EXPECT_EQ(rep.first_mismatch->index, 3);
    EXPECT_EQ(rep.first_mismatch->expected, "6");
    EXPECT_EQ(rep.first_mismatch->actual, "5");
    EXPECT_THROW(cross_check(SequenceKind::Markov, 10, f), DomainError);
}

TEST(BFileStore, OfflineWithoutCopiesFails) {
    BFileStore store(BFileStore::Options{});
    EXPECT_THROW(store.load(SequenceKind::Markov), OfflineError);
    BFileStore::Options o;
    o.fetcher = [](const std::string&) -> std::string { throw std::logic_error("must not be called"); };
    o.offline = true;
    EXPECT_THROW(BFileStore(o).load(SequenceKind::Markov), OfflineError);
}

TEST(BFileStore, FetchPopulatesCacheWithManifest) {
    TempDir dir;
    int calls = 0;
    BFileStore::Options o;
    o.cache_dir = dir.path;
    o.offline = false;
    o.fetcher = [&](const std::string& url) {
        ++calls;
        EXPECT_EQ(url, bfile_url(SequenceKind::Markov));
        return tiny;
    };
    BFileStore store(o);
    BFile first = store.load(SequenceKind::Markov);
    EXPECT_EQ(first.source, BFileSource::Remote);
    EXPECT_EQ(calls, 1);
    ASSERT_TRUE(fs::exists(dir.path / "b002559.txt"));
    std::ifstream in(dir.path / "manifest.json");
    auto manifest = nlohmann::json::parse(in);
    EXPECT_EQ(manifest["A002559"]["crc32"], crc32_hex(tiny));
    EXPECT_EQ(manifest["A002559"]["file"], "b002559.txt");

    BFile second = store.load(SequenceKind::Markov);
    EXPECT_EQ(second.source, BFileSource::Cache);
    EXPECT_EQ(calls, 1);
    EXPECT_EQ(second.entries, first.entries);
}

TEST(BFileStore, ChecksumMismatchIsRejected) {
    TempDir dir;
    BFileStore::Options o;
    o.cache_dir = dir.path;
    o.offline = false;
    o.fetcher = [](const std::string&) { return tiny; };
    BFileStore(o).load(SequenceKind::Markov);
    std::ofstream(dir.path / "b002559.txt") << "# A002559\n1 1\n2 2\n3 5\n4 13\n5 28\n";
    EXPECT_THROW(BFileStore(o).load(SequenceKind::Markov), std::runtime_error);
}

TEST(BFileStore, LocalPathTakesPrecedence) {
    TempDir dir;
    fs::path p = dir.path / "mine.txt";
    std::ofstream(p) << tiny;
    BFileStore::Options o;
    o.vendored_dir = data_dir;
    o.local_paths[SequenceKind::Markov] = p;
    BFile f = BFileStore(o).load(SequenceKind::Markov);
    EXPECT_EQ(f.source, BFileSource::LocalPath);
    EXPECT_EQ(f.entries.size(), 5u);
    EXPECT_EQ(f.origin, p.string());
}

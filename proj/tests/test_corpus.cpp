#include <gtest/gtest.h>

#include <fstream>

#include "kgforge/corpus.hpp"
#include "support/paths.hpp"

using namespace kgforge;
using testsupport::TempDir;

namespace {

std::string write_corpus(const TempDir& dir, const std::string& content) {
    std::string path = (dir.path() / "corpus.jsonl").string();
    std::ofstream out(path, std::ios::binary);
    out << content;
    return path;
}

const char* kThreeRecords =
    R"({"id": "AC-1", "category": "air conditioners", "description": "Split unit, 12000 BTU/h."})"
    "\n"
    R"({"id": "AC-2", "category": "air conditioners", "description": "Window unit, 9000 BTU/h."})"
    "\n"
    R"({"id": "HT-1", "category": "heaters", "description": "Oil radiator, 2 kW.", "source": "feed-7"})"
    "\n";

}  // namespace

TEST(LoadCorpus, ThreeValidLines) {
    TempDir dir("corpus");
    Corpus c = load_corpus(write_corpus(dir, kThreeRecords));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.records()[0].id, "AC-1");
    EXPECT_EQ(c.records()[2].source, "feed-7");
    EXPECT_EQ(c.category_size("air conditioners"), 2u);
    EXPECT_EQ(c.category_size("heaters"), 1u);
}

TEST(LoadCorpus, EmptyFile) {
    TempDir dir("corpus");
    Corpus c = load_corpus(write_corpus(dir, ""));
    EXPECT_TRUE(c.empty());
}

TEST(LoadCorpus, DuplicateIdReportsLineNumber) {
    TempDir dir("corpus");
    std::string path = write_corpus(
        dir,
        R"({"id": "AC-1", "category": "c", "description": "first"})"
        "\n"
        R"({"id": "AC-1", "category": "c", "description": "second"})"
        "\n");
    try {
        load_corpus(path);
        FAIL() << "expected IngestError";
    } catch (const IngestError& e) {
        EXPECT_EQ(e.line, 2);
        EXPECT_NE(e.reason.find("duplicate id"), std::string::npos);
    }
}

TEST(LoadCorpus, MalformedJsonReportsLineNumber) {
    TempDir dir("corpus");
    std::string path = write_corpus(dir,
                                    R"({"id": "AC-1", "category": "c", "description": "ok"})"
                                    "\nnot json\n");
    try {
        load_corpus(path);
        FAIL() << "expected IngestError";
    } catch (const IngestError& e) {
        EXPECT_EQ(e.line, 2);
    }
}

TEST(LoadCorpus, MissingFieldRejected) {
    TempDir dir("corpus");
    EXPECT_THROW(load_corpus(write_corpus(dir, R"({"id": "AC-1", "category": "c"})" "\n")),
                 IngestError);
    EXPECT_THROW(
        load_corpus(write_corpus(dir, R"({"id": "", "category": "c", "description": "d"})" "\n")),
        IngestError);
    EXPECT_THROW(
        load_corpus(write_corpus(
            dir, R"({"id": "AC-1", "category": "c", "description": "   "})" "\n")),
        IngestError);
}

TEST(LoadCorpus, BlankLinesSkippedAndOrderPreserved) {
    TempDir dir("corpus");
    std::string content = std::string(kThreeRecords) + "\n   \n";
    Corpus c = load_corpus(write_corpus(dir, content));
    ASSERT_EQ(c.size(), 3u);
    EXPECT_EQ(c.records()[0].id, "AC-1");
    EXPECT_EQ(c.records()[1].id, "AC-2");
    EXPECT_EQ(c.records()[2].id, "HT-1");
}

TEST(LoadCorpus, ReloadYieldsEqualCorpus) {
    TempDir dir("corpus");
    std::string path = write_corpus(dir, kThreeRecords);
    EXPECT_EQ(load_corpus(path), load_corpus(path));
}

TEST(SampleProducts, ZeroCount) {
    TempDir dir("corpus");
    Corpus c = load_corpus(write_corpus(dir, kThreeRecords));
    EXPECT_TRUE(sample_products(c, "air conditioners", 0, 1).empty());
}

TEST(SampleProducts, RequestBeyondCategorySizeReturnsAllOnce) {
    TempDir dir("corpus");
    Corpus c = load_corpus(write_corpus(dir, kThreeRecords));
    auto sample = sample_products(c, "air conditioners", 10, 1);
    ASSERT_EQ(sample.size(), 2u);
    EXPECT_NE(sample[0].id, sample[1].id);
    for (const auto& p : sample) EXPECT_EQ(p.category, "air conditioners");
}

TEST(SampleProducts, SameSeedSameResult) {
    TempDir dir("corpus");
    std::string lines;
    for (int i = 0; i < 40; ++i) {
        lines += R"({"id": "AC-)" + std::to_string(i) + R"(", "category": "ac", "description": "unit )" +
                 std::to_string(i) + "\"}\n";
    }
    Corpus c = load_corpus(write_corpus(dir, lines));

    auto a = sample_products(c, "ac", 10, 99);
    auto b = sample_products(c, "ac", 10, 99);
    EXPECT_EQ(a, b);

    auto other = sample_products(c, "ac", 10, 100);
    EXPECT_NE(a, other);  // astronomically unlikely to collide

    // prefix property: a smaller sample is a prefix of a larger one
    auto small = sample_products(c, "ac", 5, 99);
    ASSERT_EQ(small.size(), 5u);
    for (size_t i = 0; i < small.size(); ++i) EXPECT_EQ(small[i], a[i]);

    // no duplicates
    std::set<std::string> ids;
    for (const auto& p : a) ids.insert(p.id);
    EXPECT_EQ(ids.size(), a.size());
}

TEST(SampleProducts, UnknownCategoryThrows) {
    TempDir dir("corpus");
    Corpus c = load_corpus(write_corpus(dir, kThreeRecords));
    EXPECT_THROW(sample_products(c, "dishwashers", 3, 1), UnknownCategory);
    // but an empty corpus yields an empty sample, not an error
    Corpus empty;
    EXPECT_TRUE(sample_products(empty, "dishwashers", 3, 1).empty());
}

#include <doctest.h>

#include <set>

#include "sentiment/corpus.hpp"
#include "sentiment/csv.hpp"
#include "sentiment/error.hpp"
#include "test_support.hpp"

using namespace sentiment;

namespace {

Corpus numbered_corpus(std::size_t n) {
  Corpus c;
  for (std::size_t i = 0; i < n; ++i) {
    c.records.push_back({std::to_string(i), "tweet " + std::to_string(i), class_at(i % kNumClasses)});
  }
  return c;
}

ErrorCategory category_of(auto&& fn) {
  try {
    fn();
  } catch (const Error& e) {
    return e.category();
  }
  FAIL("expected sentiment::Error");
  return ErrorCategory::usage;
}

}  // namespace

TEST_CASE("polarity parsing accepts exactly three labels") {
  CHECK(parse_polarity("negative") == Polarity::negative);
  CHECK(parse_polarity(" neutral\r") == Polarity::neutral);
  CHECK(parse_polarity("positive") == Polarity::positive);
  CHECK_FALSE(parse_polarity("Positive").has_value());
  CHECK_FALSE(parse_polarity("mixed").has_value());
  CHECK_FALSE(parse_polarity("").has_value());
}

TEST_CASE("csv reader handles RFC-4180 quoting") {
  CsvReader reader("a,b,c\r\n\"x,1\",\"say \"\"hi\"\"\",\"line1\nline2\"\nlast,,\n");
  auto header = reader.next();
  REQUIRE(header);
  CHECK(header->fields == std::vector<std::string>{"a", "b", "c"});
  auto row = reader.next();
  REQUIRE(row);
  CHECK(row->line == 2);
  CHECK(row->fields == std::vector<std::string>{"x,1", "say \"hi\"", "line1\nline2"});
  auto last = reader.next();
  REQUIRE(last);
  CHECK(last->line == 4);
  CHECK(last->fields == std::vector<std::string>{"last", "", ""});
  CHECK_FALSE(reader.next().has_value());
}

TEST_CASE("csv reader rejects malformed quoting") {
  CHECK(category_of([] {
          CsvReader r("a\n\"open");
          r.next();
          r.next();
        }) == ErrorCategory::dataset);
  CHECK(category_of([] {
          CsvReader r("\"a\"x,b\n");
          r.next();
        }) == ErrorCategory::dataset);
  CHECK(category_of([] {
          CsvReader r("ab\"c,d\n");
          r.next();
        }) == ErrorCategory::dataset);
}

TEST_CASE("fixture loads 10 records in file order") {
  const Corpus c = load_dataset(test::fixture_csv());
  REQUIRE(c.size() == 10);
  // Hand-read labels of tests/data/airline_fixture.csv.
  const std::vector<Polarity> expected = {
      Polarity::negative, Polarity::positive, Polarity::neutral, Polarity::negative,
      Polarity::negative, Polarity::neutral,  Polarity::positive, Polarity::negative,
      Polarity::neutral,  Polarity::negative};
  for (std::size_t i = 0; i < c.size(); ++i) CHECK(c.records[i].label == expected[i]);
  CHECK(c.records[0].id == "100000000000000001");
  CHECK(c.records[3].text.find("\"Customer service\"") != std::string::npos);
  CHECK(c.records[4].text == "@USAirways cancelled flights\nand hours on hold #fail");
}

TEST_CASE("label frequencies") {
  SUBCASE("fixture hand tally") {
    const auto counts = label_frequencies(load_dataset(test::fixture_csv()));
    CHECK(counts[class_index(Polarity::negative)] == 5);
    CHECK(counts[class_index(Polarity::neutral)] == 3);
    CHECK(counts[class_index(Polarity::positive)] == 2);
  }
  SUBCASE("empty corpus has all three keys at zero") {
    const auto counts = label_frequencies(Corpus{});
    CHECK(counts == LabelCounts{0, 0, 0});
  }
  SUBCASE("counts sum to corpus size") {
    for (std::size_t n : {1u, 7u, 100u}) {
      const auto counts = label_frequencies(numbered_corpus(n));
      CHECK(counts[0] + counts[1] + counts[2] == n);
    }
  }
}

TEST_CASE("dataset errors") {
  const auto dir = test::scratch_dir("corpus-errors");

  SUBCASE("missing file") {
    CHECK(category_of([&] { load_dataset(dir / "nope.csv"); }) == ErrorCategory::io);
  }
  SUBCASE("header only gives an empty corpus") {
    test::spit(dir / "header.csv", "tweet_id,airline_sentiment,text\n");
    CHECK(load_dataset(dir / "header.csv").empty());
  }
  SUBCASE("missing column") {
    test::spit(dir / "cols.csv", "tweet_id,sentiment,text\n1,negative,hi\n");
    CHECK(category_of([&] { load_dataset(dir / "cols.csv"); }) == ErrorCategory::dataset);
  }
  SUBCASE("bad label names its row") {
    test::spit(dir / "label.csv", "airline_sentiment,text\nnegative,a\nangry,b\n");
    try {
      load_dataset(dir / "label.csv");
      FAIL("expected error");
    } catch (const Error& e) {
      CHECK(e.category() == ErrorCategory::dataset);
      CHECK(std::string(e.what()).find("row 2") != std::string::npos);
    }
  }
  SUBCASE("custom columns and row-number ids") {
    test::spit(dir / "custom.csv", "body,y\nhello,positive\nbye,negative\n");
    const auto c = load_dataset(dir / "custom.csv", "body", "y");
    REQUIRE(c.size() == 2);
    CHECK(c.records[1].id == "2");
    CHECK(c.records[1].label == Polarity::negative);
  }
}

TEST_CASE("train/test split sizes") {
  CHECK(train_size(14640, 0.75) == 10980);
  CHECK(14640 - train_size(14640, 0.75) == 3660);
  CHECK(train_size(10, 0.75) == 7);
  CHECK(train_size(100, 0.29) == 29);

  const auto all = train_test_split(numbered_corpus(25), {1.0, 3});
  CHECK(all.train.size() == 25);
  CHECK(all.test.empty());

  CHECK(category_of([] { train_test_split(Corpus{}, {}); }) == ErrorCategory::dataset);
  CHECK(category_of([] { train_test_split(numbered_corpus(3), {0.0, 1}); }) == ErrorCategory::config);
  CHECK(category_of([] { train_test_split(numbered_corpus(3), {1.5, 1}); }) == ErrorCategory::config);
}

TEST_CASE("split partition and determinism properties") {
  for (std::size_t n : {1u, 2u, 10u, 101u, 1000u}) {
    for (double ratio : {0.1, 0.5, 0.75, 0.99}) {
      for (std::uint64_t seed : {0ull, 42ull, 12345ull}) {
        const auto corpus = numbered_corpus(n);
        const auto a = train_test_split(corpus, {ratio, seed});
        CHECK(a.train.size() == train_size(n, ratio));
        std::multiset<std::string> ids;
        for (const auto& r : a.train.records) ids.insert(r.id);
        for (const auto& r : a.test.records) ids.insert(r.id);
        CHECK(ids.size() == n);
        CHECK(std::set<std::string>(ids.begin(), ids.end()).size() == n);

        const auto b = train_test_split(corpus, {ratio, seed});
        CHECK(a.train.records == b.train.records);
        CHECK(a.test.records == b.test.records);
      }
    }
  }
}

TEST_CASE("distinct seeds give distinct permutations") {
  const auto corpus = numbered_corpus(100);
  const auto a = train_test_split(corpus, {1.0, 1});
  const auto b = train_test_split(corpus, {1.0, 2});
  bool differs = false;
  for (std::size_t i = 0; i < 100; ++i) differs |= a.train.records[i].id != b.train.records[i].id;
  CHECK(differs);
}

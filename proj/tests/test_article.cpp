// SPDX-License-Identifier: Apache-2.0
#include "newscause/article.hpp"

#include <doctest.h>

#include <filesystem>
#include <string>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

using namespace newscause;

namespace {

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const char* name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const char* name) const { return (path / name).string(); }
};

Article make(const std::string& id, const std::string& date, const std::string& body) {
  Article a;
  a.id = id;
  a.date = parse_date(date);
  a.title = "title of " + id;
  a.body = body;
  a.source = "wire";
  a.domain = "surveillance";
  return a;
}

}  // namespace

TEST_SUITE("article") {

TEST_CASE("parse_date accepts day precision and truncates suffixes") {
  const Date d = parse_date("2013-06-09");
  CHECK(d.year == 2013);
  CHECK(d.month == 6);
  CHECK(d.day == 9);
  CHECK(parse_date("2013-06-09T12:34:56Z") == d);
  CHECK(format_date(d) == "2013-06-09");
}

TEST_CASE("parse_date validates calendar rules") {
  CHECK(parse_date("2000-02-29").day == 29);  // leap year
  CHECK_THROWS_AS(parse_date("1900-02-29"), Error);
  CHECK_THROWS_AS(parse_date("2013-13-01"), Error);
  CHECK_THROWS_AS(parse_date("2013-00-10"), Error);
  CHECK_THROWS_AS(parse_date("2013-04-31"), Error);
  CHECK_THROWS_AS(parse_date("13-04-01"), Error);
  CHECK_THROWS_AS(parse_date("not a date"), Error);
}

TEST_CASE("dates order correctly") {
  CHECK(parse_date("2012-12-31") < parse_date("2013-01-01"));
  CHECK(parse_date("2013-06-09") < parse_date("2013-06-10"));
}

TEST_CASE("validate_article enforces the field invariants") {
  CHECK_NOTHROW(validate_article(make("a1", "2013-06-09", "body")));
  Article bad = make("a1", "2013-06-09", "body");
  bad.id = "";
  CHECK_THROWS_AS(validate_article(bad), Error);
  bad = make("a1", "1849-12-31", "body");
  CHECK_THROWS_AS(validate_article(bad), Error);
  bad = make("a1", "2013-06-09", "  \t ");
  CHECK_THROWS_AS(validate_article(bad), Error);
}

TEST_CASE("corpus save and load round trip exactly") {
  TempDir dir("newscause_article_roundtrip");
  Corpus corpus;
  corpus.push_back(make("a1", "1995-01-02", "plain body"));
  corpus.push_back(make("a2", "1996-03-04", "body with \"quotes\" and, commas"));
  Article unicode = make("a3", "1997-05-06", "café résumé\nsecond line");
  unicode.title = "";
  corpus.push_back(unicode);

  const std::string path = dir.file("corpus.jsonl");
  save_corpus(path, corpus);
  const Corpus loaded = load_corpus(path);
  REQUIRE(loaded.size() == corpus.size());
  for (size_t i = 0; i < corpus.size(); ++i) CHECK(loaded[i] == corpus[i]);
}

TEST_CASE("empty corpus round trips to an empty file") {
  TempDir dir("newscause_article_empty");
  const std::string path = dir.file("empty.jsonl");
  save_corpus(path, {});
  CHECK(read_file(path).empty());
  CHECK(load_corpus(path).empty());
}

TEST_CASE("load_corpus names the offending line") {
  TempDir dir("newscause_article_badline");
  const std::string path = dir.file("bad.jsonl");
  write_file(path,
             "{\"body\":\"b\",\"date\":\"2001-01-01\",\"domain\":\"d\",\"id\":\"a1\","
             "\"source\":\"s\",\"title\":\"t\"}\n"
             "{\"body\":\"b\",\"date\":\"2001-99-01\",\"domain\":\"d\",\"id\":\"a2\","
             "\"source\":\"s\",\"title\":\"t\"}\n");
  CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("line 2"), Error);
}

TEST_CASE("load_corpus rejects duplicate ids") {
  TempDir dir("newscause_article_dup");
  const std::string path = dir.file("dup.jsonl");
  Corpus corpus;
  corpus.push_back(make("same", "2001-01-01", "one"));
  corpus.push_back(make("same", "2002-01-01", "two"));
  save_corpus(path, corpus);
  CHECK_THROWS_WITH_AS(load_corpus(path), doctest::Contains("duplicate article id"), Error);
}

TEST_CASE("labels load and join with the corpus") {
  TempDir dir("newscause_article_labels");
  const std::string path = dir.file("labels.jsonl");
  write_file(path,
             "{\"article_id\":\"a1\",\"rater_id\":\"r1\",\"relevant\":true}\n"
             "{\"article_id\":\"a1\",\"rater_id\":\"r2\",\"relevant\":false}\n"
             "{\"article_id\":\"a3\",\"rater_id\":\"r1\",\"relevant\":true}\n");
  const auto labels = load_labels(path);
  REQUIRE(labels.count("a1") == 1);
  CHECK(labels.at("a1").size() == 2);

  Corpus corpus;
  corpus.push_back(make("a1", "2001-01-01", "one"));
  corpus.push_back(make("a2", "2002-01-01", "two"));
  const auto joined = join_labels(corpus, labels);
  REQUIRE(joined.size() == 1);  // a2 unlabeled, a3 not in corpus
  CHECK(joined[0].article.id == "a1");
  CHECK(joined[0].labels.size() == 2);
}

TEST_CASE("duplicate rater ids for one article are rejected") {
  TempDir dir("newscause_article_dupr");
  const std::string path = dir.file("labels.jsonl");
  write_file(path,
             "{\"article_id\":\"a1\",\"rater_id\":\"r1\",\"relevant\":true}\n"
             "{\"article_id\":\"a1\",\"rater_id\":\"r1\",\"relevant\":false}\n");
  const auto labels = load_labels(path);
  Corpus corpus;
  corpus.push_back(make("a1", "2001-01-01", "one"));
  CHECK_THROWS_WITH_AS(join_labels(corpus, labels), doctest::Contains("duplicate rater"),
                       Error);
}

}

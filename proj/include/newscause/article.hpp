// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <compare>
#include <map>
#include <string>
#include <vector>

namespace newscause {

/// Calendar date at UTC day resolution.
struct Date {
  int year = 0;
  int month = 1;
  int day = 1;

  auto operator<=>(const Date&) const = default;
};

/// Parses "YYYY-MM-DD"; anything after the day (e.g. a time suffix) is
/// truncated. Throws on malformed or impossible dates.
Date parse_date(const std::string& text);
std::string format_date(const Date& d);

/// One dated news document with a domain tag.
struct Article {
  std::string id;
  Date date;
  std::string title;
  std::string body;
  std::string source;
  std::string domain;

  bool operator==(const Article&) const = default;
};

using Corpus = std::vector<Article>;

inline std::string article_text(const Article& a) {
  return a.title.empty() ? a.body : a.title + "\n" + a.body;
}

/// Checks the Article invariants: nonempty id, date within [1850, current
/// year], nonempty body after trimming. Throws Error on violation.
void validate_article(const Article& a);

/// JSONL persistence, one article per line with exactly the fields
/// {id, date, title, body, source, domain}. load(save(c)) == c.
void save_corpus(const std::string& path, const Corpus& corpus);
Corpus load_corpus(const std::string& path);

struct RaterLabel {
  std::string rater_id;
  bool relevant = false;

  bool operator==(const RaterLabel&) const = default;
};

struct LabeledArticle {
  Article article;
  std::vector<RaterLabel> labels;
};

/// Label file: JSONL records {article_id, rater_id, relevant}.
std::map<std::string, std::vector<RaterLabel>> load_labels(const std::string& path);

/// Joins a corpus with a label map; articles without labels are skipped.
/// Throws if an article carries duplicate rater ids.
std::vector<LabeledArticle> join_labels(
    const Corpus& corpus, const std::map<std::string, std::vector<RaterLabel>>& labels);

}  // namespace newscause

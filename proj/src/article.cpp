// SPDX-License-Identifier: Apache-2.0
#include "newscause/article.hpp"

#include <cctype>
#include <chrono>
#include <cstdio>
#include <set>
#include <sstream>

#include <nlohmann/json.hpp>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

namespace newscause {

namespace {

int current_year() {
  using namespace std::chrono;
  auto now = system_clock::now();
  std::time_t t = system_clock::to_time_t(now);
  std::tm tm{};
  gmtime_r(&t, &tm);
  return tm.tm_year + 1900;
}

bool all_digits(const std::string& s) {
  if (s.empty()) return false;
  for (char c : s)
    if (!std::isdigit(static_cast<unsigned char>(c))) return false;
  return true;
}

int days_in_month(int year, int month) {
  static const int days[] = {31, 28, 31, 30, 31, 30, 31, 31, 30, 31, 30, 31};
  if (month == 2) {
    bool leap = (year % 4 == 0 && year % 100 != 0) || year % 400 == 0;
    return leap ? 29 : 28;
  }
  return days[month - 1];
}

}  // namespace

Date parse_date(const std::string& text) {
  if (text.size() < 10 || text[4] != '-' || text[7] != '-')
    throw Error("unparseable date: '" + text + "'");
  std::string ys = text.substr(0, 4), ms = text.substr(5, 2), ds = text.substr(8, 2);
  if (!all_digits(ys) || !all_digits(ms) || !all_digits(ds))
    throw Error("unparseable date: '" + text + "'");
  Date d{std::stoi(ys), std::stoi(ms), std::stoi(ds)};
  if (d.month < 1 || d.month > 12 || d.day < 1 || d.day > days_in_month(d.year, d.month))
    throw Error("invalid date: '" + text + "'");
  return d;
}

std::string format_date(const Date& d) {
  char buf[16];
  std::snprintf(buf, sizeof(buf), "%04d-%02d-%02d", d.year, d.month, d.day);
  return buf;
}

void validate_article(const Article& a) {
  if (a.id.empty()) throw Error("article has empty id");
  int now = current_year();
  if (a.date.year < 1850 || a.date.year > now)
    throw Error("article " + a.id + ": date year " + std::to_string(a.date.year) +
                " outside [1850, " + std::to_string(now) + "]");
  if (trim(a.body).empty()) throw Error("article " + a.id + ": empty body");
}

void save_corpus(const std::string& path, const Corpus& corpus) {
  std::ostringstream out;
  for (const Article& a : corpus) {
    nlohmann::json j;
    j["id"] = a.id;
    j["date"] = format_date(a.date);
    j["title"] = a.title;
    j["body"] = a.body;
    j["source"] = a.source;
    j["domain"] = a.domain;
    out << j.dump() << '\n';
  }
  write_file(path, out.str());
}

Corpus load_corpus(const std::string& path) {
  Corpus corpus;
  std::set<std::string> seen_ids;
  auto lines = split_lines(read_file(path));
  for (size_t i = 0; i < lines.size(); ++i) {
    const std::string& line = lines[i];
    std::string where = path + " line " + std::to_string(i + 1);
    if (trim(line).empty()) continue;
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(line);
    } catch (const nlohmann::json::exception& e) {
      throw Error(where + ": malformed JSON: " + e.what());
    }
    Article a;
    try {
      a.id = j.at("id").get<std::string>();
      a.title = j.at("title").get<std::string>();
      a.body = j.at("body").get<std::string>();
      a.source = j.at("source").get<std::string>();
      a.domain = j.at("domain").get<std::string>();
      a.date = parse_date(j.at("date").get<std::string>());
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    } catch (const nlohmann::json::exception& e) {
      throw Error(where + ": missing or mistyped field: " + e.what());
    }
    try {
      validate_article(a);
    } catch (const Error& e) {
      throw Error(where + ": " + e.what());
    }
    if (!seen_ids.insert(a.id).second)
      throw Error(where + ": duplicate article id '" + a.id + "'");
    corpus.push_back(std::move(a));
  }
  return corpus;
}

std::map<std::string, std::vector<RaterLabel>> load_labels(const std::string& path) {
  std::map<std::string, std::vector<RaterLabel>> labels;
  auto lines = split_lines(read_file(path));
  for (size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::string where = path + " line " + std::to_string(i + 1);
    nlohmann::json j;
    try {
      j = nlohmann::json::parse(lines[i]);
    } catch (const nlohmann::json::exception& e) {
      throw Error(where + ": malformed JSON: " + e.what());
    }
    try {
      labels[j.at("article_id").get<std::string>()].push_back(
          {j.at("rater_id").get<std::string>(), j.at("relevant").get<bool>()});
    } catch (const nlohmann::json::exception& e) {
      throw Error(where + ": missing or mistyped field: " + e.what());
    }
  }
  return labels;
}

std::vector<LabeledArticle> join_labels(
    const Corpus& corpus, const std::map<std::string, std::vector<RaterLabel>>& labels) {
  std::vector<LabeledArticle> out;
  for (const Article& a : corpus) {
    auto it = labels.find(a.id);
    if (it == labels.end()) continue;
    std::set<std::string> raters;
    for (const RaterLabel& l : it->second)
      if (!raters.insert(l.rater_id).second)
        throw Error("article " + a.id + ": duplicate rater id '" + l.rater_id + "'");
    out.push_back({a, it->second});
  }
  return out;
}

}  // namespace newscause

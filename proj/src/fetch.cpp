// SPDX-License-Identifier: Apache-2.0
#include "newscause/fetch.hpp"

#include <algorithm>
#include <chrono>
#include <cstdio>
#include <thread>
#include <vector>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

namespace newscause {

using nlohmann::json;

namespace {

std::vector<std::string> split_path(const std::string& dotted) {
  std::vector<std::string> parts;
  std::string cur;
  for (char c : dotted) {
    if (c == '.') {
      if (!cur.empty()) parts.push_back(cur);
      cur.clear();
    } else {
      cur.push_back(c);
    }
  }
  if (!cur.empty()) parts.push_back(cur);
  return parts;
}

const json* descend(const json& root, const std::string& dotted) {
  const json* node = &root;
  for (const auto& key : split_path(dotted)) {
    if (!node->is_object()) return nullptr;
    auto it = node->find(key);
    if (it == node->end()) return nullptr;
    node = &*it;
  }
  return node;
}

std::string as_text(const json& value) {
  if (value.is_string()) return value.get<std::string>();
  if (value.is_number_integer()) return std::to_string(value.get<long long>());
  if (value.is_number_unsigned()) return std::to_string(value.get<unsigned long long>());
  return value.dump();
}

std::string encode_keyword(const std::string& keyword) {
  static const char hex[] = "0123456789ABCDEF";
  std::string out;
  for (unsigned char c : keyword) {
    const bool plain = (c >= 'a' && c <= 'z') || (c >= 'A' && c <= 'Z') ||
                       (c >= '0' && c <= '9') || c == '-' || c == '_' || c == '.' || c == '~';
    if (plain) {
      out.push_back(static_cast<char>(c));
    } else {
      out.push_back('%');
      out.push_back(hex[c >> 4]);
      out.push_back(hex[c & 0xF]);
    }
  }
  return out;
}

std::string page_url(const ApiSource& source, const std::string& keyword, int page) {
  std::string path = source.query_template;
  const std::string placeholder = "{keyword}";
  for (std::size_t at = path.find(placeholder); at != std::string::npos;
       at = path.find(placeholder)) {
    path.replace(at, placeholder.size(), encode_keyword(keyword));
  }
  path += (path.find('?') == std::string::npos) ? '?' : '&';
  path += source.page_param + "=" + std::to_string(page);
  return path;
}

}  // namespace

ApiSource load_api_source(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path + ": invalid source config: " + e.what());
  }
  if (!doc.is_object()) throw Error(path + ": source config must be a JSON object");
  ApiSource source;
  try {
    source.base_url = doc.at("base_url").get<std::string>();
    source.query_template = doc.at("query_template").get<std::string>();
    source.page_param = doc.at("page_param").get<std::string>();
    source.page_size = doc.at("page_size").get<int>();
    source.rate_limit = doc.at("rate_limit").get<int>();
    if (doc.contains("items_path")) source.items_path = doc.at("items_path").get<std::string>();
    for (const auto& [field, mapped] : doc.at("field_map").items()) {
      source.field_map[field] = mapped.get<std::string>();
    }
  } catch (const json::exception& e) {
    throw Error(path + ": invalid source config: " + e.what());
  }
  if (source.base_url.empty()) throw Error(path + ": base_url must be nonempty");
  if (source.query_template.find("{keyword}") == std::string::npos) {
    throw Error(path + ": query_template must contain {keyword}");
  }
  if (source.page_param.empty()) throw Error(path + ": page_param must be nonempty");
  if (source.page_size <= 0) throw Error(path + ": page_size must be positive");
  if (source.rate_limit <= 0) throw Error(path + ": rate_limit must be positive");
  for (const char* required : {"id", "date", "title", "body"}) {
    if (source.field_map.find(required) == source.field_map.end()) {
      throw Error(path + std::string(": field_map must cover '") + required + "'");
    }
  }
  return source;
}

FetchResult fetch_articles(const ApiSource& source, const std::string& keyword,
                           const std::string& domain, const FetchOptions& options) {
  if (options.from_year > options.to_year) throw Error("fetch_articles: empty year range");
  if (options.max_attempts < 1) throw Error("fetch_articles: max_attempts must be >= 1");

  httplib::Client client(source.base_url);
  client.set_connection_timeout(10, 0);
  client.set_read_timeout(30, 0);

  const auto interval = std::chrono::milliseconds(60000 / source.rate_limit);
  auto next_allowed = std::chrono::steady_clock::now();
  auto throttled_get = [&](const std::string& url) {
    const auto now = std::chrono::steady_clock::now();
    if (now < next_allowed) std::this_thread::sleep_for(next_allowed - now);
    next_allowed = std::chrono::steady_clock::now() + interval;
    return client.Get(url);
  };

  FetchResult result;
  std::map<std::string, std::size_t> seen;  // id -> index in result.articles

  for (int page = 1;; ++page) {
    const std::string url = page_url(source, keyword, page);
    const std::string page_name = "page " + std::to_string(page);

    httplib::Result res;
    int attempt = 0;
    int rate_sleeps = 0;
    for (;;) {
      res = throttled_get(url);
      if (res && res->status == 429) {
        // Server-side throttle: wait it out without burning a retry.
        if (++rate_sleeps > 120) throw Error(page_name + ": rate limited persistently");
        std::this_thread::sleep_for(interval);
        continue;
      }
      if (res && res->status >= 200 && res->status < 300) break;
      if (res && res->status >= 400 && res->status < 500) {
        throw Error(page_name + ": HTTP " + std::to_string(res->status));
      }
      // Connection failure or 5xx: bounded retries with linear backoff.
      if (++attempt >= options.max_attempts) {
        const std::string detail =
            res ? "HTTP " + std::to_string(res->status) : "connection failed";
        throw Error(page_name + ": " + detail + " after " +
                    std::to_string(options.max_attempts) + " attempts");
      }
      std::this_thread::sleep_for(std::chrono::milliseconds(options.backoff_ms * attempt));
    }
    result.pages_fetched += 1;

    json doc;
    try {
      doc = json::parse(res->body);
    } catch (const json::exception& e) {
      throw Error(page_name + ": malformed response JSON: " + e.what());
    }
    const json* items = source.items_path.empty() ? &doc : descend(doc, source.items_path);
    if (items == nullptr || !items->is_array()) {
      throw Error(page_name + ": no item array at '" + source.items_path + "'");
    }

    for (const auto& item : *items) {
      auto field = [&](const char* name) -> const json* {
        return descend(item, source.field_map.at(name));
      };
      const json* body = field("body");
      if (body == nullptr || !body->is_string() || trim(body->get<std::string>()).empty()) {
        result.dropped_no_body += 1;
        continue;
      }
      const json* id = field("id");
      if (id == nullptr || as_text(*id).empty()) {
        throw Error(page_name + ": item missing field 'id'");
      }
      const json* date = field("date");
      if (date == nullptr || !date->is_string()) {
        throw Error(page_name + ": item missing field 'date'");
      }
      Article article;
      article.id = as_text(*id);
      try {
        article.date = parse_date(date->get<std::string>());
      } catch (const Error& e) {
        throw Error(page_name + ": " + e.what());
      }
      const json* title = field("title");
      article.title = (title != nullptr && title->is_string()) ? title->get<std::string>() : "";
      article.body = body->get<std::string>();
      auto source_it = source.field_map.find("source");
      if (source_it != source.field_map.end()) {
        const json* src = descend(item, source_it->second);
        if (src != nullptr && src->is_string()) article.source = src->get<std::string>();
      }
      article.domain = domain;

      if (article.date.year < options.from_year || article.date.year > options.to_year) continue;
      if (seen.find(article.id) != seen.end()) continue;  // first occurrence wins
      seen.emplace(article.id, result.articles.size());
      result.articles.push_back(std::move(article));
    }

    if (items->size() < static_cast<std::size_t>(source.page_size)) break;
  }

  std::stable_sort(result.articles.begin(), result.articles.end(),
                   [](const Article& a, const Article& b) {
                     if (a.date != b.date) return a.date < b.date;
                     return a.id < b.id;
                   });
  return result;
}

}  // namespace newscause

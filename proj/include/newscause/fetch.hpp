// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <string>

#include "newscause/article.hpp"

namespace newscause {

/// Paginated JSON API endpoint description, loaded from a JSON config file.
struct ApiSource {
  std::string base_url;        // scheme://host[:port]
  std::string query_template;  // request path with a {keyword} placeholder
  std::string page_param;      // query parameter carrying the 1-based page number
  int page_size = 10;
  int rate_limit = 60;         // requests per minute
  std::string items_path;      // dotted path to the item array; empty means the root
  // article field -> dotted path inside one item; must cover id, date, title, body
  std::map<std::string, std::string> field_map;
};

ApiSource load_api_source(const std::string& path);

struct FetchOptions {
  int max_attempts = 3;  // per page, for connection failures and 5xx
  int backoff_ms = 250;
  int from_year = 1850;
  int to_year = 9999;
};

struct FetchResult {
  Corpus articles;
  std::size_t dropped_no_body = 0;
  std::size_t pages_fetched = 0;
};

/// Walks pages until one comes back empty or short, deduplicates by id, keeps
/// only articles dated inside [from_year, to_year], stamps each with `domain`,
/// and returns them sorted by (date, id). Requests are spaced to honor
/// rate_limit; HTTP 429 sleeps one interval and retries without consuming an
/// attempt.
FetchResult fetch_articles(const ApiSource& source, const std::string& keyword,
                           const std::string& domain, const FetchOptions& options = {});

}  // namespace newscause

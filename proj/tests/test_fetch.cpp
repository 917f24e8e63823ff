// SPDX-License-Identifier: Apache-2.0
#include "newscause/fetch.hpp"

#include <doctest.h>

#include <atomic>
#include <filesystem>
#include <string>
#include <thread>

#include <httplib.h>
#include <nlohmann/json.hpp>

#include "newscause/error.hpp"
#include "newscause/util.hpp"

using namespace newscause;

using doctest::Contains;
using nlohmann::json;

namespace {

struct TestServer {
  httplib::Server server;
  std::string base_url;
  std::thread thread;

  void start() {
    const int port = server.bind_to_any_port("127.0.0.1");
    REQUIRE(port > 0);
    thread = std::thread([this] { server.listen_after_bind(); });
    server.wait_until_ready();
    base_url = "http://127.0.0.1:" + std::to_string(port);
  }
  ~TestServer() {
    server.stop();
    if (thread.joinable()) thread.join();
  }
};

// fast-polling source so throttle and 429 sleeps stay around a millisecond
ApiSource quick_source(const std::string& base_url, int page_size = 2) {
  ApiSource src;
  src.base_url = base_url;
  src.query_template = "/search?q={keyword}";
  src.page_param = "page";
  src.page_size = page_size;
  src.rate_limit = 60000;
  src.field_map = {{"id", "id"}, {"date", "date"}, {"title", "title"}, {"body", "body"}};
  return src;
}

json item(const std::string& id, const std::string& date, const std::string& body) {
  return json{{"id", id}, {"date", date}, {"title", "title " + id}, {"body", body}};
}

FetchOptions quick_options() {
  FetchOptions options;
  options.backoff_ms = 1;
  return options;
}

struct TempDir {
  std::filesystem::path path;
  explicit TempDir(const char* name) {
    path = std::filesystem::temp_directory_path() / name;
    std::filesystem::remove_all(path);
    std::filesystem::create_directories(path);
  }
  ~TempDir() { std::filesystem::remove_all(path); }
  std::string file(const std::string& name, const std::string& content) const {
    const std::string p = (path / name).string();
    write_file(p, content);
    return p;
  }
};

}  // namespace

TEST_SUITE("fetch") {

TEST_CASE("pagination stops at the short page and sorts by date then id") {
  TestServer ts;
  ts.server.Get("/search", [](const httplib::Request& req, httplib::Response& res) {
    const std::string page = req.get_param_value("page");
    json body = json::array();
    if (page == "1") {
      body.push_back(item("b", "2013-05-02", "second body"));
      body.push_back(item("a", "2013-05-01", "first body"));
    } else if (page == "2") {
      body.push_back(item("c", "2012-12-31", "zeroth body"));
    }
    res.set_content(body.dump(), "application/json");
  });
  ts.start();

  const FetchResult got =
      fetch_articles(quick_source(ts.base_url), "privacy", "surveillance", quick_options());
  CHECK(got.pages_fetched == 2);
  CHECK(got.dropped_no_body == 0);
  REQUIRE(got.articles.size() == 3);
  CHECK(got.articles[0].id == "c");
  CHECK(got.articles[1].id == "a");
  CHECK(got.articles[2].id == "b");
  CHECK(got.articles[0].domain == "surveillance");
  CHECK(got.articles[1].title == "title a");
}

TEST_CASE("keyword lands url-encoded in the query string") {
  TestServer ts;
  std::string seen_query;
  ts.server.Get("/search", [&](const httplib::Request& req, httplib::Response& res) {
    seen_query = req.get_param_value("q");
    res.set_content("[]", "application/json");
  });
  ts.start();

  fetch_articles(quick_source(ts.base_url), "data privacy", "d", quick_options());
  CHECK(seen_query == "data privacy");  // httplib decodes %20 back for us
}

TEST_CASE("duplicate ids keep the first occurrence") {
  TestServer ts;
  ts.server.Get("/search", [](const httplib::Request& req, httplib::Response& res) {
    json body = json::array();
    if (req.get_param_value("page") == "1") {
      body.push_back(item("dup", "2013-05-01", "first version"));
      body.push_back(item("other", "2013-05-03", "other body"));
    } else {
      body.push_back(item("dup", "2013-05-02", "second version"));
    }
    res.set_content(body.dump(), "application/json");
  });
  ts.start();

  const FetchResult got =
      fetch_articles(quick_source(ts.base_url), "k", "d", quick_options());
  REQUIRE(got.articles.size() == 2);
  CHECK(got.articles[0].id == "dup");
  CHECK(got.articles[0].body == "first version");
}

TEST_CASE("persistent 5xx fails after bounded retries naming the page") {
  TestServer ts;
  std::atomic<int> page2_hits{0};
  ts.server.Get("/search", [&](const httplib::Request& req, httplib::Response& res) {
    if (req.get_param_value("page") == "2") {
      page2_hits += 1;
      res.status = 500;
      return;
    }
    json body = json::array();
    body.push_back(item("a", "2013-01-01", "body a"));
    body.push_back(item("b", "2013-01-02", "body b"));
    res.set_content(body.dump(), "application/json");
  });
  ts.start();

  FetchOptions options = quick_options();
  options.max_attempts = 3;
  CHECK_THROWS_WITH_AS(fetch_articles(quick_source(ts.base_url), "k", "d", options),
                       Contains("page 2: HTTP 500 after 3 attempts"), Error);
  CHECK(page2_hits == 3);
}

TEST_CASE("client errors fail immediately without retries") {
  TestServer ts;
  std::atomic<int> hits{0};
  ts.server.Get("/search", [&](const httplib::Request&, httplib::Response& res) {
    hits += 1;
    res.status = 404;
  });
  ts.start();

  CHECK_THROWS_WITH_AS(fetch_articles(quick_source(ts.base_url), "k", "d", quick_options()),
                       Contains("page 1: HTTP 404"), Error);
  CHECK(hits == 1);
}

TEST_CASE("429 waits out the throttle without consuming attempts") {
  TestServer ts;
  std::atomic<int> hits{0};
  ts.server.Get("/search", [&](const httplib::Request&, httplib::Response& res) {
    if (hits++ < 5) {
      res.status = 429;
      return;
    }
    res.set_content("[]", "application/json");
  });
  ts.start();

  FetchOptions options = quick_options();
  options.max_attempts = 1;  // any consumed attempt would abort
  const FetchResult got = fetch_articles(quick_source(ts.base_url), "k", "d", options);
  CHECK(got.pages_fetched == 1);
  CHECK(got.articles.empty());
  CHECK(hits == 6);
}

TEST_CASE("malformed response body names the page") {
  TestServer ts;
  ts.server.Get("/search", [](const httplib::Request&, httplib::Response& res) {
    res.set_content("this is not json", "application/json");
  });
  ts.start();

  CHECK_THROWS_WITH_AS(fetch_articles(quick_source(ts.base_url), "k", "d", quick_options()),
                       Contains("page 1: malformed response JSON"), Error);
}

TEST_CASE("items without a body are counted and dropped") {
  TestServer ts;
  ts.server.Get("/search", [](const httplib::Request&, httplib::Response& res) {
    json body = json::array();
    body.push_back(json{{"id", "x1"}, {"date", "2013-01-01"}, {"title", "no body at all"}});
    body.push_back(item("x2", "2013-01-02", "   "));
    body.push_back(item("x3", "2013-01-03", "a real body"));
    res.set_content(body.dump(), "application/json");
  });
  ts.start();

  const FetchResult got =
      fetch_articles(quick_source(ts.base_url, 4), "k", "d", quick_options());
  CHECK(got.dropped_no_body == 2);
  REQUIRE(got.articles.size() == 1);
  CHECK(got.articles[0].id == "x3");
}

TEST_CASE("items missing id or date abort with the page name") {
  TestServer ts;
  std::string mode = "no-id";
  ts.server.Get("/search", [&](const httplib::Request&, httplib::Response& res) {
    json entry;
    if (mode == "no-id") {
      entry = json{{"date", "2013-01-01"}, {"title", "t"}, {"body", "b"}};
    } else if (mode == "numeric-date") {
      entry = json{{"id", "x"}, {"date", 2013}, {"title", "t"}, {"body", "b"}};
    } else {
      entry = json{{"id", "x"}, {"date", "2013-13-01"}, {"title", "t"}, {"body", "b"}};
    }
    res.set_content(json::array({entry}).dump(), "application/json");
  });
  ts.start();

  const ApiSource src = quick_source(ts.base_url);
  CHECK_THROWS_WITH_AS(fetch_articles(src, "k", "d", quick_options()),
                       Contains("page 1: item missing field 'id'"), Error);
  mode = "numeric-date";
  CHECK_THROWS_WITH_AS(fetch_articles(src, "k", "d", quick_options()),
                       Contains("page 1: item missing field 'date'"), Error);
  mode = "bad-date";
  CHECK_THROWS_WITH_AS(fetch_articles(src, "k", "d", quick_options()),
                       Contains("page 1:"), Error);
}

TEST_CASE("year range filters articles after parsing") {
  TestServer ts;
  ts.server.Get("/search", [](const httplib::Request&, httplib::Response& res) {
    json body = json::array();
    body.push_back(item("old", "1990-06-01", "too early"));
    body.push_back(item("mid", "2013-06-01", "kept"));
    body.push_back(item("new", "2020-06-01", "too late"));
    res.set_content(body.dump(), "application/json");
  });
  ts.start();

  FetchOptions options = quick_options();
  options.from_year = 2000;
  options.to_year = 2015;
  const FetchResult got = fetch_articles(quick_source(ts.base_url, 4), "k", "d", options);
  REQUIRE(got.articles.size() == 1);
  CHECK(got.articles[0].id == "mid");

  options.from_year = 2015;
  options.to_year = 2000;
  CHECK_THROWS_WITH_AS(fetch_articles(quick_source(ts.base_url, 4), "k", "d", options),
                       Contains("empty year range"), Error);
}

TEST_CASE("nested item arrays and dotted field paths resolve") {
  TestServer ts;
  ts.server.Get("/search", [](const httplib::Request&, httplib::Response& res) {
    json doc;
    doc["response"]["docs"] = json::array(
        {json{{"ref", "n1"},
              {"when", "2013-02-03"},
              {"head", json{{"main", "headline"}}},
              {"content", json{{"text", "nested body"}}},
              {"byline", "the wire"}}});
    res.set_content(doc.dump(), "application/json");
  });
  ts.start();

  ApiSource src = quick_source(ts.base_url);
  src.items_path = "response.docs";
  src.field_map = {{"id", "ref"},
                   {"date", "when"},
                   {"title", "head.main"},
                   {"body", "content.text"},
                   {"source", "byline"}};
  const FetchResult got = fetch_articles(src, "k", "d", quick_options());
  REQUIRE(got.articles.size() == 1);
  CHECK(got.articles[0].id == "n1");
  CHECK(got.articles[0].title == "headline");
  CHECK(got.articles[0].body == "nested body");
  CHECK(got.articles[0].source == "the wire");

  src.items_path = "response.missing";
  CHECK_THROWS_WITH_AS(fetch_articles(src, "k", "d", quick_options()),
                       Contains("no item array at 'response.missing'"), Error);
}

TEST_CASE("source configs load and validate") {
  TempDir dir("newscause_fetch_cfg");
  const std::string good = dir.file("src.json", R"({
    "base_url": "http://example.test",
    "query_template": "/v1/search?q={keyword}",
    "page_param": "page",
    "page_size": 25,
    "rate_limit": 10,
    "items_path": "response.docs",
    "field_map": {"id": "ref", "date": "when", "title": "head", "body": "text"}
  })");
  const ApiSource src = load_api_source(good);
  CHECK(src.base_url == "http://example.test");
  CHECK(src.page_size == 25);
  CHECK(src.rate_limit == 10);
  CHECK(src.items_path == "response.docs");
  CHECK(src.field_map.at("body") == "text");

  CHECK_THROWS_WITH_AS(load_api_source(dir.file("broken.json", "{")),
                       Contains("invalid source config"), Error);
  CHECK_THROWS_WITH_AS(
      load_api_source(dir.file("nokw.json", R"({
        "base_url": "http://x", "query_template": "/search", "page_param": "p",
        "page_size": 5, "rate_limit": 10,
        "field_map": {"id": "i", "date": "d", "title": "t", "body": "b"}
      })")),
      Contains("must contain {keyword}"), Error);
  CHECK_THROWS_WITH_AS(
      load_api_source(dir.file("nobody.json", R"({
        "base_url": "http://x", "query_template": "/s?q={keyword}", "page_param": "p",
        "page_size": 5, "rate_limit": 10,
        "field_map": {"id": "i", "date": "d", "title": "t"}
      })")),
      Contains("field_map must cover 'body'"), Error);
  CHECK_THROWS_WITH_AS(
      load_api_source(dir.file("zero.json", R"({
        "base_url": "http://x", "query_template": "/s?q={keyword}", "page_param": "p",
        "page_size": 0, "rate_limit": 10,
        "field_map": {"id": "i", "date": "d", "title": "t", "body": "b"}
      })")),
      Contains("page_size must be positive"), Error);
}

}

// SPDX-License-Identifier: Apache-2.0
#include "newscause/pipeline.hpp"

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <map>
#include <optional>
#include <set>

#include <nlohmann/json.hpp>

#include "newscause/chart.hpp"
#include "newscause/cohesion.hpp"
#include "newscause/error.hpp"
#include "newscause/framing.hpp"
#include "newscause/granger.hpp"
#include "newscause/prenatal.hpp"
#include "newscause/util.hpp"
#include "newscause/vector_space.hpp"

namespace newscause {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

void require_exists(const std::string& path, const std::string& what) {
  if (!fs::exists(path)) throw Error(what + " path does not exist: " + path);
}

std::string replace_domain(std::string name, const std::string& domain) {
  const std::string placeholder = "$domain";
  for (std::size_t at = name.find(placeholder); at != std::string::npos;
       at = name.find(placeholder)) {
    name.replace(at, placeholder.size(), domain);
  }
  return name;
}

AnnualSeries similarity_series(const std::vector<CohesionResult>& results,
                               const std::string& name) {
  std::vector<AnnualPoint> points;
  for (const auto& r : results) {
    AnnualPoint p;
    p.year = r.year;
    p.value = r.mean_similarity;
    points.push_back(p);
  }
  return make_annual_series(name, "cosine", std::move(points), Provenance::corpus_derived);
}

// Collects artifacts and failures for one run; everything funnels through
// emit() so the manifest sees exactly what hit the disk.
struct Recorder {
  fs::path root;
  PipelineResult out;

  void emit(const std::string& relative, const std::string& content) {
    const fs::path full = root / fs::path(relative);
    fs::create_directories(full.parent_path());
    write_file(full.string(), content);
    out.artifacts.push_back(
        ArtifactRecord{relative, content.size(), fnv1a64_hex(content)});
  }

  void fail(const std::string& domain, const std::string& stage, const std::string& message) {
    out.failures.push_back(StageFailure{domain, stage, message});
  }

  // Runs one stage, converting any Error into a recorded failure.
  template <typename Fn>
  bool stage(const std::string& domain, const std::string& name, Fn&& fn) {
    try {
      fn();
      return true;
    } catch (const std::exception& e) {
      fail(domain, name, e.what());
      return false;
    }
  }
};

}  // namespace

RunConfig load_run_config(const std::string& path) {
  json doc;
  try {
    doc = json::parse(read_file(path));
  } catch (const json::exception& e) {
    throw Error(path + ": invalid run config: " + e.what());
  }
  if (!doc.is_object()) throw Error(path + ": run config must be a JSON object");

  RunConfig config;
  try {
    for (const auto& d : doc.at("domains")) {
      config.domains.push_back(
          DomainConfig{d.at("name").get<std::string>(), d.at("corpus").get<std::string>()});
    }
    if (doc.contains("external_series")) {
      for (const auto& s : doc.at("external_series")) {
        ExternalSeriesConfig entry;
        entry.name = s.at("name").get<std::string>();
        const std::string kind = s.at("kind").get<std::string>();
        if (kind == "trends") {
          entry.kind = ExternalKind::trends;
        } else if (kind == "approval") {
          entry.kind = ExternalKind::approval;
        } else if (kind == "generic") {
          entry.kind = ExternalKind::generic;
        } else {
          throw Error(path + ": unknown external series kind '" + kind + "'");
        }
        entry.path = s.at("path").get<std::string>();
        config.external_series.push_back(std::move(entry));
      }
    }
    config.lexicon_path = doc.at("lexicon").get<std::string>();
    config.events_path = doc.at("events").get<std::string>();
    config.edges_path = doc.at("edges").get<std::string>();
    if (doc.contains("stopwords")) config.stopwords_path = doc.at("stopwords").get<std::string>();
    if (doc.contains("alpha")) config.alpha = doc.at("alpha").get<double>();
    if (doc.contains("tau")) config.tau = doc.at("tau").get<double>();
    if (doc.contains("window")) config.window = doc.at("window").get<int>();
    if (doc.contains("lag")) config.lag = doc.at("lag").get<int>();
    if (doc.contains("max_lag")) config.max_lag = doc.at("max_lag").get<int>();
    if (doc.contains("difference")) config.difference = doc.at("difference").get<bool>();
    if (doc.contains("gram_order")) config.gram_order = doc.at("gram_order").get<int>();
    config.output_dir = doc.at("output_dir").get<std::string>();
    if (doc.contains("seed")) config.seed = doc.at("seed").get<std::uint64_t>();
  } catch (const json::exception& e) {
    throw Error(path + ": invalid run config: " + e.what());
  }

  if (config.domains.empty()) throw Error(path + ": at least one domain is required");
  if (!(config.alpha > 0.0 && config.alpha < 1.0)) {
    throw Error(path + ": alpha must be in (0, 1)");
  }
  if (config.window < 1) throw Error(path + ": window must be >= 1");
  if (config.lag < 0) throw Error(path + ": lag must be >= 0 (0 = automatic)");
  if (config.max_lag < 1) throw Error(path + ": max_lag must be >= 1");
  if (config.gram_order < 1 || config.gram_order > 3) {
    throw Error(path + ": gram_order must be 1, 2 or 3");
  }
  if (config.output_dir.empty()) throw Error(path + ": output_dir must be nonempty");

  std::set<std::string> domain_names;
  for (const auto& d : config.domains) {
    if (d.name.empty()) throw Error(path + ": domain name must be nonempty");
    if (!domain_names.insert(d.name).second) {
      throw Error(path + ": duplicate domain '" + d.name + "'");
    }
    require_exists(d.corpus_path, "corpus");
  }
  for (const auto& s : config.external_series) {
    if (s.name.empty()) throw Error(path + ": external series name must be nonempty");
    require_exists(s.path, "external series");
  }
  require_exists(config.lexicon_path, "lexicon");
  require_exists(config.events_path, "events");
  require_exists(config.edges_path, "edges");
  if (!config.stopwords_path.empty()) require_exists(config.stopwords_path, "stopwords");

  if (const char* env_seed = std::getenv("NEWSCAUSE_SEED")) {
    char* end = nullptr;
    const auto parsed = std::strtoull(env_seed, &end, 10);
    if (end == env_seed || *end != '\0') {
      throw Error("NEWSCAUSE_SEED must be an unsigned integer");
    }
    config.seed = parsed;
  }
  return config;
}

PipelineResult run_pipeline(const RunConfig& config) {
  Recorder rec;
  rec.root = fs::path(config.output_dir);
  fs::create_directories(rec.root);

  // shared inputs; a failed load disables the stages that need it
  std::optional<SentimentLexicon> lexicon;
  rec.stage("", "lexicon", [&] { lexicon = load_lexicon(config.lexicon_path); });
  std::optional<EventSeries> events;
  rec.stage("", "events", [&] { events = load_events_csv(config.events_path, "legislation"); });
  std::optional<std::vector<BatteryEdge>> edges;
  rec.stage("", "edges", [&] { edges = load_edges_json(config.edges_path); });
  std::set<std::string> stopwords;
  if (!config.stopwords_path.empty()) {
    rec.stage("", "stopwords", [&] { stopwords = load_stopwords(config.stopwords_path); });
  }
  std::map<std::string, AnnualSeries> externals;
  for (const auto& entry : config.external_series) {
    rec.stage("", "external:" + entry.name, [&] {
      externals.emplace(entry.name, load_series_csv(entry.path, entry.kind, entry.name));
    });
  }

  std::vector<EventMarker> event_markers;
  if (events) {
    for (const auto& e : events->events) {
      event_markers.push_back(EventMarker{e.date.year, e.label});
    }
  }

  for (const auto& domain : config.domains) {
    const std::string& name = domain.name;

    Corpus corpus;
    if (!rec.stage(name, "corpus", [&] { corpus = load_corpus(domain.corpus_path); })) {
      continue;
    }

    std::map<std::string, AnnualSeries> registry = externals;
    auto register_series = [&](const AnnualSeries& series) {
      registry.emplace(series.name, series);
    };

    std::optional<AnnualSeries> volume;
    rec.stage(name, "volume", [&] {
      volume = volume_series(corpus, name + ".volume");
      register_series(*volume);
      rec.emit(name + "/volume.csv", series_csv(*volume));
    });

    std::size_t dropped_unembeddable = 0;
    std::optional<AnnualSeries> similarity;
    rec.stage(name, "cohesion", [&] {
      FitOptions fit;
      fit.stopwords = stopwords;
      const VectorSpace space = fit_space(corpus, fit);
      Corpus embeddable;
      std::vector<DocVector> vectors;
      for (const auto& article : corpus) {
        try {
          vectors.push_back(embed(space, article));
          embeddable.push_back(article);
        } catch (const Error&) {
          ++dropped_unembeddable;
        }
      }
      CohesionOptions opts;
      opts.seed = config.seed;
      const auto results = annual_cohesion(embeddable, vectors, opts);
      rec.emit(name + "/cohesion.csv", cohesion_csv(results));
      similarity = similarity_series(results, name + ".similarity");
      register_series(*similarity);
    });

    rec.stage(name, "summary", [&] {
      json summary;
      summary["domain"] = name;
      summary["n_articles"] = corpus.size();
      summary["n_unembeddable_dropped"] = dropped_unembeddable;
      rec.emit(name + "/summary.json", summary.dump(2) + "\n");
    });

    std::vector<AnnualPolarity> polarity_rows;
    rec.stage(name, "polarity", [&] {
      if (!lexicon) throw Error("lexicon unavailable");
      polarity_rows = annual_polarity(corpus, *lexicon);
      rec.emit(name + "/polarity.csv", polarity_csv(polarity_rows));
      register_series(polarity_series(polarity_rows, name + ".polarity"));
      register_series(negativity_series(polarity_rows, name + ".negativity"));
    });

    rec.stage(name, "concentration", [&] {
      const auto results = annual_concentration(corpus, config.gram_order);
      rec.emit(name + "/concentration.csv", concentration_csv(results));
      register_series(concentration_series(results, name + ".concentration"));
    });

    std::optional<std::vector<PrenatalPeriod>> periods;
    rec.stage(name, "prenatal", [&] {
      if (!volume || !similarity) throw Error("volume or similarity series unavailable");
      periods = detect_prenatal(*volume, *similarity, config.tau, name);
      rec.emit(name + "/prenatal.json", prenatal_json(*periods));
    });

    rec.stage(name, "foreshadow", [&] {
      if (!periods) throw Error("prenatal stage did not produce periods");
      if (!events) throw Error("events unavailable");
      const auto report = foreshadowing(*periods, events->events, config.window);
      rec.emit(name + "/foreshadow.json", foreshadow_json(report));
      rec.emit(name + "/foreshadow_events.csv", foreshadow_csv(report));
    });

    rec.stage(name, "battery", [&] {
      if (!edges) throw Error("edges unavailable");
      std::vector<BatteryEdge> expanded;
      for (const auto& edge : *edges) {
        expanded.push_back(
            BatteryEdge{replace_domain(edge.cause, name), replace_domain(edge.effect, name)});
      }
      BatteryOptions opts;
      opts.alpha = config.alpha;
      if (config.lag > 0) opts.fixed_lag = config.lag;
      opts.max_lag = config.max_lag;
      opts.difference = config.difference;
      const auto battery = causal_battery(registry, expanded, opts);
      rec.emit(name + "/battery.json", battery_json(battery));
      rec.emit(name + "/battery.csv", battery_csv(battery));
    });

    rec.stage(name, "charts", [&] {
      if (!volume || !similarity) throw Error("volume or similarity series unavailable");
      ChartSpec joint;
      joint.title = name + ": news volume and cohesion (z-scores)";
      joint.series.push_back(ChartSeries{"volume z", zscore(*volume), ""});
      joint.series.push_back(ChartSeries{"similarity z", zscore(*similarity), ""});
      joint.markers = event_markers;
      rec.emit(name + "/charts/volume_similarity.svg", render_chart_svg(joint));

      if (!polarity_rows.empty()) {
        ChartSpec neg;
        neg.title = name + ": framing negativity";
        neg.series.push_back(
            ChartSeries{"negativity", negativity_series(polarity_rows, name + ".negativity"), ""});
        rec.emit(name + "/charts/negativity.svg", render_chart_svg(neg));
      }

      auto concentration_it = registry.find(name + ".concentration");
      if (concentration_it != registry.end()) {
        ChartSpec conc;
        conc.title = name + ": framing concentration (keywords for 97% divergence)";
        conc.series.push_back(ChartSeries{"k97", concentration_it->second, ""});
        rec.emit(name + "/charts/concentration.svg", render_chart_svg(conc));
      }
    });
  }

  std::sort(rec.out.artifacts.begin(), rec.out.artifacts.end(),
            [](const ArtifactRecord& a, const ArtifactRecord& b) { return a.path < b.path; });
  std::sort(rec.out.failures.begin(), rec.out.failures.end(),
            [](const StageFailure& a, const StageFailure& b) {
              if (a.domain != b.domain) return a.domain < b.domain;
              return a.stage < b.stage;
            });

  json manifest;
  manifest["parameters"] = {
      {"alpha", round_real12(config.alpha)},
      {"tau", round_real12(config.tau)},
      {"window", config.window},
      {"lag", config.lag},
      {"max_lag", config.max_lag},
      {"difference", config.difference},
      {"gram_order", config.gram_order},
      {"seed", config.seed},
  };
  json artifacts = json::array();
  for (const auto& a : rec.out.artifacts) {
    artifacts.push_back({{"path", a.path}, {"bytes", a.bytes}, {"fnv1a64", a.fnv1a64}});
  }
  manifest["artifacts"] = std::move(artifacts);
  json failures = json::array();
  for (const auto& f : rec.out.failures) {
    failures.push_back({{"domain", f.domain}, {"stage", f.stage}, {"message", f.message}});
  }
  manifest["failures"] = std::move(failures);

  const fs::path manifest_path = rec.root / "manifest.json";
  write_file(manifest_path.string(), manifest.dump(2) + "\n");

  rec.out.manifest_path = manifest_path.string();
  rec.out.exit_code = rec.out.failures.empty() ? 0 : 1;
  return rec.out;
}

}  // namespace newscause

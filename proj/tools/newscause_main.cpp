// SPDX-License-Identifier: Apache-2.0
#include <cstdio>
#include <filesystem>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "newscause/chart.hpp"
#include "newscause/cohesion.hpp"
#include "newscause/error.hpp"
#include "newscause/fetch.hpp"
#include "newscause/framing.hpp"
#include "newscause/granger.hpp"
#include "newscause/pipeline.hpp"
#include "newscause/prenatal.hpp"
#include "newscause/relevance.hpp"
#include "newscause/series.hpp"
#include "newscause/util.hpp"
#include "newscause/vector_space.hpp"

namespace {

using namespace newscause;

void write_or_print(const std::string& out_path, const std::string& content) {
  if (out_path.empty() || out_path == "-") {
    std::fputs(content.c_str(), stdout);
  } else {
    write_file(out_path, content);
  }
}

ExternalKind parse_kind(const std::string& kind) {
  if (kind == "trends") return ExternalKind::trends;
  if (kind == "approval") return ExternalKind::approval;
  if (kind == "generic") return ExternalKind::generic;
  throw Error("unknown series kind '" + kind + "' (expected trends, approval or generic)");
}

std::string stem_of(const std::string& path) {
  return std::filesystem::path(path).stem().string();
}

// ingest: fetch from a paginated API or revalidate an existing corpus file
struct IngestArgs {
  std::string source_path;
  std::string keyword;
  std::string domain;
  std::string in_path;
  std::string out_path;
  int from_year = 1850;
  int to_year = 9999;
  int max_attempts = 3;
  int backoff_ms = 250;
};

int cmd_ingest(const IngestArgs& args) {
  Corpus corpus;
  if (!args.in_path.empty()) {
    corpus = load_corpus(args.in_path);
    std::size_t dropped = 0;
    Corpus kept;
    for (auto& article : corpus) {
      if (article.date.year < args.from_year || article.date.year > args.to_year) {
        ++dropped;
        continue;
      }
      if (!args.domain.empty()) article.domain = args.domain;
      kept.push_back(std::move(article));
    }
    corpus = std::move(kept);
    std::printf("loaded %zu articles (%zu outside year range)\n", corpus.size(), dropped);
  } else {
    if (args.source_path.empty() || args.keyword.empty() || args.domain.empty()) {
      throw Error("ingest needs either --in, or --source with --keyword and --domain");
    }
    const ApiSource source = load_api_source(args.source_path);
    FetchOptions options;
    options.max_attempts = args.max_attempts;
    options.backoff_ms = args.backoff_ms;
    options.from_year = args.from_year;
    options.to_year = args.to_year;
    const FetchResult result = fetch_articles(source, args.keyword, args.domain, options);
    corpus = result.articles;
    std::printf("fetched %zu articles over %zu pages (%zu dropped for missing body)\n",
                corpus.size(), result.pages_fetched, result.dropped_no_body);
  }
  save_corpus(args.out_path, corpus);
  return 0;
}

// filter: naive-Bayes relevance filtering with optional self-training rounds
struct FilterArgs {
  std::string corpus_path;
  std::string labels_path;
  std::string out_path;
  double threshold = 0.5;
  int rounds = 1;
};

int cmd_filter(const FilterArgs& args) {
  if (args.rounds < 1) throw Error("--rounds must be >= 1");
  const Corpus corpus = load_corpus(args.corpus_path);
  const auto labels = load_labels(args.labels_path);
  const auto seed = join_labels(corpus, labels);
  if (seed.empty()) throw Error("no labeled articles found in the corpus");

  RelevanceModel model = train_relevance_filter(seed);
  for (int round = 2; round <= args.rounds; ++round) {
    // Pseudo-label the unlabeled remainder with the current model and
    // retrain on human plus model labels.
    std::vector<LabeledArticle> training = seed;
    for (const auto& article : corpus) {
      if (labels.find(article.id) != labels.end()) continue;
      const bool relevant = model.posterior(article) >= args.threshold;
      training.push_back(LabeledArticle{article, {RaterLabel{"model", relevant}}});
    }
    model = train_relevance_filter(training);
  }

  const Corpus kept = filter_corpus(model, corpus, args.threshold);
  save_corpus(args.out_path, kept);
  double heldin_precision = -1.0;
  try {
    heldin_precision = precision(model, seed, args.threshold);
  } catch (const Error&) {
  }
  std::printf("kept %zu of %zu articles (vocabulary %zu)", kept.size(), corpus.size(),
              model.vocabulary_size());
  if (heldin_precision >= 0.0) {
    std::printf(", training-set precision %s", format_real(heldin_precision, 4).c_str());
  }
  std::printf("\n");
  return 0;
}

// cohesion: per-year mean pairwise similarity
struct CohesionArgs {
  std::string corpus_path;
  std::string vectors_path;
  std::string stopwords_path;
  std::string out_path;
  int min_df = 2;
  std::int64_t exact_cap = 200000;
  std::int64_t sample_pairs = 1000000;
  std::uint64_t seed = 0;
};

int cmd_cohesion(const CohesionArgs& args) {
  const Corpus corpus = load_corpus(args.corpus_path);
  std::vector<DocVector> vectors;
  Corpus embeddable;
  if (!args.vectors_path.empty()) {
    vectors = import_vectors(args.vectors_path);
    embeddable = corpus;
  } else {
    FitOptions fit;
    fit.min_df = args.min_df;
    if (!args.stopwords_path.empty()) fit.stopwords = load_stopwords(args.stopwords_path);
    const VectorSpace space = fit_space(corpus, fit);
    std::size_t dropped = 0;
    for (const auto& article : corpus) {
      try {
        vectors.push_back(embed(space, article));
        embeddable.push_back(article);
      } catch (const Error&) {
        ++dropped;
      }
    }
    if (dropped > 0) std::fprintf(stderr, "dropped %zu unembeddable articles\n", dropped);
  }
  CohesionOptions options;
  options.exact_cap = args.exact_cap;
  options.sample_pairs = args.sample_pairs;
  options.seed = args.seed;
  const auto results = annual_cohesion(embeddable, vectors, options);
  write_or_print(args.out_path, cohesion_csv(results));
  return 0;
}

// series: volume extraction and simple transforms over series CSVs
struct SeriesArgs {
  std::string corpus_path;
  std::string in_path;
  std::string kind = "generic";
  std::string op = "none";
  std::string out_path;
};

int cmd_series(const SeriesArgs& args) {
  AnnualSeries series;
  if (!args.corpus_path.empty()) {
    series = volume_series(load_corpus(args.corpus_path), stem_of(args.corpus_path) + ".volume");
  } else if (!args.in_path.empty()) {
    series = load_series_csv(args.in_path, parse_kind(args.kind), stem_of(args.in_path));
  } else {
    throw Error("series needs --corpus or --in");
  }
  if (args.op == "zscore") {
    series = zscore(series);
  } else if (args.op == "difference") {
    series = difference(series);
  } else if (args.op != "none") {
    throw Error("unknown --op '" + args.op + "' (expected none, zscore or difference)");
  }
  write_or_print(args.out_path, series_csv(series));
  return 0;
}

// granger: one directed pair or a whole edge battery
struct GrangerArgs {
  std::string cause_path;
  std::string effect_path;
  std::vector<std::string> series_specs;  // name=path[:kind]
  std::string edges_path;
  std::string out_path;
  double alpha = 0.05;
  int lag = 0;
  int max_lag = 3;
  bool no_difference = false;
};

int cmd_granger(const GrangerArgs& args) {
  std::map<std::string, AnnualSeries> registry;
  std::vector<BatteryEdge> edges;
  if (!args.cause_path.empty() || !args.effect_path.empty()) {
    if (args.cause_path.empty() || args.effect_path.empty()) {
      throw Error("granger pair mode needs both --cause and --effect");
    }
    const std::string cause_name = stem_of(args.cause_path);
    const std::string effect_name = stem_of(args.effect_path);
    registry.emplace(cause_name,
                     load_series_csv(args.cause_path, ExternalKind::generic, cause_name));
    registry.emplace(effect_name,
                     load_series_csv(args.effect_path, ExternalKind::generic, effect_name));
    edges.push_back(BatteryEdge{cause_name, effect_name});
  } else {
    if (args.series_specs.empty() || args.edges_path.empty()) {
      throw Error("granger battery mode needs --series entries and --edges");
    }
    for (const auto& spec : args.series_specs) {
      const auto eq = spec.find('=');
      if (eq == std::string::npos) throw Error("--series expects name=path[:kind]");
      const std::string series_name = spec.substr(0, eq);
      std::string path = spec.substr(eq + 1);
      ExternalKind kind = ExternalKind::generic;
      const auto colon = path.rfind(':');
      if (colon != std::string::npos && path.find('/', colon) == std::string::npos) {
        kind = parse_kind(path.substr(colon + 1));
        path = path.substr(0, colon);
      }
      registry.emplace(series_name, load_series_csv(path, kind, series_name));
    }
    edges = load_edges_json(args.edges_path);
  }
  BatteryOptions options;
  options.alpha = args.alpha;
  if (args.lag > 0) options.fixed_lag = args.lag;
  options.max_lag = args.max_lag;
  options.difference = !args.no_difference;
  const BatteryResult battery = causal_battery(registry, edges, options);
  write_or_print(args.out_path, battery_json(battery));
  return 0;
}

// prenatal: joint elevation periods, optionally scored against events
struct PrenatalArgs {
  std::string volume_path;
  std::string similarity_path;
  std::string events_path;
  std::string domain;
  std::string out_path;
  std::string foreshadow_out;
  double tau = 1.0;
  int window = 3;
};

int cmd_prenatal(const PrenatalArgs& args) {
  const AnnualSeries volume =
      load_series_csv(args.volume_path, ExternalKind::generic, stem_of(args.volume_path));
  const AnnualSeries similarity =
      load_series_csv(args.similarity_path, ExternalKind::generic, stem_of(args.similarity_path));
  const auto periods = detect_prenatal(volume, similarity, args.tau, args.domain);
  write_or_print(args.out_path, prenatal_json(periods));
  if (!args.events_path.empty()) {
    const EventSeries events = load_events_csv(args.events_path);
    const auto report = foreshadowing(periods, events.events, args.window);
    write_or_print(args.foreshadow_out, foreshadow_json(report));
  }
  return 0;
}

// framing: polarity, concentration, and split-year keyword rankings
struct FramingArgs {
  std::string corpus_path;
  std::string lexicon_path;
  std::string polarity_out;
  std::string concentration_out;
  std::string keywords_out;
  int split_year = 0;
  int gram_order = 1;
  double threshold = 0.97;
  bool previous_year_only = false;
};

int cmd_framing(const FramingArgs& args) {
  const Corpus corpus = load_corpus(args.corpus_path);
  bool did_anything = false;
  if (!args.polarity_out.empty()) {
    if (args.lexicon_path.empty()) throw Error("--polarity-out needs --lexicon");
    const SentimentLexicon lexicon = load_lexicon(args.lexicon_path);
    write_or_print(args.polarity_out, polarity_csv(annual_polarity(corpus, lexicon)));
    did_anything = true;
  }
  if (!args.concentration_out.empty()) {
    const auto results = annual_concentration(corpus, args.gram_order, args.threshold,
                                              !args.previous_year_only);
    write_or_print(args.concentration_out, concentration_csv(results));
    did_anything = true;
  }
  if (!args.keywords_out.empty()) {
    if (args.split_year == 0) throw Error("--keywords-out needs --split-year");
    Corpus earlier;
    Corpus later;
    for (const auto& article : corpus) {
      (article.date.year < args.split_year ? earlier : later).push_back(article);
    }
    const auto ranking = entropic_keywords(earlier, later, args.gram_order);
    write_or_print(args.keywords_out, ranking_csv(ranking));
    did_anything = true;
  }
  if (!did_anything) {
    throw Error("framing needs at least one of --polarity-out, --concentration-out, "
                "--keywords-out");
  }
  return 0;
}

// report: human-readable summary of a finished pipeline run
int cmd_report(const std::string& dir) {
  namespace fs = std::filesystem;
  const fs::path manifest_path = fs::path(dir) / "manifest.json";
  if (!fs::exists(manifest_path)) {
    throw Error("no manifest.json under '" + dir + "'; run the pipeline first");
  }
  const auto manifest = nlohmann::json::parse(read_file(manifest_path.string()));
  std::printf("run directory: %s\n", dir.c_str());
  std::printf("artifacts: %zu\n", manifest.at("artifacts").size());
  const auto& failures = manifest.at("failures");
  std::printf("failed stages: %zu\n", failures.size());
  for (const auto& f : failures) {
    std::printf("  %s/%s: %s\n", f.at("domain").get<std::string>().c_str(),
                f.at("stage").get<std::string>().c_str(),
                f.at("message").get<std::string>().c_str());
  }
  for (const auto& artifact : manifest.at("artifacts")) {
    const std::string rel = artifact.at("path").get<std::string>();
    if (rel.size() < 13 || rel.substr(rel.size() - 13) != "/battery.json") continue;
    const auto battery = nlohmann::json::parse(read_file((fs::path(dir) / rel).string()));
    const std::string domain = rel.substr(0, rel.size() - 13);
    const auto& med_f = battery.at("median_f_stat");
    const auto& med_c = battery.at("median_critical_value");
    std::printf("%s battery: %zu edges, median F %s, median critical value %s\n",
                domain.c_str(), battery.at("edges").size(),
                med_f.is_null() ? "n/a" : format_real(med_f.get<double>(), 6).c_str(),
                med_c.is_null() ? "n/a" : format_real(med_c.get<double>(), 6).c_str());
  }
  for (const auto& artifact : manifest.at("artifacts")) {
    const std::string rel = artifact.at("path").get<std::string>();
    if (rel.size() < 15 || rel.substr(rel.size() - 15) != "/foreshadow.json") continue;
    const auto report = nlohmann::json::parse(read_file((fs::path(dir) / rel).string()));
    const std::string domain = rel.substr(0, rel.size() - 15);
    const auto& fraction = report.at("fraction");
    std::printf("%s foreshadowing: %llu of %llu events (%s)\n", domain.c_str(),
                static_cast<unsigned long long>(report.at("n_foreshadowed").get<std::uint64_t>()),
                static_cast<unsigned long long>(report.at("n_events").get<std::uint64_t>()),
                fraction.is_null() ? "undefined"
                                   : format_real(fraction.get<double>(), 4).c_str());
  }
  return 0;
}

// run: the whole pipeline from one config file
struct RunArgs {
  std::string config_path;
  std::string output_dir;
  double alpha = -1.0;
  double tau = -1e308;
  int window = 0;
  int lag = -1;
  int max_lag = 0;
  int gram_order = 0;
  int difference = -1;  // tri-state: unset / off / on
  long long seed = -1;
};

int cmd_run(const RunArgs& args) {
  RunConfig config = load_run_config(args.config_path);
  if (!args.output_dir.empty()) config.output_dir = args.output_dir;
  if (args.alpha >= 0.0) config.alpha = args.alpha;
  if (args.tau > -1e307) config.tau = args.tau;
  if (args.window > 0) config.window = args.window;
  if (args.lag >= 0) config.lag = args.lag;
  if (args.max_lag > 0) config.max_lag = args.max_lag;
  if (args.gram_order > 0) config.gram_order = args.gram_order;
  if (args.difference >= 0) config.difference = args.difference != 0;
  if (args.seed >= 0) config.seed = static_cast<std::uint64_t>(args.seed);

  const PipelineResult result = run_pipeline(config);
  std::printf("wrote %zu artifacts under %s\n", result.artifacts.size(),
              config.output_dir.c_str());
  for (const auto& failure : result.failures) {
    std::fprintf(stderr, "stage failed: %s/%s: %s\n", failure.domain.c_str(),
                 failure.stage.c_str(), failure.message.c_str());
  }
  std::printf("manifest: %s\n", result.manifest_path.c_str());
  return result.exit_code;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"news corpora to annual series, causality batteries and charts"};
  app.require_subcommand(1);

  IngestArgs ingest_args;
  auto* ingest = app.add_subcommand("ingest", "fetch or revalidate a corpus");
  ingest->add_option("--source", ingest_args.source_path, "API source config JSON");
  ingest->add_option("--keyword", ingest_args.keyword, "search keyword");
  ingest->add_option("--domain", ingest_args.domain, "domain tag to stamp");
  ingest->add_option("--in", ingest_args.in_path, "existing corpus JSONL to revalidate");
  ingest->add_option("--out", ingest_args.out_path, "output corpus JSONL")->required();
  ingest->add_option("--from-year", ingest_args.from_year, "earliest year kept");
  ingest->add_option("--to-year", ingest_args.to_year, "latest year kept");
  ingest->add_option("--max-attempts", ingest_args.max_attempts, "retries per page");
  ingest->add_option("--backoff-ms", ingest_args.backoff_ms, "retry backoff base");

  FilterArgs filter_args;
  auto* filter = app.add_subcommand("filter", "relevance-filter a corpus");
  filter->add_option("--in", filter_args.corpus_path, "corpus JSONL")->required();
  filter->add_option("--labels", filter_args.labels_path, "rater labels JSONL")->required();
  filter->add_option("--out", filter_args.out_path, "filtered corpus JSONL")->required();
  filter->add_option("--threshold", filter_args.threshold, "relevance posterior cutoff");
  filter->add_option("--rounds", filter_args.rounds, "training rounds (self-training after 1)");

  CohesionArgs cohesion_args;
  auto* cohesion = app.add_subcommand("cohesion", "annual mean pairwise similarity");
  cohesion->add_option("--in", cohesion_args.corpus_path, "corpus JSONL")->required();
  cohesion->add_option("--vectors", cohesion_args.vectors_path,
                       "precomputed document vectors (skips TF-IDF fit)");
  cohesion->add_option("--stopwords", cohesion_args.stopwords_path, "stopword list");
  cohesion->add_option("--min-df", cohesion_args.min_df, "minimum document frequency");
  cohesion->add_option("--exact-cap", cohesion_args.exact_cap,
                       "articles per year before switching to sampling");
  cohesion->add_option("--sample-pairs", cohesion_args.sample_pairs, "sampled pair count");
  cohesion->add_option("--seed", cohesion_args.seed, "sampling seed");
  cohesion->add_option("--out", cohesion_args.out_path, "output CSV (default stdout)");

  SeriesArgs series_args;
  auto* series = app.add_subcommand("series", "volume extraction and series transforms");
  series->add_option("--corpus", series_args.corpus_path, "corpus JSONL for volume");
  series->add_option("--in", series_args.in_path, "series CSV to transform");
  series->add_option("--kind", series_args.kind, "series kind: trends, approval, generic");
  series->add_option("--op", series_args.op, "transform: none, zscore, difference");
  series->add_option("--out", series_args.out_path, "output CSV (default stdout)");

  GrangerArgs granger_args;
  auto* granger = app.add_subcommand("granger", "directional causality tests");
  granger->add_option("--cause", granger_args.cause_path, "cause series CSV (pair mode)");
  granger->add_option("--effect", granger_args.effect_path, "effect series CSV (pair mode)");
  granger->add_option("--series", granger_args.series_specs,
                      "name=path[:kind] series registry entry (battery mode)");
  granger->add_option("--edges", granger_args.edges_path, "edge list JSON (battery mode)");
  granger->add_option("--alpha", granger_args.alpha, "significance level");
  granger->add_option("--lag", granger_args.lag, "fixed lag (0 = AIC selection)");
  granger->add_option("--max-lag", granger_args.max_lag, "AIC selection bound");
  granger->add_flag("--no-difference", granger_args.no_difference,
                    "test level series instead of first differences");
  granger->add_option("--out", granger_args.out_path, "output JSON (default stdout)");

  PrenatalArgs prenatal_args;
  auto* prenatal = app.add_subcommand("prenatal", "joint elevation periods and foreshadowing");
  prenatal->add_option("--volume", prenatal_args.volume_path, "volume series CSV")->required();
  prenatal->add_option("--similarity", prenatal_args.similarity_path, "similarity series CSV")
      ->required();
  prenatal->add_option("--tau", prenatal_args.tau, "z-score threshold");
  prenatal->add_option("--domain", prenatal_args.domain, "domain tag for periods");
  prenatal->add_option("--events", prenatal_args.events_path, "events CSV for foreshadowing");
  prenatal->add_option("--window", prenatal_args.window, "foreshadowing window, years");
  prenatal->add_option("--out", prenatal_args.out_path, "periods JSON (default stdout)");
  prenatal->add_option("--foreshadow-out", prenatal_args.foreshadow_out,
                       "foreshadow report JSON (default stdout)");

  FramingArgs framing_args;
  auto* framing = app.add_subcommand("framing", "polarity, concentration and keywords");
  framing->add_option("--corpus", framing_args.corpus_path, "corpus JSONL")->required();
  framing->add_option("--lexicon", framing_args.lexicon_path, "sentiment lexicon TSV");
  framing->add_option("--polarity-out", framing_args.polarity_out, "annual polarity CSV");
  framing->add_option("--concentration-out", framing_args.concentration_out,
                      "annual concentration CSV");
  framing->add_option("--keywords-out", framing_args.keywords_out, "keyword ranking CSV");
  framing->add_option("--split-year", framing_args.split_year,
                      "keyword split: earlier < year <= later");
  framing->add_option("--gram-order", framing_args.gram_order, "n-gram order (1-3)");
  framing->add_option("--threshold", framing_args.threshold, "concentration share threshold");
  framing->add_flag("--previous-year-only", framing_args.previous_year_only,
                    "compare each year against the previous year instead of all history");

  std::string report_dir;
  auto* report = app.add_subcommand("report", "summarize a finished run directory");
  report->add_option("--dir", report_dir, "pipeline output directory")->required();

  RunArgs run_args;
  auto* run = app.add_subcommand("run", "full pipeline from a config file");
  run->add_option("--config", run_args.config_path, "run config JSON")->required();
  run->add_option("--output-dir", run_args.output_dir, "override output directory");
  run->add_option("--alpha", run_args.alpha, "override significance level");
  run->add_option("--tau", run_args.tau, "override prenatal threshold");
  run->add_option("--window", run_args.window, "override foreshadowing window");
  run->add_option("--lag", run_args.lag, "override fixed lag (0 = AIC)");
  run->add_option("--max-lag", run_args.max_lag, "override AIC selection bound");
  run->add_option("--gram-order", run_args.gram_order, "override n-gram order");
  run->add_option("--difference", run_args.difference,
                  "override differencing: 0 = levels, 1 = first differences");
  run->add_option("--seed", run_args.seed, "override RNG seed");

  CLI11_PARSE(app, argc, argv);

  try {
    if (*ingest) return cmd_ingest(ingest_args);
    if (*filter) return cmd_filter(filter_args);
    if (*cohesion) return cmd_cohesion(cohesion_args);
    if (*series) return cmd_series(series_args);
    if (*granger) return cmd_granger(granger_args);
    if (*prenatal) return cmd_prenatal(prenatal_args);
    if (*framing) return cmd_framing(framing_args);
    if (*report) return cmd_report(report_dir);
    if (*run) return cmd_run(run_args);
  } catch (const std::exception& e) {
    std::fprintf(stderr, "error: %s\n", e.what());
    return 1;
  }
  return 0;
}

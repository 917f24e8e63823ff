// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "newscause/series.hpp"

namespace newscause {

struct DomainConfig {
  std::string name;
  std::string corpus_path;
};

struct ExternalSeriesConfig {
  std::string name;  // registry name used by battery edges
  ExternalKind kind = ExternalKind::generic;
  std::string path;
};

/// Full pipeline configuration, loaded from one JSON document. Every
/// referenced input path must exist at load time.
struct RunConfig {
  std::vector<DomainConfig> domains;
  std::vector<ExternalSeriesConfig> external_series;
  std::string lexicon_path;
  std::string events_path;
  std::string edges_path;
  std::string stopwords_path;  // optional
  double alpha = 0.05;
  double tau = 1.0;
  int window = 3;
  int lag = 0;  // 0 selects the lag by AIC up to max_lag
  int max_lag = 3;
  bool difference = true;
  int gram_order = 1;
  std::string output_dir;
  std::uint64_t seed = 0;
};

/// Parses and validates a config file. NEWSCAUSE_SEED in the environment
/// overrides the configured seed.
RunConfig load_run_config(const std::string& path);

struct ArtifactRecord {
  std::string path;  // relative to output_dir, '/'-separated
  std::uint64_t bytes = 0;
  std::string fnv1a64;
};

struct StageFailure {
  std::string domain;  // empty for shared inputs
  std::string stage;
  std::string message;
};

struct PipelineResult {
  int exit_code = 0;  // nonzero when any stage failed
  std::vector<ArtifactRecord> artifacts;
  std::vector<StageFailure> failures;
  std::string manifest_path;
};

/// Runs every stage for every domain, isolating failures per stage, and
/// writes a manifest listing each artifact with its content hash. Identical
/// config and seed produce byte-identical artifacts and manifest.
PipelineResult run_pipeline(const RunConfig& config);

}  // namespace newscause

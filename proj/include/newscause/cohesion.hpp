// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "newscause/article.hpp"
#include "newscause/vector_space.hpp"

namespace newscause {

enum class CohesionMethod { exact, sampled };

/// Mean pairwise similarity of one year's articles. mean_similarity is
/// empty for years with fewer than 2 articles.
struct CohesionResult {
  int year = 0;
  int n_articles = 0;
  std::optional<double> mean_similarity;
  CohesionMethod method = CohesionMethod::exact;
  std::int64_t sample_size = 0;  // 0 when exact
};

/// Mean cosine over all n(n-1)/2 unordered pairs of unit vectors, via the
/// identity mean = (|sum v|^2 - n) / (n (n-1)). O(n d), no pair loop.
double mean_pairwise_similarity(const std::vector<DocVector>& vectors);

/// Seeded uniform pair sampling for corpora too large for the exact cap.
double mean_pairwise_similarity_sampled(const std::vector<DocVector>& vectors,
                                        std::int64_t n_pairs, std::uint64_t seed);

struct CohesionOptions {
  std::int64_t exact_cap = 200000;       // articles per year before sampling
  std::int64_t sample_pairs = 1000000;
  std::uint64_t seed = 0;
};

/// Per-year cohesion; every article must have a vector (looked up by id).
std::vector<CohesionResult> annual_cohesion(const Corpus& corpus,
                                            const std::vector<DocVector>& vectors,
                                            const CohesionOptions& options = {});

/// CSV: year,n_articles,mean_similarity,method (absent value -> empty field).
std::string cohesion_csv(const std::vector<CohesionResult>& results);

}  // namespace newscause

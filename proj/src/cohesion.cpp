// SPDX-License-Identifier: Apache-2.0
#include "newscause/cohesion.hpp"

#include <cmath>
#include <map>
#include <sstream>

#include "newscause/error.hpp"
#include "newscause/rng.hpp"
#include "newscause/util.hpp"

namespace newscause {

namespace {

void check_unit_vectors(const std::vector<DocVector>& vectors) {
  size_t dim = vectors.front().values.size();
  for (const DocVector& v : vectors) {
    if (v.values.size() != dim)
      throw Error("cohesion: mixed vector dimensions (" + std::to_string(v.values.size()) +
                  " vs " + std::to_string(dim) + ")");
    if (std::abs(v.norm - 1.0) > 1e-6)
      throw Error("cohesion: vector for '" + v.article_id + "' is not unit length");
  }
}

}  // namespace

double mean_pairwise_similarity(const std::vector<DocVector>& vectors) {
  size_t n = vectors.size();
  if (n < 2) throw Error("cohesion undefined: need at least 2 vectors");
  check_unit_vectors(vectors);
  size_t dim = vectors.front().values.size();
  std::vector<double> sum(dim, 0.0);
  for (const DocVector& v : vectors)
    for (size_t d = 0; d < dim; ++d) sum[d] += v.values[d];
  double ss = 0.0;
  for (double s : sum) ss += s * s;
  double dn = static_cast<double>(n);
  return (ss - dn) / (dn * (dn - 1.0));
}

double mean_pairwise_similarity_sampled(const std::vector<DocVector>& vectors,
                                        std::int64_t n_pairs, std::uint64_t seed) {
  size_t n = vectors.size();
  if (n < 2) throw Error("cohesion undefined: need at least 2 vectors");
  if (n_pairs < 1) throw Error("cohesion: sample size must be positive");
  check_unit_vectors(vectors);
  Rng rng(seed);
  double acc = 0.0;
  for (std::int64_t k = 0; k < n_pairs; ++k) {
    size_t i = static_cast<size_t>(rng.below(n));
    size_t j;
    do {
      j = static_cast<size_t>(rng.below(n));
    } while (j == i);
    acc += cosine(vectors[i], vectors[j]);
  }
  return acc / static_cast<double>(n_pairs);
}

std::vector<CohesionResult> annual_cohesion(const Corpus& corpus,
                                            const std::vector<DocVector>& vectors,
                                            const CohesionOptions& options) {
  std::map<std::string, const DocVector*> by_id;
  for (const DocVector& v : vectors) by_id.emplace(v.article_id, &v);

  std::map<int, std::vector<DocVector>> by_year;
  for (const Article& a : corpus) {
    auto it = by_id.find(a.id);
    if (it == by_id.end()) throw Error("annual_cohesion: no vector for article '" + a.id + "'");
    by_year[a.date.year].push_back(*it->second);
  }

  std::vector<CohesionResult> out;
  for (const auto& [year, vecs] : by_year) {
    CohesionResult r;
    r.year = year;
    r.n_articles = static_cast<int>(vecs.size());
    if (vecs.size() >= 2) {
      if (static_cast<std::int64_t>(vecs.size()) <= options.exact_cap) {
        r.method = CohesionMethod::exact;
        r.mean_similarity = mean_pairwise_similarity(vecs);
      } else {
        r.method = CohesionMethod::sampled;
        r.sample_size = options.sample_pairs;
        r.mean_similarity =
            mean_pairwise_similarity_sampled(vecs, options.sample_pairs, options.seed);
      }
    }
    out.push_back(std::move(r));
  }
  return out;
}

std::string cohesion_csv(const std::vector<CohesionResult>& results) {
  std::ostringstream out;
  out << "year,n_articles,mean_similarity,method\n";
  for (const CohesionResult& r : results) {
    out << r.year << ',' << r.n_articles << ',';
    if (r.mean_similarity) out << format_real(*r.mean_similarity);
    out << ',' << (r.method == CohesionMethod::exact ? "exact" : "sampled") << '\n';
  }
  return out.str();
}

}  // namespace newscause

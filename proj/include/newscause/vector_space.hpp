// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <map>
#include <set>
#include <string>
#include <vector>

#include "newscause/article.hpp"

namespace newscause {

/// Dense document vector with cached Euclidean norm.
struct DocVector {
  std::string article_id;
  std::vector<double> values;
  double norm = 0.0;
};

/// Builds a DocVector, computing and caching the norm.
DocVector make_doc_vector(std::string article_id, std::vector<double> values);

/// TF-IDF vector space: vocabulary with dense column indices and
/// idf(t) = ln(N / df(t)) + 1.
struct VectorSpace {
  std::map<std::string, int> vocabulary;  // term -> column
  std::vector<double> idf;                // by column
  int dimension = 0;

  double idf_of(const std::string& term) const;
};

struct FitOptions {
  int min_df = 2;  // falls back to 1 if it would empty the vocabulary
  std::set<std::string> stopwords;
};

/// Fits vocabulary and idf over a nonempty corpus.
VectorSpace fit_space(const Corpus& corpus, const FitOptions& options = {});

/// Embeds one article: sublinear tf (1 + ln tf) times idf, L2-normalized.
/// Throws "unembeddable document" if the article shares no vocabulary term.
DocVector embed(const VectorSpace& space, const Article& article);

/// Loads externally trained vectors from lines "article_id dim v1 ... vdim";
/// vectors are L2-normalized on load and the dimension must be uniform.
std::vector<DocVector> import_vectors(const std::string& path);
void save_vectors(const std::string& path, const std::vector<DocVector>& vectors);

/// Cosine similarity dot(a,b) / (|a||b|). Dimensions must match.
double cosine(const DocVector& a, const DocVector& b);

/// One token per line; blank lines and lines starting with '#' are skipped.
std::set<std::string> load_stopwords(const std::string& path);

}  // namespace newscause

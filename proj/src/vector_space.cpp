// SPDX-License-Identifier: Apache-2.0
#include "newscause/vector_space.hpp"

#include <cmath>
#include <numeric>
#include <sstream>

#include "newscause/error.hpp"
#include "newscause/tokenize.hpp"
#include "newscause/util.hpp"

namespace newscause {

DocVector make_doc_vector(std::string article_id, std::vector<double> values) {
  DocVector v{std::move(article_id), std::move(values), 0.0};
  double ss = 0.0;
  for (double x : v.values) ss += x * x;
  v.norm = std::sqrt(ss);
  return v;
}

double VectorSpace::idf_of(const std::string& term) const {
  auto it = vocabulary.find(term);
  if (it == vocabulary.end()) throw Error("term not in vocabulary: " + term);
  return idf[static_cast<size_t>(it->second)];
}

VectorSpace fit_space(const Corpus& corpus, const FitOptions& options) {
  if (corpus.empty()) throw Error("fit_space: empty corpus");
  std::map<std::string, int> df;
  for (const Article& a : corpus) {
    std::set<std::string> seen;
    for (const std::string& t : token_surfaces(article_text(a)))
      if (!options.stopwords.count(t)) seen.insert(t);
    for (const std::string& t : seen) ++df[t];
  }
  auto build = [&](int min_df) {
    VectorSpace space;
    for (const auto& [term, count] : df) {
      if (count < min_df) continue;
      int col = space.dimension++;
      space.vocabulary.emplace(term, col);
      space.idf.push_back(std::log(static_cast<double>(corpus.size()) / count) + 1.0);
    }
    return space;
  };
  VectorSpace space = build(options.min_df);
  if (space.dimension == 0 && options.min_df > 1) space = build(1);
  if (space.dimension == 0) throw Error("fit_space: no usable terms in corpus");
  return space;
}

DocVector embed(const VectorSpace& space, const Article& article) {
  std::map<int, double> tf;
  for (const std::string& t : token_surfaces(article_text(article))) {
    auto it = space.vocabulary.find(t);
    if (it != space.vocabulary.end()) tf[it->second] += 1.0;
  }
  if (tf.empty()) throw Error("unembeddable document: " + article.id);
  std::vector<double> values(static_cast<size_t>(space.dimension), 0.0);
  double ss = 0.0;
  for (const auto& [col, count] : tf) {
    double w = (1.0 + std::log(count)) * space.idf[static_cast<size_t>(col)];
    values[static_cast<size_t>(col)] = w;
    ss += w * w;
  }
  double norm = std::sqrt(ss);
  for (double& v : values) v /= norm;
  return make_doc_vector(article.id, std::move(values));
}

std::vector<DocVector> import_vectors(const std::string& path) {
  std::vector<DocVector> out;
  auto lines = split_lines(read_file(path));
  int dimension = -1;
  for (size_t i = 0; i < lines.size(); ++i) {
    if (trim(lines[i]).empty()) continue;
    std::string where = path + " line " + std::to_string(i + 1);
    std::istringstream in(lines[i]);
    std::string id;
    int dim = 0;
    if (!(in >> id >> dim) || dim < 1) throw Error(where + ": expected 'id dim v1 ... vdim'");
    if (dimension == -1) dimension = dim;
    else if (dim != dimension)
      throw Error(where + ": dimension mismatch (" + std::to_string(dim) + " vs " +
                  std::to_string(dimension) + ")");
    std::vector<double> values(static_cast<size_t>(dim));
    for (int k = 0; k < dim; ++k)
      if (!(in >> values[static_cast<size_t>(k)]))
        throw Error(where + ": expected " + std::to_string(dim) + " vector components");
    double extra;
    if (in >> extra) throw Error(where + ": more components than declared dimension");
    DocVector v = make_doc_vector(id, std::move(values));
    if (v.norm <= 0.0) throw Error(where + ": zero vector cannot be normalized");
    for (double& x : v.values) x /= v.norm;
    v.norm = 1.0;
    out.push_back(std::move(v));
  }
  return out;
}

void save_vectors(const std::string& path, const std::vector<DocVector>& vectors) {
  std::ostringstream out;
  for (const DocVector& v : vectors) {
    out << v.article_id << ' ' << v.values.size();
    for (double x : v.values) out << ' ' << format_real(x, 17);
    out << '\n';
  }
  write_file(path, out.str());
}

double cosine(const DocVector& a, const DocVector& b) {
  if (a.values.size() != b.values.size())
    throw Error("cosine: dimension mismatch (" + std::to_string(a.values.size()) + " vs " +
                std::to_string(b.values.size()) + ")");
  if (a.norm <= 0.0 || b.norm <= 0.0) throw Error("cosine: zero-norm vector");
  double dot = std::inner_product(a.values.begin(), a.values.end(), b.values.begin(), 0.0);
  return dot / (a.norm * b.norm);
}

std::set<std::string> load_stopwords(const std::string& path) {
  std::set<std::string> out;
  for (const std::string& line : split_lines(read_file(path))) {
    std::string t = trim(line);
    if (t.empty() || t[0] == '#') continue;
    out.insert(t);
  }
  return out;
}

}  // namespace newscause

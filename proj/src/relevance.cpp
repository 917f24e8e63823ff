// SPDX-License-Identifier: Apache-2.0
#include "newscause/relevance.hpp"

#include <algorithm>
#include <cmath>

#include "newscause/error.hpp"
#include "newscause/tokenize.hpp"

namespace newscause {

bool majority_relevant(const LabeledArticle& labeled) {
  std::size_t yes = 0;
  for (const auto& vote : labeled.labels) {
    if (vote.relevant) ++yes;
  }
  // Strict majority; an even split is not enough evidence to keep.
  return 2 * yes > labeled.labels.size();
}

double RelevanceModel::token_log_prob(const std::string& term, bool relevant) const {
  const int cls = relevant ? 1 : 0;
  std::int64_t count = 0;
  auto it = counts_.find(term);
  if (it != counts_.end()) count = relevant ? it->second.first : it->second.second;
  const double vocab = static_cast<double>(counts_.size());
  return std::log((static_cast<double>(count) + 1.0) /
                  (static_cast<double>(total_tokens_[cls]) + vocab));
}

double RelevanceModel::log_prior(bool relevant) const {
  const int cls = relevant ? 1 : 0;
  const double total = static_cast<double>(n_docs_[0] + n_docs_[1]);
  return std::log(static_cast<double>(n_docs_[cls]) / total);
}

double RelevanceModel::posterior(const Article& article) const {
  double log_rel = log_prior(true);
  double log_irr = log_prior(false);
  for (const auto& tok : tokenize(article_text(article))) {
    if (tok.kind != TokenKind::word) continue;
    if (counts_.find(tok.surface) == counts_.end()) continue;  // OOV carries no signal
    log_rel += token_log_prob(tok.surface, true);
    log_irr += token_log_prob(tok.surface, false);
  }
  // Softmax over the two joint log scores, guarded against overflow.
  const double m = std::max(log_rel, log_irr);
  const double er = std::exp(log_rel - m);
  const double ei = std::exp(log_irr - m);
  return er / (er + ei);
}

RelevanceModel train_relevance_filter(const std::vector<LabeledArticle>& labeled) {
  if (labeled.size() < 2) throw Error("degenerate training set: need at least 2 labeled articles");
  RelevanceModel model;
  for (const auto& la : labeled) {
    const bool rel = majority_relevant(la);
    const int cls = rel ? 1 : 0;
    model.n_docs_[cls] += 1;
    for (const auto& tok : tokenize(article_text(la.article))) {
      if (tok.kind != TokenKind::word) continue;
      auto& cell = model.counts_[tok.surface];
      (rel ? cell.first : cell.second) += 1;
      model.total_tokens_[cls] += 1;
    }
  }
  if (model.n_docs_[0] == 0 || model.n_docs_[1] == 0) {
    throw Error("degenerate training set: both classes must be present");
  }
  if (model.counts_.empty()) {
    throw Error("degenerate training set: no word tokens in training articles");
  }
  return model;
}

Corpus filter_corpus(const RelevanceModel& model, const Corpus& articles, double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error("relevance threshold must be in (0, 1)");
  }
  Corpus kept;
  for (const auto& a : articles) {
    if (model.posterior(a) >= threshold) kept.push_back(a);
  }
  return kept;
}

double precision(const RelevanceModel& model, const std::vector<LabeledArticle>& heldout,
                 double threshold) {
  if (!(threshold > 0.0 && threshold < 1.0)) {
    throw Error("relevance threshold must be in (0, 1)");
  }
  std::size_t predicted = 0;
  std::size_t correct = 0;
  for (const auto& la : heldout) {
    if (model.posterior(la.article) < threshold) continue;
    ++predicted;
    if (majority_relevant(la)) ++correct;
  }
  if (predicted == 0) throw Error("precision undefined: no articles predicted relevant");
  return static_cast<double>(correct) / static_cast<double>(predicted);
}

double cohen_kappa(const std::vector<bool>& labels_a, const std::vector<bool>& labels_b) {
  if (labels_a.size() != labels_b.size()) {
    throw Error("cohen_kappa: label vectors differ in length");
  }
  const std::size_t n = labels_a.size();
  if (n == 0) throw Error("cohen_kappa: empty label vectors");
  double agree = 0.0;
  double a_yes = 0.0;
  double b_yes = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (labels_a[i] == labels_b[i]) agree += 1.0;
    if (labels_a[i]) a_yes += 1.0;
    if (labels_b[i]) b_yes += 1.0;
  }
  const double nn = static_cast<double>(n);
  const double p_o = agree / nn;
  const double p_e =
      (a_yes / nn) * (b_yes / nn) + ((nn - a_yes) / nn) * ((nn - b_yes) / nn);
  if (p_e >= 1.0) return 1.0;  // both raters constant and identical
  return (p_o - p_e) / (1.0 - p_e);
}

}  // namespace newscause

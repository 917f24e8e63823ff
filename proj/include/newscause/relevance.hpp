// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <utility>
#include <vector>

#include "newscause/article.hpp"

namespace newscause {

/// Majority vote over rater labels; ties count as irrelevant.
bool majority_relevant(const LabeledArticle& labeled);

/// Multinomial bag-of-words classifier with add-one smoothing.
class RelevanceModel {
 public:
  /// ln P(term | class), smoothed over the training vocabulary. Terms
  /// outside the vocabulary get the unseen-term probability.
  double token_log_prob(const std::string& term, bool relevant) const;
  double log_prior(bool relevant) const;

  /// P(relevant | article); tokens outside the vocabulary are ignored.
  double posterior(const Article& article) const;

  std::size_t vocabulary_size() const { return counts_.size(); }

 private:
  friend RelevanceModel train_relevance_filter(const std::vector<LabeledArticle>&);

  // per term: token count in (relevant, irrelevant) training docs
  std::map<std::string, std::pair<std::int64_t, std::int64_t>> counts_;
  std::int64_t total_tokens_[2] = {0, 0};  // [irrelevant, relevant]
  std::int64_t n_docs_[2] = {0, 0};
};

/// Trains on majority-vote ground truth. Throws "degenerate training set"
/// unless both classes are present among >= 2 labeled articles.
RelevanceModel train_relevance_filter(const std::vector<LabeledArticle>& labeled);

/// Keeps articles whose relevance posterior >= threshold, in stable order.
Corpus filter_corpus(const RelevanceModel& model, const Corpus& articles,
                     double threshold = 0.5);

/// True positives / predicted positives on a held-out labeled set.
/// Throws "precision undefined" when nothing is predicted relevant.
double precision(const RelevanceModel& model, const std::vector<LabeledArticle>& heldout,
                 double threshold = 0.5);

/// Cohen's kappa (p_o - p_e) / (1 - p_e); returns 1.0 by convention when
/// both raters are constant and identical.
double cohen_kappa(const std::vector<bool>& labels_a, const std::vector<bool>& labels_b);

}  // namespace newscause

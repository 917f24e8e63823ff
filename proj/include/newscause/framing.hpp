// SPDX-License-Identifier: Apache-2.0
#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "newscause/article.hpp"
#include "newscause/series.hpp"

namespace newscause {

struct SentimentScore {
  double positive = 0.0;
  double negative = 0.0;
};

/// Adjective/adverb sentiment entries plus a noun list used for exclusion.
/// Verb entries are discarded at load.
struct SentimentLexicon {
  struct Entry {
    double positive = 0.0;  // averaged over senses
    double negative = 0.0;
    int senses = 0;
  };
  // keyed by (pos, term) with pos one of 'a' (adjective), 'r' (adverb)
  std::map<std::pair<char, std::string>, Entry> entries;
  std::map<std::string, int> noun_senses;

  /// Sense-weighted a+r average, or absent when the term has no a/r entry or
  /// its noun senses outnumber its a/r senses.
  std::optional<SentimentScore> scorable(const std::string& term) const;
};

/// TSV columns: pos, term, positive, negative; pos in {a, r, n, v}.
/// Senses of one (term, pos) are averaged. Scores must lie in [0, 1].
SentimentLexicon load_lexicon(const std::string& path);

struct PolarityResult {
  double polarity = 0.0;    // mean(positive - negative) over scored tokens
  double negativity = 0.0;  // mean(negative)
  std::size_t n_scored = 0;
};

/// Scores every word token with an a/r lexicon entry, with multiplicity,
/// excluding noun-dominant terms. Throws "no scorable tokens" when nothing
/// matches.
PolarityResult corpus_polarity(const Corpus& corpus, const SentimentLexicon& lexicon);

struct AnnualPolarity {
  int year = 0;
  std::size_t n_articles = 0;
  std::optional<PolarityResult> scores;  // absent when the year has no scorable tokens
};

std::vector<AnnualPolarity> annual_polarity(const Corpus& corpus,
                                            const SentimentLexicon& lexicon);
std::string polarity_csv(const std::vector<AnnualPolarity>& rows);
AnnualSeries polarity_series(const std::vector<AnnualPolarity>& rows, const std::string& name);
AnnualSeries negativity_series(const std::vector<AnnualPolarity>& rows, const std::string& name);

struct RankedGram {
  std::string gram;
  double contribution = 0.0;     // positive KL summand, nats
  double cumulative_share = 0.0;
};

struct KeywordRanking {
  std::vector<RankedGram> ngrams;  // contribution descending, ties lexicographic
  double total_divergence = 0.0;
};

/// Ranks n-grams over-represented in the later corpus relative to the
/// earlier one by their positive Kullback-Leibler summand, computed on
/// add-one-smoothed distributions over the union vocabulary. Contributions
/// below 1e-12 are treated as zero.
KeywordRanking entropic_keywords(const Corpus& earlier, const Corpus& later, int gram_order = 1);

struct ConcentrationResult {
  int year = 0;
  std::size_t k97 = 0;  // minimal prefix reaching the share threshold
  std::optional<std::string> top_keyword;
  double total_divergence = 0.0;
};

ConcentrationResult concentration(const KeywordRanking& ranking, double threshold = 0.97);

/// One result per year after the first. `cumulative_earlier` compares each
/// year against all earlier years; otherwise against the nearest earlier
/// year with articles.
std::vector<ConcentrationResult> annual_concentration(const Corpus& corpus, int gram_order = 1,
                                                      double threshold = 0.97,
                                                      bool cumulative_earlier = true);

std::string ranking_csv(const KeywordRanking& ranking);
std::string concentration_csv(const std::vector<ConcentrationResult>& results);
AnnualSeries concentration_series(const std::vector<ConcentrationResult>& results,
                                  const std::string& name);

}  // namespace newscause

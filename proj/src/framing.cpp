// SPDX-License-Identifier: Apache-2.0
#include "newscause/framing.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>

#include "newscause/error.hpp"
#include "newscause/tokenize.hpp"
#include "newscause/util.hpp"

namespace newscause {

std::optional<SentimentScore> SentimentLexicon::scorable(const std::string& term) const {
  double sum_pos = 0.0;
  double sum_neg = 0.0;
  int ar_senses = 0;
  for (char pos : {'a', 'r'}) {
    auto it = entries.find({pos, term});
    if (it == entries.end()) continue;
    sum_pos += it->second.positive * it->second.senses;
    sum_neg += it->second.negative * it->second.senses;
    ar_senses += it->second.senses;
  }
  if (ar_senses == 0) return std::nullopt;
  auto noun = noun_senses.find(term);
  if (noun != noun_senses.end() && noun->second > ar_senses) return std::nullopt;
  return SentimentScore{sum_pos / ar_senses, sum_neg / ar_senses};
}

SentimentLexicon load_lexicon(const std::string& path) {
  struct Accum {
    double positive = 0.0;
    double negative = 0.0;
    int senses = 0;
  };
  std::map<std::pair<char, std::string>, Accum> accum;
  std::map<std::string, int> nouns;

  const auto lines = split_lines(read_file(path));
  for (std::size_t i = 0; i < lines.size(); ++i) {
    const std::string where = path + " line " + std::to_string(i + 1);
    const std::string& line = lines[i];
    if (line.empty() || line[0] == '#') continue;
    if (i == 0 && line == "pos\tterm\tpositive\tnegative") continue;

    std::vector<std::string> fields;
    std::string cur;
    for (char c : line) {
      if (c == '\t') {
        fields.push_back(cur);
        cur.clear();
      } else {
        cur.push_back(c);
      }
    }
    fields.push_back(cur);
    if (fields.size() != 4) throw Error(where + ": expected 4 tab-separated fields");

    const std::string& pos_field = fields[0];
    if (pos_field.size() != 1 || std::string("arnv").find(pos_field[0]) == std::string::npos) {
      throw Error(where + ": pos must be one of a, r, n, v");
    }
    const char pos = pos_field[0];
    std::string term = trim(fields[1]);
    if (term.empty()) throw Error(where + ": empty term");
    for (char& c : term) {
      if (c >= 'A' && c <= 'Z') c = static_cast<char>(c + 32);
    }

    double scores[2];
    for (int f = 0; f < 2; ++f) {
      const std::string& raw = fields[2 + f];
      char* end = nullptr;
      scores[f] = std::strtod(raw.c_str(), &end);
      if (end == raw.c_str() || *end != '\0') throw Error(where + ": unparseable score");
      if (!(scores[f] >= 0.0 && scores[f] <= 1.0)) {
        throw Error(where + ": score outside [0,1]");
      }
    }
    if (scores[0] + scores[1] > 1.0 + 1e-9) {
      throw Error(where + ": positive + negative exceeds 1");
    }

    if (pos == 'n') {
      nouns[term] += 1;
    } else if (pos != 'v') {  // verbs carry no role here
      auto& cell = accum[{pos, term}];
      cell.positive += scores[0];
      cell.negative += scores[1];
      cell.senses += 1;
    }
  }

  SentimentLexicon lexicon;
  for (const auto& [key, cell] : accum) {
    lexicon.entries[key] =
        SentimentLexicon::Entry{cell.positive / cell.senses, cell.negative / cell.senses,
                                cell.senses};
  }
  lexicon.noun_senses = std::move(nouns);
  return lexicon;
}

PolarityResult corpus_polarity(const Corpus& corpus, const SentimentLexicon& lexicon) {
  double sum_polarity = 0.0;
  double sum_negative = 0.0;
  std::size_t n = 0;
  for (const auto& article : corpus) {
    for (const auto& tok : tokenize(article_text(article))) {
      if (tok.kind != TokenKind::word) continue;
      const auto score = lexicon.scorable(tok.surface);
      if (!score) continue;
      sum_polarity += score->positive - score->negative;
      sum_negative += score->negative;
      n += 1;
    }
  }
  if (n == 0) throw Error("no scorable tokens");
  return PolarityResult{sum_polarity / static_cast<double>(n),
                        sum_negative / static_cast<double>(n), n};
}

std::vector<AnnualPolarity> annual_polarity(const Corpus& corpus,
                                            const SentimentLexicon& lexicon) {
  std::map<int, Corpus> by_year;
  for (const auto& a : corpus) by_year[a.date.year].push_back(a);
  std::vector<AnnualPolarity> rows;
  for (const auto& [year, articles] : by_year) {
    AnnualPolarity row;
    row.year = year;
    row.n_articles = articles.size();
    try {
      row.scores = corpus_polarity(articles, lexicon);
    } catch (const Error&) {
      // year with nothing scorable stays absent
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string polarity_csv(const std::vector<AnnualPolarity>& rows) {
  std::string out = "year,n_articles,polarity,negativity,n_scored\n";
  for (const auto& row : rows) {
    out += std::to_string(row.year) + "," + std::to_string(row.n_articles) + ",";
    if (row.scores) {
      out += format_real(row.scores->polarity) + "," + format_real(row.scores->negativity) +
             "," + std::to_string(row.scores->n_scored);
    } else {
      out += ",,0";
    }
    out += "\n";
  }
  return out;
}

namespace {

AnnualSeries polarity_component(const std::vector<AnnualPolarity>& rows, const std::string& name,
                                double PolarityResult::* member) {
  std::vector<AnnualPoint> points;
  for (const auto& row : rows) {
    AnnualPoint p;
    p.year = row.year;
    if (row.scores) p.value = (*row.scores).*member;
    points.push_back(p);
  }
  return make_annual_series(name, "score", std::move(points), Provenance::corpus_derived);
}

}  // namespace

AnnualSeries polarity_series(const std::vector<AnnualPolarity>& rows, const std::string& name) {
  return polarity_component(rows, name, &PolarityResult::polarity);
}

AnnualSeries negativity_series(const std::vector<AnnualPolarity>& rows, const std::string& name) {
  return polarity_component(rows, name, &PolarityResult::negativity);
}

namespace {

// n-gram counts over word tokens, grams joined by single spaces; n-grams
// never span article boundaries.
std::map<std::string, std::int64_t> gram_counts(const Corpus& corpus, int n,
                                                std::int64_t* total_out) {
  std::map<std::string, std::int64_t> counts;
  std::int64_t total = 0;
  for (const auto& article : corpus) {
    std::vector<std::string> words;
    for (const auto& tok : tokenize(article_text(article))) {
      if (tok.kind == TokenKind::word) words.push_back(tok.surface);
    }
    if (static_cast<int>(words.size()) < n) continue;
    for (std::size_t i = 0; i + n <= words.size(); ++i) {
      std::string gram = words[i];
      for (int j = 1; j < n; ++j) {
        gram += ' ';
        gram += words[i + j];
      }
      counts[gram] += 1;
      total += 1;
    }
  }
  *total_out = total;
  return counts;
}

}  // namespace

KeywordRanking entropic_keywords(const Corpus& earlier, const Corpus& later, int gram_order) {
  if (gram_order < 1 || gram_order > 3) throw Error("gram order must be 1, 2 or 3");
  if (earlier.empty()) throw Error("entropic_keywords: earlier corpus is empty");
  if (later.empty()) throw Error("entropic_keywords: later corpus is empty");

  std::int64_t total_earlier = 0;
  std::int64_t total_later = 0;
  const auto earlier_counts = gram_counts(earlier, gram_order, &total_earlier);
  const auto later_counts = gram_counts(later, gram_order, &total_later);
  if (total_earlier == 0) throw Error("entropic_keywords: earlier corpus has no n-grams");
  if (total_later == 0) throw Error("entropic_keywords: later corpus has no n-grams");

  // Smoothing adds one pseudo-count per gram against a shared mass of
  // max(total_earlier, total_later), so relative frequencies, not raw counts,
  // drive the divergence. Identical texts of different sizes then smooth to
  // identical distributions.
  const double mass = static_cast<double>(std::max(total_earlier, total_later));
  std::map<std::string, double> contributions;
  double total_divergence = 0.0;
  auto relative = [](const std::map<std::string, std::int64_t>& counts, const std::string& gram,
                     std::int64_t total) {
    auto it = counts.find(gram);
    return it == counts.end() ? 0.0
                              : static_cast<double>(it->second) / static_cast<double>(total);
  };
  const auto vocab_size = [&] {
    std::size_t v = earlier_counts.size();
    for (const auto& [gram, unused] : later_counts) {
      (void)unused;
      if (earlier_counts.find(gram) == earlier_counts.end()) ++v;
    }
    return static_cast<double>(v);
  }();

  auto smoothed = [&](double rel_freq) { return (rel_freq * mass + 1.0) / (mass + vocab_size); };
  auto consider = [&](const std::string& gram) {
    const double p = smoothed(relative(later_counts, gram, total_later));
    const double q = smoothed(relative(earlier_counts, gram, total_earlier));
    double c = p * std::log(p / q);
    if (c < 1e-12) return;  // floor also drops the negative part
    contributions[gram] = c;
    total_divergence += c;
  };
  for (const auto& [gram, unused] : earlier_counts) {
    (void)unused;
    consider(gram);
  }
  for (const auto& [gram, unused] : later_counts) {
    (void)unused;
    if (earlier_counts.find(gram) == earlier_counts.end()) consider(gram);
  }

  KeywordRanking ranking;
  ranking.total_divergence = total_divergence;
  for (const auto& [gram, c] : contributions) {
    ranking.ngrams.push_back(RankedGram{gram, c, 0.0});
  }
  std::sort(ranking.ngrams.begin(), ranking.ngrams.end(),
            [](const RankedGram& a, const RankedGram& b) {
              if (a.contribution != b.contribution) return a.contribution > b.contribution;
              return a.gram < b.gram;
            });
  double running = 0.0;
  for (auto& rg : ranking.ngrams) {
    running += rg.contribution;
    rg.cumulative_share = running / total_divergence;
  }
  return ranking;
}

ConcentrationResult concentration(const KeywordRanking& ranking, double threshold) {
  if (!(threshold > 0.0 && threshold <= 1.0)) {
    throw Error("concentration threshold must be in (0, 1]");
  }
  ConcentrationResult result;
  result.total_divergence = ranking.total_divergence;
  if (ranking.ngrams.empty()) return result;  // k97 = 0, no top keyword
  result.top_keyword = ranking.ngrams.front().gram;
  for (std::size_t i = 0; i < ranking.ngrams.size(); ++i) {
    if (ranking.ngrams[i].cumulative_share + 1e-9 >= threshold) {
      result.k97 = i + 1;
      return result;
    }
  }
  result.k97 = ranking.ngrams.size();  // cumulative share ends at 1
  return result;
}

std::vector<ConcentrationResult> annual_concentration(const Corpus& corpus, int gram_order,
                                                      double threshold, bool cumulative_earlier) {
  std::map<int, Corpus> by_year;
  for (const auto& a : corpus) by_year[a.date.year].push_back(a);
  if (by_year.size() < 2) {
    throw Error("annual_concentration: need articles from at least 2 years");
  }
  std::vector<ConcentrationResult> results;
  Corpus history;
  const Corpus* previous = nullptr;
  for (const auto& [year, articles] : by_year) {
    if (previous != nullptr) {
      const Corpus& earlier = cumulative_earlier ? history : *previous;
      auto result = concentration(entropic_keywords(earlier, articles, gram_order), threshold);
      result.year = year;
      results.push_back(std::move(result));
    }
    history.insert(history.end(), articles.begin(), articles.end());
    previous = &by_year.at(year);
  }
  return results;
}

std::string ranking_csv(const KeywordRanking& ranking) {
  std::string out = "rank,gram,contribution,cumulative_share\n";
  for (std::size_t i = 0; i < ranking.ngrams.size(); ++i) {
    const auto& rg = ranking.ngrams[i];
    out += std::to_string(i + 1) + "," + csv_field(rg.gram) + "," +
           format_real(rg.contribution) + "," + format_real(rg.cumulative_share) + "\n";
  }
  return out;
}

std::string concentration_csv(const std::vector<ConcentrationResult>& results) {
  std::string out = "year,k97,top_keyword,total_divergence\n";
  for (const auto& r : results) {
    out += std::to_string(r.year) + "," + std::to_string(r.k97) + ",";
    if (r.top_keyword) out += csv_field(*r.top_keyword);
    out += "," + format_real(r.total_divergence) + "\n";
  }
  return out;
}

AnnualSeries concentration_series(const std::vector<ConcentrationResult>& results,
                                  const std::string& name) {
  std::vector<AnnualPoint> points;
  for (const auto& r : results) {
    points.push_back({r.year, static_cast<double>(r.k97)});
  }
  return make_annual_series(name, "keywords", std::move(points), Provenance::corpus_derived);
}

}  // namespace newscause

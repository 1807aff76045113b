#pragma once

// Independent oracle implementations used to check the library. These are
// deliberately written as direct, brute-force evaluations of the textbook
// definitions and must stay decoupled from the implementation paths they
// verify.

#include <algorithm>
#include <map>
#include <optional>
#include <random>
#include <string>
#include <vector>

#include "negcorpus/agreement.hpp"
#include "negcorpus/evaluation.hpp"
#include "negcorpus/pattern_matcher.hpp"
#include "negcorpus/token_stream.hpp"
#include "negcorpus/utf8.hpp"

namespace oracles {

// ---------------------------------------------------------------------
// Matcher: exhaustive enumeration over (pattern, start, gap assignment).
// ---------------------------------------------------------------------

inline bool advance_odometer(std::vector<int>& gaps, int max_gap) {
  for (int d = static_cast<int>(gaps.size()) - 1; d >= 0; --d) {
    if (++gaps[d] <= max_gap) return true;
    gaps[d] = 0;
  }
  return false;
}

inline std::vector<negcorpus::MatchSpan> brute_force_matches(
    const std::vector<negcorpus::TokenPattern>& patterns,
    const negcorpus::TaggedUtterance& utt) {
  std::vector<negcorpus::MatchSpan> out;
  const int n = static_cast<int>(utt.tokens.size());
  for (const auto& pattern : patterns) {
    const int k = static_cast<int>(pattern.specs.size());
    for (int start = 0; start < n; ++start) {
      std::vector<int> gaps(std::max(0, k - 1), 0);
      do {
        std::vector<int> pos{start};
        for (int i = 1; i < k; ++i) pos.push_back(pos.back() + 1 + gaps[i - 1]);
        bool ok = pos.back() < n;
        for (int i = 0; ok && i < k; ++i)
          ok = pattern.specs[i].matches(utt.tokens[pos[i]]);
        for (int i = 1; ok && i < k; ++i)
          for (int p = pos[i - 1] + 1; ok && p < pos[i]; ++p)
            ok = utt.tokens[p].norm != "?";
        if (ok) {
          negcorpus::MatchSpan span;
          span.pattern_id = pattern.id;
          span.start = start;
          span.end = pos.back() + 1;
          span.utterance_index = utt.utterance_index;
          span.matched_token_indices = pos;
          out.push_back(std::move(span));
        }
      } while (advance_odometer(gaps, pattern.max_gap));
    }
  }
  return out;
}

// Order-insensitive comparison key.
inline std::vector<std::tuple<std::string, int, int, std::vector<int>>>
span_multiset(const std::vector<negcorpus::MatchSpan>& spans) {
  std::vector<std::tuple<std::string, int, int, std::vector<int>>> keys;
  keys.reserve(spans.size());
  for (const auto& s : spans)
    keys.emplace_back(s.pattern_id, s.start, s.end, s.matched_token_indices);
  std::sort(keys.begin(), keys.end());
  return keys;
}

// ---------------------------------------------------------------------
// Fleiss' kappa: dense N x K category-count table, sum-then-divide.
// ---------------------------------------------------------------------

inline std::optional<double> fleiss_kappa_oracle(
    const negcorpus::AnnotationMatrix& m) {
  std::vector<std::string> cats;
  for (const auto& row : m.labels)
    for (const auto& label : row)
      if (std::find(cats.begin(), cats.end(), label) == cats.end())
        cats.push_back(label);
  if (cats.size() < 2) return std::nullopt;

  const int item_count = static_cast<int>(m.labels.size());
  const int rater_count = static_cast<int>(m.annotator_ids.size());
  const int cat_count = static_cast<int>(cats.size());

  std::vector<std::vector<int>> nik(item_count, std::vector<int>(cat_count, 0));
  for (int i = 0; i < item_count; ++i)
    for (const auto& label : m.labels[i]) {
      int j = static_cast<int>(std::find(cats.begin(), cats.end(), label) -
                               cats.begin());
      ++nik[i][j];
    }

  double p_i_sum = 0.0;
  for (int i = 0; i < item_count; ++i) {
    double sq = 0.0;
    for (int j = 0; j < cat_count; ++j)
      sq += static_cast<double>(nik[i][j]) * nik[i][j];
    p_i_sum += (sq - rater_count) /
               (static_cast<double>(rater_count) * (rater_count - 1));
  }
  const double p_bar = p_i_sum / item_count;

  double p_e = 0.0;
  for (int j = 0; j < cat_count; ++j) {
    double col = 0.0;
    for (int i = 0; i < item_count; ++i) col += nik[i][j];
    double p_j = col / (static_cast<double>(item_count) * rater_count);
    p_e += p_j * p_j;
  }
  return (p_bar - p_e) / (1.0 - p_e);
}

// ---------------------------------------------------------------------
// Cohen's kappa via an explicit contingency table.
// ---------------------------------------------------------------------

inline std::optional<double> cohen_kappa_oracle(
    const std::vector<std::string>& a, const std::vector<std::string>& b) {
  std::vector<std::string> cats;
  auto note = [&](const std::string& label) {
    if (std::find(cats.begin(), cats.end(), label) == cats.end())
      cats.push_back(label);
  };
  for (const auto& label : a) note(label);
  for (const auto& label : b) note(label);

  const int k = static_cast<int>(cats.size());
  const double n = static_cast<double>(a.size());
  std::vector<std::vector<int>> table(k, std::vector<int>(k, 0));
  auto index = [&](const std::string& label) {
    return static_cast<int>(std::find(cats.begin(), cats.end(), label) -
                            cats.begin());
  };
  for (std::size_t i = 0; i < a.size(); ++i) ++table[index(a[i])][index(b[i])];

  double diag = 0.0;
  for (int i = 0; i < k; ++i) diag += table[i][i];
  const double p_o = diag / n;

  double p_e = 0.0;
  for (int i = 0; i < k; ++i) {
    double row = 0.0, col = 0.0;
    for (int j = 0; j < k; ++j) {
      row += table[i][j];
      col += table[j][i];
    }
    p_e += (row / n) * (col / n);
  }
  bool a_const = std::all_of(a.begin(), a.end(),
                             [&](const std::string& x) { return x == a[0]; });
  bool b_const = std::all_of(b.begin(), b.end(),
                             [&](const std::string& x) { return x == b[0]; });
  if (a_const && b_const && a[0] == b[0]) return std::nullopt;
  return (p_o - p_e) / (1.0 - p_e);
}

// ---------------------------------------------------------------------
// Classification metrics by direct recount over the pair list.
// ---------------------------------------------------------------------

struct NaiveClassScores {
  std::optional<double> precision;
  std::optional<double> recall;
  std::optional<double> f1;
  std::size_t support = 0;
};

struct NaiveMetrics {
  std::map<std::string, NaiveClassScores> per_class;
  double accuracy = 0.0;
};

inline NaiveMetrics naive_metrics(const std::vector<negcorpus::LabelPair>& pairs,
                                  const std::vector<std::string>& categories) {
  NaiveMetrics out;
  std::size_t correct = 0;
  for (const auto& p : pairs)
    if (p.gold == p.predicted) ++correct;
  out.accuracy = static_cast<double>(correct) / static_cast<double>(pairs.size());

  for (const auto& cat : categories) {
    std::size_t tp = 0, fp = 0, fn = 0, support = 0;
    for (const auto& p : pairs) {
      if (p.gold == cat) ++support;
      if (p.gold == cat && p.predicted == cat) ++tp;
      if (p.gold != cat && p.predicted == cat) ++fp;
      if (p.gold == cat && p.predicted != cat) ++fn;
    }
    NaiveClassScores s;
    s.support = support;
    if (tp + fp > 0)
      s.precision = static_cast<double>(tp) / static_cast<double>(tp + fp);
    if (tp + fn > 0)
      s.recall = static_cast<double>(tp) / static_cast<double>(tp + fn);
    if (s.precision && s.recall) {
      double p = *s.precision, r = *s.recall;
      s.f1 = (p + r > 0.0) ? 2.0 * p * r / (p + r) : 0.0;
    }
    out.per_class[cat] = s;
  }
  return out;
}

// ---------------------------------------------------------------------
// Random input builders (fixed-seed std::mt19937 from the callers).
// ---------------------------------------------------------------------

inline negcorpus::TaggedUtterance make_tagged(
    const std::vector<std::pair<std::string, negcorpus::Upos>>& words,
    int utterance_index = 0) {
  negcorpus::TaggedUtterance utt;
  utt.utterance_index = utterance_index;
  std::size_t cp = 0;
  for (std::size_t i = 0; i < words.size(); ++i) {
    if (i) {
      utt.text += ' ';
      ++cp;
    }
    negcorpus::Token t;
    t.text = words[i].first;
    t.norm = negcorpus::utf8::normalize(t.text);
    t.upos = words[i].second;
    t.index = static_cast<int>(i);
    t.char_start = cp;
    cp += negcorpus::utf8::count(t.text);
    t.char_end = cp;
    t.utterance_index = utterance_index;
    utt.text += t.text;
    utt.tokens.push_back(std::move(t));
  }
  return utt;
}

inline negcorpus::TaggedUtterance random_tagged_utterance(
    std::mt19937& rng, int max_len, bool allow_question_tokens) {
  static const std::vector<std::string> kVocab = {
      "não", "gosto", "casa", "eu", "muito", "sei", "fui", "hoje"};
  static const std::vector<negcorpus::Upos> kTags = {
      negcorpus::Upos::VERB, negcorpus::Upos::AUX, negcorpus::Upos::ADV,
      negcorpus::Upos::NOUN};
  std::uniform_int_distribution<int> len_dist(0, max_len);
  std::uniform_int_distribution<std::size_t> word_dist(0, kVocab.size() - 1);
  std::uniform_int_distribution<std::size_t> tag_dist(0, kTags.size() - 1);
  std::uniform_int_distribution<int> question_dist(0, 9);

  const int len = len_dist(rng);
  std::vector<std::pair<std::string, negcorpus::Upos>> words;
  words.reserve(len);
  for (int i = 0; i < len; ++i) {
    if (allow_question_tokens && question_dist(rng) == 0)
      words.emplace_back("?", negcorpus::Upos::PUNCT);
    else
      words.emplace_back(kVocab[word_dist(rng)], kTags[tag_dist(rng)]);
  }
  return make_tagged(words);
}

}  // namespace oracles

#include "negcorpus/neg_classifier.hpp"

#include <algorithm>
#include <cmath>

#include "json.hpp"
#include "negcorpus/csv.hpp"
#include "negcorpus/utf8.hpp"

namespace negcorpus {

std::string_view to_string(NegLabel label) {
  switch (label) {
    case NegLabel::NEG1: return "NEG1";
    case NegLabel::NEG2: return "NEG2";
    case NegLabel::NEG3: return "NEG3";
  }
  return "NEG1";
}

std::optional<NegLabel> neg_label_from_string(std::string_view text) {
  if (text == "NEG1") return NegLabel::NEG1;
  if (text == "NEG2") return NegLabel::NEG2;
  if (text == "NEG3") return NegLabel::NEG3;
  return std::nullopt;
}

namespace {

bool is_nao_norm(const std::string& norm, bool variants_enabled) {
  if (norm == "não") return true;
  if (variants_enabled && (norm == "n" || norm == "ñ")) return true;
  return false;
}

}  // namespace

std::size_t count_nao(const std::vector<TaggedUtterance>& utterances,
                      bool variants_enabled) {
  std::size_t count = 0;
  for (const auto& utt : utterances)
    for (const auto& tok : utt.tokens)
      if (is_nao_norm(tok.norm, variants_enabled)) ++count;
  return count;
}

std::size_t count_nao(const TaggedCorpus& corpus, bool variants_enabled) {
  std::size_t count = 0;
  for (const auto& doc : corpus)
    count += count_nao(doc.utterances, variants_enabled);
  return count;
}

namespace {

// Codepoint slice covering tokens [first, last] of the utterance.
std::string token_slice(const TaggedUtterance& utt, int first, int last) {
  return utf8::substr(utt.text, utt.tokens[first].char_start,
                      utt.tokens[last].char_end);
}

// 1-based group numbers for spans that share tokens with another span of
// the same utterance; groups are connected overlap components.
std::vector<std::optional<int>> overlap_groups(
    const std::vector<MatchSpan>& spans, int& next_group) {
  const std::size_t n = spans.size();
  std::vector<int> component(n, -1);
  int local = 0;
  for (std::size_t i = 0; i < n; ++i) {
    if (component[i] >= 0) continue;
    component[i] = local;
    // flood the overlap component
    std::vector<std::size_t> frontier{i};
    while (!frontier.empty()) {
      std::size_t cur = frontier.back();
      frontier.pop_back();
      for (std::size_t j = 0; j < n; ++j) {
        if (component[j] >= 0) continue;
        if (spans_overlap(spans[cur], spans[j])) {
          component[j] = local;
          frontier.push_back(j);
        }
      }
    }
    ++local;
  }
  std::vector<std::size_t> sizes(local, 0);
  for (std::size_t i = 0; i < n; ++i) ++sizes[component[i]];

  std::vector<std::optional<int>> out(n);
  std::vector<int> assigned(local, 0);
  for (std::size_t i = 0; i < n; ++i) {
    if (sizes[component[i]] < 2) continue;
    if (assigned[component[i]] == 0) assigned[component[i]] = next_group++;
    out[i] = assigned[component[i]];
  }
  return out;
}

}  // namespace

ClassifyResult classify_corpus(const TaggedCorpus& corpus,
                               const std::vector<TokenPattern>& patterns,
                               const ClassifyOptions& options) {
  for (std::string_view required : {"NEG1", "NEG2", "NEG3"}) {
    bool found = std::any_of(patterns.begin(), patterns.end(),
                             [&](const TokenPattern& p) { return p.id == required; });
    if (!found)
      throw MissingRequiredPattern("pattern file is missing required id '" +
                                   std::string(required) + "'");
  }

  Matcher matcher;
  for (TokenPattern p : patterns) {
    if (options.max_gap_override) p.max_gap = *options.max_gap_override;
    matcher.add_pattern(std::move(p));
  }

  TaggedCorpus working = corpus;
  if (options.variants_enabled) {
    for (auto& doc : working)
      for (auto& utt : doc.utterances)
        for (auto& tok : utt.tokens)
          if (tok.norm == "n" || tok.norm == "ñ") tok.norm = "não";
  }

  ClassifyResult result;
  int next_group = 1;
  for (const auto& doc : working) {
    for (const auto& utt : doc.utterances) {
      auto spans = matcher.find_matches(utt);
      auto resolved = matcher.resolve_overlaps(spans, options.policy);
      std::vector<std::optional<int>> groups;
      if (options.policy.kind == OverlapPolicy::Kind::report_all)
        groups = overlap_groups(resolved, next_group);

      const int token_count = static_cast<int>(utt.tokens.size());
      for (std::size_t si = 0; si < resolved.size(); ++si) {
        const MatchSpan& span = resolved[si];
        auto label = neg_label_from_string(span.pattern_id);
        if (!label) continue;  // auxiliary experiment pattern

        NegOccurrence occ;
        occ.label = *label;
        occ.metadata = doc.metadata;
        occ.utterance_index = utt.utterance_index;
        occ.span = span;
        occ.matched_text = token_slice(utt, span.start, span.end - 1);
        const int ctx_first = std::max(0, span.start - options.context_window);
        const int ctx_last =
            std::min(token_count, span.end + options.context_window) - 1;
        occ.context_window = token_slice(utt, ctx_first, ctx_last);
        for (int idx : span.matched_token_indices)
          if (utt.tokens[idx].norm == "não") occ.nao_token_indices.push_back(idx);
        if (!groups.empty()) occ.overlap_group = groups[si];
        result.occurrences.push_back(std::move(occ));
      }
    }
  }
  result.summary = summarize(result.occurrences,
                             count_nao(working, options.variants_enabled));
  return result;
}

CorpusSummary summarize(const std::vector<NegOccurrence>& occurrences,
                        std::size_t total_nao) {
  CorpusSummary s;
  s.total_nao_tokens = total_nao;
  s.classified_count = occurrences.size();
  s.counts = {{NegLabel::NEG1, 0}, {NegLabel::NEG2, 0}, {NegLabel::NEG3, 0}};
  for (const auto& occ : occurrences) ++s.counts[occ.label];
  if (s.classified_count > 0) {
    for (const auto& [label, count] : s.counts)
      s.proportions[label] =
          static_cast<double>(count) / static_cast<double>(s.classified_count);
  }
  return s;
}

std::string occurrences_to_csv(const std::vector<NegOccurrence>& occurrences,
                               bool include_overlap_group) {
  std::vector<std::string> header = {
      "interview_id",   "location",   "gender",
      "age",            "city_of_origin", "city_of_residence",
      "undergrad_period", "utterance_index", "label",
      "start",          "end",        "matched_text",
      "context_window"};
  if (include_overlap_group) header.push_back("overlap_group");

  std::string out = csv::write_row(header);
  for (const auto& occ : occurrences) {
    const SpeakerMetadata& m = occ.metadata;
    std::vector<std::string> row = {
        m.interview_id,
        m.location.value_or(""),
        m.gender.value_or(""),
        m.age ? std::to_string(*m.age) : "",
        m.city_of_origin.value_or(""),
        m.city_of_residence.value_or(""),
        m.undergrad_period.value_or(""),
        std::to_string(occ.utterance_index),
        std::string(to_string(occ.label)),
        std::to_string(occ.span.start),
        std::to_string(occ.span.end),
        occ.matched_text,
        occ.context_window,
    };
    if (include_overlap_group)
      row.push_back(occ.overlap_group ? std::to_string(*occ.overlap_group) : "");
    out += csv::write_row(row);
  }
  return out;
}

std::string summary_to_json(const CorpusSummary& summary) {
  nlohmann::ordered_json j;
  j["total_nao"] = summary.total_nao_tokens;
  j["classified"] = summary.classified_count;
  nlohmann::ordered_json counts;
  for (const auto& [label, count] : summary.counts)
    counts[std::string(to_string(label))] = count;
  j["counts"] = counts;
  if (summary.proportions.empty()) {
    j["proportions"] = nullptr;
  } else {
    nlohmann::ordered_json props;
    for (const auto& [label, value] : summary.proportions)
      props[std::string(to_string(label))] = std::round(value * 1000.0) / 1000.0;
    j["proportions"] = props;
  }
  return j.dump(2) + "\n";
}

}  // namespace negcorpus

#pragma once

#include <cstddef>
#include <map>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "negcorpus/corpus_ingest.hpp"
#include "negcorpus/errors.hpp"
#include "negcorpus/pattern_matcher.hpp"
#include "negcorpus/token_stream.hpp"

// Applies the negation patterns to a tagged corpus and emits per-occurrence
// classification records plus frequency summaries.
namespace negcorpus {

enum class NegLabel { NEG1, NEG2, NEG3 };

std::string_view to_string(NegLabel label);
std::optional<NegLabel> neg_label_from_string(std::string_view text);

struct NegOccurrence {
  NegLabel label = NegLabel::NEG1;
  SpeakerMetadata metadata;
  int utterance_index = 0;
  MatchSpan span;
  std::string matched_text;
  std::string context_window;
  std::vector<int> nao_token_indices;
  // Set under ReportAll when the span shares tokens with other reported
  // spans (1-based group number, shared across the overlap cluster).
  std::optional<int> overlap_group;
};

struct CorpusSummary {
  std::size_t total_nao_tokens = 0;
  std::size_t classified_count = 0;
  std::map<NegLabel, std::size_t> counts;
  // count / classified_count; empty when classified_count == 0.
  std::map<NegLabel, double> proportions;
};

struct TaggedDocument {
  SpeakerMetadata metadata;
  std::vector<TaggedUtterance> utterances;
};

using TaggedCorpus = std::vector<TaggedDocument>;

class MissingRequiredPattern : public Error {
 public:
  using Error::Error;
};

// Counts "não" tokens; with variants enabled, also the written-register
// forms "n" and "ñ".
std::size_t count_nao(const TaggedCorpus& corpus, bool variants_enabled);
std::size_t count_nao(const std::vector<TaggedUtterance>& utterances,
                      bool variants_enabled);

struct ClassifyOptions {
  OverlapPolicy policy{};
  int context_window = 5;          // tokens each side
  bool variants_enabled = false;   // rewrite "n"/"ñ" norms to "não"
  std::optional<int> max_gap_override;
};

struct ClassifyResult {
  std::vector<NegOccurrence> occurrences;  // corpus order
  CorpusSummary summary;
};

// Requires patterns NEG1, NEG2, NEG3 to be present. All patterns take part
// in matching and overlap resolution; only NEG-labeled spans become
// occurrences.
ClassifyResult classify_corpus(const TaggedCorpus& corpus,
                               const std::vector<TokenPattern>& patterns,
                               const ClassifyOptions& options = {});

CorpusSummary summarize(const std::vector<NegOccurrence>& occurrences,
                        std::size_t total_nao);

// Occurrence spreadsheet (RFC 4180, LF). The overlap_group column is
// appended only when requested (ReportAll runs).
std::string occurrences_to_csv(const std::vector<NegOccurrence>& occurrences,
                               bool include_overlap_group);

// Machine summary; proportions reported to 3 decimal places.
std::string summary_to_json(const CorpusSummary& summary);

}  // namespace negcorpus

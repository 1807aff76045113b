#pragma once

#include <limits>
#include <optional>
#include <set>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include "negcorpus/errors.hpp"
#include "negcorpus/token_stream.hpp"

// Rule-based token matching: ordered per-token attribute specs with an
// optional bounded wildcard gap between consecutive specs. Every matching
// assignment is reported; overlap resolution is a separate, explicit step.
namespace negcorpus {

struct TokenSpec {
  // Matched against Token.norm.
  std::optional<std::set<std::string>> text_equals;
  std::optional<std::set<Upos>> pos_in;

  bool matches(const Token& token) const;
  bool valid() const;  // at least one constraint, sets non-empty
};

struct TokenPattern {
  std::string id;
  std::vector<TokenSpec> specs;
  int max_gap = 0;  // wildcard tokens allowed between consecutive specs
  // Overlap tie-break rank; lower value wins. Patterns loaded from JSON
  // without a priority sort last.
  int priority = std::numeric_limits<int>::max();
};

struct MatchSpan {
  std::string pattern_id;
  int start = 0;  // token index
  int end = 0;    // exclusive
  int utterance_index = 0;
  std::vector<int> matched_token_indices;  // one per spec, strictly increasing

  bool operator==(const MatchSpan&) const = default;
};

bool spans_overlap(const MatchSpan& a, const MatchSpan& b);

class DuplicatePatternId : public Error {
 public:
  using Error::Error;
};

class EmptyPattern : public Error {
 public:
  using Error::Error;
};

class UnknownPatternInPriorityList : public Error {
 public:
  using Error::Error;
};

class PatternParseError : public Error {
 public:
  using Error::Error;
};

struct OverlapPolicy {
  enum class Kind { longest_match_priority, report_all };

  Kind kind = Kind::longest_match_priority;
  // Optional explicit ranking (earlier entries win ties). When empty, the
  // patterns' own priority values are used.
  std::vector<std::string> priority_order;

  static OverlapPolicy longest() { return {}; }
  static OverlapPolicy report_all() { return {Kind::report_all, {}}; }
};

class Matcher {
 public:
  void add_pattern(TokenPattern pattern);

  const std::vector<TokenPattern>& patterns() const { return patterns_; }
  bool has_pattern(std::string_view id) const;

  // Every satisfying assignment of every pattern, overlaps included,
  // ordered by (start, length desc, pattern_id, matched indices). A spec
  // may match any token; skipped gap tokens must never be "?".
  std::vector<MatchSpan> find_matches(const TaggedUtterance& utterance) const;

  // LongestMatchPriority: greedily keep the best span per overlap conflict
  // (longest, then highest priority, then earliest start); drop everything
  // that overlaps a kept span. ReportAll: identity.
  std::vector<MatchSpan> resolve_overlaps(const std::vector<MatchSpan>& spans,
                                          const OverlapPolicy& policy) const;

 private:
  std::vector<TokenPattern> patterns_;
  std::unordered_map<std::string, std::size_t> index_by_id_;
};

// Pattern file loader. Accepted syntax per pattern:
//   {"id": "NEG1", "priority": 2, "max_gap": 0,
//    "specs": [{"TEXT": "não"}, {"POS": {"IN": ["VERB", "AUX"]}}]}
// TEXT takes a string or array of strings; POS takes {"IN": [tags]}. A spec
// may carry both (conjunction).
std::vector<TokenPattern> load_patterns_json(std::string_view json_text);

}  // namespace negcorpus

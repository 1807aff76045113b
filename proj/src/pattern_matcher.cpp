#include "negcorpus/pattern_matcher.hpp"

#include <algorithm>

#include "json.hpp"
#include "negcorpus/utf8.hpp"

namespace negcorpus {

bool TokenSpec::matches(const Token& token) const {
  if (text_equals && !text_equals->count(token.norm)) return false;
  if (pos_in && !pos_in->count(token.upos)) return false;
  return true;
}

bool TokenSpec::valid() const {
  if (!text_equals && !pos_in) return false;
  if (text_equals && text_equals->empty()) return false;
  if (pos_in && pos_in->empty()) return false;
  return true;
}

bool spans_overlap(const MatchSpan& a, const MatchSpan& b) {
  return a.start < b.end && b.start < a.end;
}

namespace {

// Canonical report order: start asc, longer first, then id, then the exact
// assignment.
bool span_less(const MatchSpan& a, const MatchSpan& b) {
  if (a.start != b.start) return a.start < b.start;
  int la = a.end - a.start, lb = b.end - b.start;
  if (la != lb) return la > lb;
  if (a.pattern_id != b.pattern_id) return a.pattern_id < b.pattern_id;
  return a.matched_token_indices < b.matched_token_indices;
}

}  // namespace

void Matcher::add_pattern(TokenPattern pattern) {
  if (pattern.specs.empty())
    throw EmptyPattern("pattern '" + pattern.id + "' has no token specs");
  for (const auto& spec : pattern.specs) {
    if (!spec.valid())
      throw EmptyPattern("pattern '" + pattern.id +
                         "' has a token spec with no constraints");
  }
  if (pattern.max_gap < 0)
    throw PatternParseError("pattern '" + pattern.id + "' has negative max_gap");
  if (index_by_id_.count(pattern.id))
    throw DuplicatePatternId("pattern id '" + pattern.id +
                             "' already registered");
  index_by_id_[pattern.id] = patterns_.size();
  patterns_.push_back(std::move(pattern));
}

bool Matcher::has_pattern(std::string_view id) const {
  return index_by_id_.count(std::string(id)) > 0;
}

std::vector<MatchSpan> Matcher::find_matches(
    const TaggedUtterance& utterance) const {
  std::vector<MatchSpan> out;
  const auto& tokens = utterance.tokens;
  const int n = static_cast<int>(tokens.size());

  std::vector<int> picked;
  for (const auto& pattern : patterns_) {
    const int k = static_cast<int>(pattern.specs.size());

    // Depth-first over gap choices; gaps are contiguous, so the first "?"
    // blocks every wider gap from the same position.
    auto extend = [&](auto&& self, int spec_idx) -> void {
      if (spec_idx == k) {
        MatchSpan span;
        span.pattern_id = pattern.id;
        span.start = picked.front();
        span.end = picked.back() + 1;
        span.utterance_index = utterance.utterance_index;
        span.matched_token_indices = picked;
        out.push_back(std::move(span));
        return;
      }
      const int last = picked.back();
      for (int gap = 0; gap <= pattern.max_gap; ++gap) {
        const int pos = last + 1 + gap;
        if (pos >= n) break;
        if (gap > 0 && tokens[pos - 1].norm == "?") break;
        if (pattern.specs[spec_idx].matches(tokens[pos])) {
          picked.push_back(pos);
          self(self, spec_idx + 1);
          picked.pop_back();
        }
      }
    };

    for (int start = 0; start < n; ++start) {
      if (!pattern.specs.front().matches(tokens[start])) continue;
      picked.assign(1, start);
      extend(extend, 1);
    }
  }
  std::sort(out.begin(), out.end(), span_less);
  return out;
}

std::vector<MatchSpan> Matcher::resolve_overlaps(
    const std::vector<MatchSpan>& spans, const OverlapPolicy& policy) const {
  if (policy.kind == OverlapPolicy::Kind::report_all) return spans;

  std::unordered_map<std::string, int> rank;
  if (!policy.priority_order.empty()) {
    for (std::size_t i = 0; i < policy.priority_order.size(); ++i) {
      const std::string& id = policy.priority_order[i];
      if (!index_by_id_.count(id))
        throw UnknownPatternInPriorityList("priority list names unknown pattern '" +
                                           id + "'");
      rank[id] = static_cast<int>(i);
    }
  } else {
    for (const auto& p : patterns_) rank[p.id] = p.priority;
  }
  auto rank_of = [&](const MatchSpan& s) {
    auto it = rank.find(s.pattern_id);
    return it == rank.end() ? std::numeric_limits<int>::max() : it->second;
  };

  std::vector<std::size_t> order(spans.size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t ia, std::size_t ib) {
    const MatchSpan& a = spans[ia];
    const MatchSpan& b = spans[ib];
    int la = a.end - a.start, lb = b.end - b.start;
    if (la != lb) return la > lb;
    int ra = rank_of(a), rb = rank_of(b);
    if (ra != rb) return ra < rb;
    if (a.start != b.start) return a.start < b.start;
    if (a.pattern_id != b.pattern_id) return a.pattern_id < b.pattern_id;
    return a.matched_token_indices < b.matched_token_indices;
  });

  std::vector<MatchSpan> kept;
  for (std::size_t idx : order) {
    const MatchSpan& candidate = spans[idx];
    bool conflict = std::any_of(kept.begin(), kept.end(), [&](const MatchSpan& k) {
      return spans_overlap(candidate, k);
    });
    if (!conflict) kept.push_back(candidate);
  }
  std::sort(kept.begin(), kept.end(), span_less);
  return kept;
}

std::vector<TokenPattern> load_patterns_json(std::string_view text) {
  nlohmann::json doc;
  try {
    doc = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw PatternParseError(std::string("pattern file is not valid JSON: ") +
                            e.what());
  }
  if (!doc.is_array())
    throw PatternParseError("pattern file must be a JSON array");

  std::vector<TokenPattern> out;
  for (const auto& entry : doc) {
    if (!entry.is_object() || !entry.contains("id") || !entry["id"].is_string())
      throw PatternParseError("each pattern needs a string \"id\"");
    TokenPattern pattern;
    pattern.id = entry["id"].get<std::string>();
    if (entry.contains("max_gap")) {
      if (!entry["max_gap"].is_number_integer())
        throw PatternParseError("pattern '" + pattern.id +
                                "': max_gap must be an integer");
      pattern.max_gap = entry["max_gap"].get<int>();
    }
    if (entry.contains("priority")) {
      if (!entry["priority"].is_number_integer())
        throw PatternParseError("pattern '" + pattern.id +
                                "': priority must be an integer");
      pattern.priority = entry["priority"].get<int>();
    }
    if (!entry.contains("specs") || !entry["specs"].is_array())
      throw PatternParseError("pattern '" + pattern.id +
                              "' needs a \"specs\" array");
    for (const auto& spec_json : entry["specs"]) {
      if (!spec_json.is_object())
        throw PatternParseError("pattern '" + pattern.id +
                                "': each spec must be an object");
      TokenSpec spec;
      for (const auto& [key, value] : spec_json.items()) {
        if (key == "TEXT") {
          std::set<std::string> texts;
          if (value.is_string()) {
            texts.insert(utf8::normalize(value.get<std::string>()));
          } else if (value.is_array()) {
            for (const auto& v : value) {
              if (!v.is_string())
                throw PatternParseError("pattern '" + pattern.id +
                                        "': TEXT entries must be strings");
              texts.insert(utf8::normalize(v.get<std::string>()));
            }
          } else {
            throw PatternParseError("pattern '" + pattern.id +
                                    "': TEXT must be a string or array");
          }
          spec.text_equals = std::move(texts);
        } else if (key == "POS") {
          if (!value.is_object() || !value.contains("IN") ||
              !value["IN"].is_array())
            throw PatternParseError("pattern '" + pattern.id +
                                    "': POS must be {\"IN\": [tags]}");
          std::set<Upos> tags;
          for (const auto& v : value["IN"]) {
            auto tag = v.is_string() ? upos_from_string(v.get<std::string>())
                                     : std::nullopt;
            if (!tag)
              throw PatternParseError("pattern '" + pattern.id +
                                      "': unknown UPOS tag in POS.IN");
            tags.insert(*tag);
          }
          spec.pos_in = std::move(tags);
        } else {
          throw PatternParseError("pattern '" + pattern.id +
                                  "': unsupported spec attribute '" + key +
                                  "'");
        }
      }
      if (!spec.valid())
        throw PatternParseError("pattern '" + pattern.id +
                                "': spec has no usable constraints");
      pattern.specs.push_back(std::move(spec));
    }
    out.push_back(std::move(pattern));
  }
  return out;
}

}  // namespace negcorpus

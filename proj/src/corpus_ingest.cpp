#include "negcorpus/corpus_ingest.hpp"

#include <algorithm>
#include <map>
#include <regex>
#include <set>

namespace negcorpus {

namespace {

std::string_view trim(std::string_view s) {
  std::size_t b = 0, e = s.size();
  while (b < e && (s[b] == ' ' || s[b] == '\t')) ++b;
  while (e > b && (s[e - 1] == ' ' || s[e - 1] == '\t' || s[e - 1] == '\r')) --e;
  return s.substr(b, e - b);
}

bool is_blank(std::string_view line) { return trim(line).empty(); }

bool is_ws_byte(char c) {
  return c == ' ' || c == '\t' || c == '\n' || c == '\r' || c == '\f' ||
         c == '\v';
}

}  // namespace

std::string_view to_string(SpeakerRole role) {
  return role == SpeakerRole::informant ? "informant" : "documenter";
}

std::optional<SpeakerRole> speaker_role_from_string(std::string_view text) {
  if (text == "informante" || text == "informant")
    return SpeakerRole::informant;
  if (text == "documentador" || text == "documenter")
    return SpeakerRole::documenter;
  return std::nullopt;
}

HeaderSchema HeaderSchema::default_schema() {
  HeaderSchema s;
  s.fields = {
      {"id", HeaderTarget::interview_id, R"(.+)", true},
      {"local", HeaderTarget::location, R"(.+)", false},
      {"genero", HeaderTarget::gender, R"(.+)", false},
      {"idade", HeaderTarget::age, R"([1-9][0-9]*)", false},
      {"origem", HeaderTarget::city_of_origin, R"(.+)", false},
      {"residencia", HeaderTarget::city_of_residence, R"(.+)", false},
      {"periodo", HeaderTarget::undergrad_period, R"(.+)", false},
      {"papel", HeaderTarget::role,
       R"(informante|documentador|informant|documenter)", false},
  };
  return s;
}

const HeaderField* HeaderSchema::find(std::string_view key) const {
  for (const auto& f : fields)
    if (f.key == key) return &f;
  return nullptr;
}

namespace {

void assign_field(SpeakerMetadata& meta, const HeaderField& field,
                  std::string_view value, int line) {
  auto set_string = [&](std::optional<std::string>& slot) {
    if (slot)
      throw MalformedField("duplicate header field '@" + field.key + "'", line);
    slot = std::string(value);
  };
  switch (field.target) {
    case HeaderTarget::interview_id:
      if (!meta.interview_id.empty())
        throw MalformedField("duplicate header field '@" + field.key + "'",
                             line);
      meta.interview_id = std::string(value);
      break;
    case HeaderTarget::location:
      set_string(meta.location);
      break;
    case HeaderTarget::gender:
      set_string(meta.gender);
      break;
    case HeaderTarget::age: {
      if (meta.age)
        throw MalformedField("duplicate header field '@" + field.key + "'",
                             line);
      meta.age = std::stoi(std::string(value));
      break;
    }
    case HeaderTarget::city_of_origin:
      set_string(meta.city_of_origin);
      break;
    case HeaderTarget::city_of_residence:
      set_string(meta.city_of_residence);
      break;
    case HeaderTarget::undergrad_period:
      set_string(meta.undergrad_period);
      break;
    case HeaderTarget::role: {
      if (meta.role)
        throw MalformedField("duplicate header field '@" + field.key + "'",
                             line);
      meta.role = speaker_role_from_string(value);
      break;
    }
  }
}

}  // namespace

ParsedHeader parse_header(std::string_view raw, const HeaderSchema& schema) {
  ParsedHeader out;
  std::size_t pos = 0;
  int line_no = 0;
  bool saw_header_line = false;

  auto finish = [&](std::size_t body_offset, int body_line) -> ParsedHeader {
    for (const auto& f : schema.fields) {
      if (!f.required) continue;
      if (f.target == HeaderTarget::interview_id &&
          out.metadata.interview_id.empty())
        throw MalformedField("missing required header field '@" + f.key + "'",
                             line_no == 0 ? 1 : line_no);
    }
    out.body_offset = body_offset;
    out.body_start_line = body_line;
    return out;
  };

  while (pos < raw.size()) {
    std::size_t eol = raw.find('\n', pos);
    std::size_t line_end = (eol == std::string_view::npos) ? raw.size() : eol;
    std::string_view line = raw.substr(pos, line_end - pos);
    ++line_no;

    if (!line.empty() && line.front() == '@') {
      saw_header_line = true;
      std::size_t colon = line.find(':');
      if (colon == std::string_view::npos)
        throw MalformedField("header line has no ':'", line_no);
      std::string_view key = line.substr(1, colon - 1);
      std::string_view value = trim(line.substr(colon + 1));
      const HeaderField* field = schema.find(key);
      if (!field)
        throw MalformedField("unknown header key '@" + std::string(key) + "'",
                             line_no);
      std::regex re(field->value_pattern);
      if (!std::regex_match(value.begin(), value.end(), re))
        throw MalformedField("value '" + std::string(value) +
                                 "' does not match rule for '@" +
                                 std::string(key) + "'",
                             line_no);
      assign_field(out.metadata, *field, value, line_no);
    } else if (is_blank(line)) {
      if (!saw_header_line)
        throw MissingHeader("no '@key: value' header block at top of file",
                            line_no);
      std::size_t body = (eol == std::string_view::npos) ? raw.size() : eol + 1;
      return finish(body, line_no + 1);
    } else {
      if (!saw_header_line)
        throw MissingHeader("no '@key: value' header block at top of file",
                            line_no);
      throw MalformedField("expected '@key: value' or blank delimiter",
                           line_no);
    }
    pos = (eol == std::string_view::npos) ? raw.size() : eol + 1;
  }
  if (!saw_header_line)
    throw MissingHeader("no '@key: value' header block at top of file", 1);
  return finish(raw.size(), line_no + 1);
}

std::string render_header(const SpeakerMetadata& meta,
                          const HeaderSchema& schema) {
  std::string out;
  auto emit = [&](const std::string& key, const std::string& value) {
    out += "@" + key + ": " + value + "\n";
  };
  for (const auto& f : schema.fields) {
    switch (f.target) {
      case HeaderTarget::interview_id:
        if (!meta.interview_id.empty()) emit(f.key, meta.interview_id);
        break;
      case HeaderTarget::location:
        if (meta.location) emit(f.key, *meta.location);
        break;
      case HeaderTarget::gender:
        if (meta.gender) emit(f.key, *meta.gender);
        break;
      case HeaderTarget::age:
        if (meta.age) emit(f.key, std::to_string(*meta.age));
        break;
      case HeaderTarget::city_of_origin:
        if (meta.city_of_origin) emit(f.key, *meta.city_of_origin);
        break;
      case HeaderTarget::city_of_residence:
        if (meta.city_of_residence) emit(f.key, *meta.city_of_residence);
        break;
      case HeaderTarget::undergrad_period:
        if (meta.undergrad_period) emit(f.key, *meta.undergrad_period);
        break;
      case HeaderTarget::role:
        if (meta.role)
          emit(f.key, *meta.role == SpeakerRole::informant ? "informante"
                                                           : "documentador");
        break;
    }
  }
  out += "\n";
  return out;
}

const std::vector<std::string>& default_marker_patterns() {
  static const std::vector<std::string> kDefaults = {
      R"(\(\([^)]*\)\))",  // ((pausa)), ((riso)), ...
      R"(\(\.\.\.\))",     // standalone ellipsis token
  };
  return kDefaults;
}

CleanResult clean_disfluencies(std::string_view raw,
                               const std::vector<std::string>& patterns) {
  std::vector<std::regex> regexes;
  regexes.reserve(patterns.size());
  for (const auto& p : patterns) {
    try {
      regexes.emplace_back(p);
    } catch (const std::regex_error& e) {
      throw InvalidMarkerPattern("marker pattern '" + p +
                                 "' failed to compile: " + e.what());
    }
  }

  const std::size_t n = raw.size();
  std::vector<char> removed(n, 0);
  std::set<std::size_t> marker_starts;

  // Marker matches from every pattern, merged into one removal mask.
  // Starts of merged match regions split the final removal records so each
  // marker stays its own audit entry.
  std::vector<std::pair<std::size_t, std::size_t>> spans;
  for (const auto& re : regexes) {
    auto begin = std::cregex_iterator(raw.data(), raw.data() + n, re);
    for (auto it = begin; it != std::cregex_iterator(); ++it) {
      if (it->length(0) == 0) continue;
      spans.emplace_back(it->position(0), it->position(0) + it->length(0));
    }
  }
  std::sort(spans.begin(), spans.end());
  std::size_t merged_end = 0;
  for (const auto& [b, e] : spans) {
    if (b >= merged_end) marker_starts.insert(b);
    for (std::size_t i = b; i < e; ++i) removed[i] = 1;
    merged_end = std::max(merged_end, e);
  }

  // Whitespace pass over the kept bytes: collapse each run to one
  // representative ('\n' preferred, then ' ', then the first byte) and trim
  // runs touching either end of the kept sequence.
  std::vector<std::size_t> run;  // raw indices of kept whitespace bytes
  bool seen_kept_content = false;
  auto flush_run = [&](bool at_end) {
    if (run.empty()) return;
    if (!seen_kept_content || at_end) {
      for (std::size_t i : run) removed[i] = 1;
    } else {
      std::size_t keep = run.front();
      for (std::size_t i : run)
        if (raw[i] == '\n') {
          keep = i;
          break;
        }
      if (raw[keep] != '\n') {
        for (std::size_t i : run)
          if (raw[i] == ' ') {
            keep = i;
            break;
          }
      }
      for (std::size_t i : run)
        if (i != keep) removed[i] = 1;
    }
    run.clear();
  };
  for (std::size_t i = 0; i < n; ++i) {
    if (removed[i]) continue;
    if (is_ws_byte(raw[i])) {
      run.push_back(i);
    } else {
      flush_run(false);
      seen_kept_content = true;
    }
  }
  flush_run(true);

  // Assemble cleaned text and removal records. A record starts at a removed
  // byte that follows a kept byte, or at a marker boundary.
  CleanResult out;
  for (std::size_t i = 0; i < n; ++i) {
    if (!removed[i]) {
      out.cleaned += raw[i];
      continue;
    }
    bool start_new = (i == 0) || !removed[i - 1] || marker_starts.count(i);
    if (start_new) out.removals.push_back({i, std::string()});
    out.removals.back().text += raw[i];
  }
  return out;
}

std::string reverse_removals(std::string_view cleaned,
                             const std::vector<Removal>& removals) {
  std::string out(cleaned);
  for (const auto& r : removals) out.insert(r.offset, r.text);
  return out;
}

std::vector<Utterance> segment_utterances(std::string_view cleaned) {
  std::vector<Utterance> out;
  int line = 0;
  std::size_t seg_start = 0;

  auto flush = [&](std::size_t end_pos) {
    std::string_view seg = cleaned.substr(seg_start, end_pos - seg_start);
    seg = trim(seg);
    if (seg.empty()) return;
    Utterance u;
    u.index = static_cast<int>(out.size());
    u.text = std::string(seg);
    u.source_line_span = {line, line};
    u.ends_with_question = u.text.back() == '?';
    out.push_back(std::move(u));
  };

  for (std::size_t i = 0; i < cleaned.size(); ++i) {
    char c = cleaned[i];
    if (c == '\n') {
      flush(i);
      ++line;
      seg_start = i + 1;
    } else if (c == '?') {
      flush(i + 1);
      seg_start = i + 1;
    }
  }
  flush(cleaned.size());
  return out;
}

IngestedFile ingest_text(std::string_view raw,
                         const HeaderSchema& schema,
                         const std::vector<std::string>& marker_patterns) {
  // Strip a UTF-8 BOM if the export added one.
  if (raw.size() >= 3 && raw.substr(0, 3) == "\xEF\xBB\xBF") raw.remove_prefix(3);

  ParsedHeader header = parse_header(raw, schema);
  std::string_view body = raw.substr(header.body_offset);
  CleanResult clean = clean_disfluencies(body, marker_patterns);

  IngestedFile out;
  out.document.metadata = std::move(header.metadata);
  out.document.utterances = segment_utterances(clean.cleaned);
  out.document.raw_char_count = body.size();
  out.document.cleaned_char_count = clean.cleaned.size();
  out.removals = std::move(clean.removals);
  return out;
}

}  // namespace negcorpus

#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "negcorpus/errors.hpp"

// Ingestion of sociolinguistic interview transcripts: one speaker track per
// plain-text file, a `@key: value` header block terminated by a blank line,
// then free utterance text carrying disfluency markings that are stripped
// with a lossless audit trail.
namespace negcorpus {

enum class SpeakerRole { informant, documenter };

std::string_view to_string(SpeakerRole role);
std::optional<SpeakerRole> speaker_role_from_string(std::string_view text);

struct SpeakerMetadata {
  std::string interview_id;
  std::optional<std::string> location;
  std::optional<std::string> gender;
  std::optional<int> age;  // > 0 when present
  std::optional<std::string> city_of_origin;
  std::optional<std::string> city_of_residence;
  std::optional<std::string> undergrad_period;
  std::optional<SpeakerRole> role;

  bool operator==(const SpeakerMetadata&) const = default;
};

struct Utterance {
  int index = 0;                            // 0-based within the document
  std::string text;                         // cleaned
  std::pair<int, int> source_line_span{0, 0};  // 0-based lines of the cleaned body
  bool ends_with_question = false;
};

struct TranscriptDocument {
  SpeakerMetadata metadata;
  std::vector<Utterance> utterances;
  std::size_t raw_char_count = 0;      // body bytes before cleaning
  std::size_t cleaned_char_count = 0;  // body bytes after cleaning
};

class MissingHeader : public Error {
 public:
  MissingHeader(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class MalformedField : public Error {
 public:
  MalformedField(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class InvalidMarkerPattern : public Error {
 public:
  using Error::Error;
};

// Which SpeakerMetadata member a header key feeds.
enum class HeaderTarget {
  interview_id,
  location,
  gender,
  age,
  city_of_origin,
  city_of_residence,
  undergrad_period,
  role,
};

struct HeaderField {
  std::string key;            // text between '@' and ':'
  HeaderTarget target;
  std::string value_pattern;  // full-match regex for the trimmed value
  bool required = false;
};

struct HeaderSchema {
  std::vector<HeaderField> fields;

  // The shipped schema: @id, @local, @genero, @idade, @origem,
  // @residencia, @periodo, @papel; only @id required.
  static HeaderSchema default_schema();

  const HeaderField* find(std::string_view key) const;
};

struct ParsedHeader {
  SpeakerMetadata metadata;
  std::size_t body_offset = 0;  // byte offset of the first body line
  int body_start_line = 0;      // 1-based line number of the first body line
};

// Reads the header block at the top of a transcript file. The block is a
// run of `@key: value` lines ended by a blank line (or EOF). Throws
// MissingHeader when the file does not start with one, MalformedField when
// a line fails its schema rule.
ParsedHeader parse_header(std::string_view raw_file_text,
                          const HeaderSchema& schema = HeaderSchema::default_schema());

// Fixture writer: the exact inverse of parse_header on trimmed values.
std::string render_header(const SpeakerMetadata& metadata,
                          const HeaderSchema& schema = HeaderSchema::default_schema());

struct Removal {
  std::size_t offset;  // byte offset into the raw text
  std::string text;    // the removed bytes
};

struct CleanResult {
  std::string cleaned;
  std::vector<Removal> removals;  // ascending by offset
};

// Marker regexes removed by default: double-parenthesized annotations and
// standalone ellipsis tokens.
const std::vector<std::string>& default_marker_patterns();

// Deletes every marker match, collapses whitespace runs to a single space
// (or newline, which stays an utterance boundary), and trims the edges.
// Every dropped byte is recorded; reverse_removals(cleaned, removals)
// rebuilds the input byte for byte.
CleanResult clean_disfluencies(
    std::string_view raw_text,
    const std::vector<std::string>& marker_patterns = default_marker_patterns());

// Reinserts removals (ascending offsets) into the cleaned text.
std::string reverse_removals(std::string_view cleaned,
                             const std::vector<Removal>& removals);

// Splits cleaned text into utterances at newlines and after each '?'.
std::vector<Utterance> segment_utterances(std::string_view cleaned_text);

struct IngestedFile {
  TranscriptDocument document;
  std::vector<Removal> removals;
};

// Full per-file pipeline: header, cleaning, segmentation. Strips a UTF-8
// BOM if present.
IngestedFile ingest_text(
    std::string_view raw_file_text,
    const HeaderSchema& schema = HeaderSchema::default_schema(),
    const std::vector<std::string>& marker_patterns = default_marker_patterns());

}  // namespace negcorpus

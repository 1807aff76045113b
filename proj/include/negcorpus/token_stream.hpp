#pragma once

#include <cstddef>
#include <filesystem>
#include <optional>
#include <string>
#include <string_view>
#include <unordered_map>
#include <utility>
#include <vector>

#include "negcorpus/corpus_ingest.hpp"
#include "negcorpus/errors.hpp"

// POS-tagged token sequences, produced either by the built-in tokenizer plus
// lexicon tagger or read from externally tagged CoNLL-U files.
namespace negcorpus {

// The 17 Universal POS categories.
enum class Upos {
  ADJ, ADP, ADV, AUX, CCONJ, DET, INTJ, NOUN, NUM, PART, PRON, PROPN,
  PUNCT, SCONJ, SYM, VERB, X,
};

std::string_view to_string(Upos tag);
std::optional<Upos> upos_from_string(std::string_view text);

struct Token {
  std::string text;            // surface form
  std::string norm;            // lowercased, diacritics composed
  Upos upos = Upos::X;
  int index = 0;               // position in the utterance
  std::size_t char_start = 0;  // codepoint offsets into the utterance text
  std::size_t char_end = 0;
  int utterance_index = 0;
};

enum class TagSource { conllu, lexicon_tagger };

struct TaggedUtterance {
  int utterance_index = 0;
  std::vector<Token> tokens;
  TagSource tag_source = TagSource::lexicon_tagger;
  std::string text;  // the source text the char offsets point into
};

struct RawToken {
  std::string text;
  std::size_t char_start = 0;
  std::size_t char_end = 0;
};

// Whitespace split with '?' broken out as its own token. Offsets are
// codepoint offsets; slicing the utterance text by them gives the token
// back unchanged.
std::vector<RawToken> tokenize(std::string_view utterance_text);

class LexiconNotLoaded : public Error {
 public:
  using Error::Error;
};

// Wordform -> UPOS table plus suffix fallback rules. File format: one
// `form<TAB>UPOS` entry per line; a form starting with '-' is a suffix rule
// (longest suffix wins, and only proper suffixes apply). '#' starts a
// comment line.
class VerbLexicon {
 public:
  VerbLexicon() = default;

  static VerbLexicon from_text(std::string_view tsv_text);
  static VerbLexicon load(const std::filesystem::path& file);

  bool loaded() const { return loaded_; }
  std::size_t form_count() const { return forms_.size(); }
  std::size_t suffix_rule_count() const { return suffixes_.size(); }

  std::optional<Upos> lookup(const std::string& norm) const;
  std::optional<Upos> tag_by_suffix(const std::string& norm) const;

 private:
  std::unordered_map<std::string, Upos> forms_;
  std::vector<std::pair<std::string, Upos>> suffixes_;  // longest first
  bool loaded_ = false;
};

// Tags raw tokens: "não" is always ADV, "?" is PUNCT, exact lexicon hits
// take the lexicon tag, then suffix rules, then X.
TaggedUtterance tag_with_lexicon(const std::vector<RawToken>& tokens,
                                 int utterance_index, std::string text,
                                 const VerbLexicon& lexicon);

TaggedUtterance tag_with_lexicon(const Utterance& utterance,
                                 const VerbLexicon& lexicon);

class MalformedConllu : public Error {
 public:
  MalformedConllu(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// CoNLL-U reader: FORM and UPOS columns, blank-line sentence separation,
// '#' comments. Multiword ranges ("1-2") and empty nodes ("1.1") are
// skipped in favor of their word rows. Token text is rebuilt by joining
// forms with single spaces.
std::vector<TaggedUtterance> read_conllu(std::string_view file_text);

// Fixture writer for round-trips; fills unused columns with '_'.
std::string write_conllu(const std::vector<TaggedUtterance>& utterances);

}  // namespace negcorpus

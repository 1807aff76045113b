#include "negcorpus/token_stream.hpp"

#include <algorithm>
#include <array>
#include <fstream>
#include <sstream>

#include "negcorpus/utf8.hpp"

namespace negcorpus {

namespace {

constexpr std::array<std::string_view, 17> kUposNames = {
    "ADJ",  "ADP",   "ADV",  "AUX",   "CCONJ", "DET",  "INTJ", "NOUN", "NUM",
    "PART", "PRON",  "PROPN", "PUNCT", "SCONJ", "SYM",  "VERB", "X",
};

}  // namespace

std::string_view to_string(Upos tag) {
  return kUposNames[static_cast<std::size_t>(tag)];
}

std::optional<Upos> upos_from_string(std::string_view text) {
  for (std::size_t i = 0; i < kUposNames.size(); ++i)
    if (kUposNames[i] == text) return static_cast<Upos>(i);
  return std::nullopt;
}

std::vector<RawToken> tokenize(std::string_view text) {
  std::vector<RawToken> out;
  std::size_t byte = 0;
  std::size_t cp_index = 0;
  std::size_t tok_byte = 0, tok_cp = 0;
  bool in_token = false;

  auto flush = [&](std::size_t end_byte, std::size_t end_cp) {
    if (!in_token) return;
    out.push_back({std::string(text.substr(tok_byte, end_byte - tok_byte)),
                   tok_cp, end_cp});
    in_token = false;
  };

  while (byte < text.size()) {
    std::size_t start_byte = byte;
    char32_t cp = utf8::decode(text, byte);
    if (utf8::is_space(cp)) {
      flush(start_byte, cp_index);
    } else if (cp == U'?') {
      flush(start_byte, cp_index);
      out.push_back({"?", cp_index, cp_index + 1});
    } else if (!in_token) {
      in_token = true;
      tok_byte = start_byte;
      tok_cp = cp_index;
    }
    ++cp_index;
  }
  flush(text.size(), cp_index);
  return out;
}

VerbLexicon VerbLexicon::from_text(std::string_view tsv) {
  VerbLexicon lex;
  lex.loaded_ = true;
  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= tsv.size()) {
    std::size_t eol = tsv.find('\n', pos);
    std::size_t end = (eol == std::string_view::npos) ? tsv.size() : eol;
    std::string_view line = tsv.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);
    if (!line.empty() && line.front() != '#') {
      std::size_t tab = line.find('\t');
      if (tab == std::string_view::npos)
        throw Error("lexicon line " + std::to_string(line_no) +
                    ": expected form<TAB>UPOS");
      std::string form = utf8::normalize(line.substr(0, tab));
      auto tag = upos_from_string(line.substr(tab + 1));
      if (form.empty() || !tag)
        throw Error("lexicon line " + std::to_string(line_no) +
                    ": bad entry '" + std::string(line) + "'");
      if (form.front() == '-' && form.size() > 1)
        lex.suffixes_.emplace_back(form.substr(1), *tag);
      else
        lex.forms_[form] = *tag;
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  std::stable_sort(lex.suffixes_.begin(), lex.suffixes_.end(),
                   [](const auto& a, const auto& b) {
                     return a.first.size() > b.first.size();
                   });
  return lex;
}

VerbLexicon VerbLexicon::load(const std::filesystem::path& file) {
  std::ifstream in(file, std::ios::binary);
  if (!in) throw Error("cannot open lexicon file: " + file.string());
  std::ostringstream buf;
  buf << in.rdbuf();
  return from_text(buf.str());
}

std::optional<Upos> VerbLexicon::lookup(const std::string& norm) const {
  auto it = forms_.find(norm);
  if (it == forms_.end()) return std::nullopt;
  return it->second;
}

std::optional<Upos> VerbLexicon::tag_by_suffix(const std::string& norm) const {
  for (const auto& [suffix, tag] : suffixes_) {
    if (norm.size() > suffix.size() && norm.ends_with(suffix)) return tag;
  }
  return std::nullopt;
}

TaggedUtterance tag_with_lexicon(const std::vector<RawToken>& raw_tokens,
                                 int utterance_index, std::string text,
                                 const VerbLexicon& lexicon) {
  if (!lexicon.loaded()) throw LexiconNotLoaded("verb lexicon not loaded");
  TaggedUtterance out;
  out.utterance_index = utterance_index;
  out.tag_source = TagSource::lexicon_tagger;
  out.text = std::move(text);
  out.tokens.reserve(raw_tokens.size());
  for (std::size_t i = 0; i < raw_tokens.size(); ++i) {
    Token t;
    t.text = raw_tokens[i].text;
    t.norm = utf8::normalize(t.text);
    t.index = static_cast<int>(i);
    t.char_start = raw_tokens[i].char_start;
    t.char_end = raw_tokens[i].char_end;
    t.utterance_index = utterance_index;
    if (t.norm == "não") {
      t.upos = Upos::ADV;
    } else if (t.norm == "?") {
      t.upos = Upos::PUNCT;
    } else if (auto hit = lexicon.lookup(t.norm)) {
      t.upos = *hit;
    } else if (auto suffix_hit = lexicon.tag_by_suffix(t.norm)) {
      t.upos = *suffix_hit;
    } else {
      t.upos = Upos::X;
    }
    out.tokens.push_back(std::move(t));
  }
  return out;
}

TaggedUtterance tag_with_lexicon(const Utterance& utterance,
                                 const VerbLexicon& lexicon) {
  return tag_with_lexicon(tokenize(utterance.text), utterance.index,
                          utterance.text, lexicon);
}

namespace {

bool all_digits(std::string_view s) {
  if (s.empty()) return false;
  return std::all_of(s.begin(), s.end(),
                     [](char c) { return c >= '0' && c <= '9'; });
}

// ID column classification: word row, skippable row (range or empty node),
// or malformed.
enum class IdKind { word, skip, bad };

IdKind classify_id(std::string_view id) {
  if (all_digits(id)) return IdKind::word;
  std::size_t dash = id.find('-');
  if (dash != std::string_view::npos)
    return (all_digits(id.substr(0, dash)) && all_digits(id.substr(dash + 1)))
               ? IdKind::skip
               : IdKind::bad;
  std::size_t dot = id.find('.');
  if (dot != std::string_view::npos)
    return (all_digits(id.substr(0, dot)) && all_digits(id.substr(dot + 1)))
               ? IdKind::skip
               : IdKind::bad;
  return IdKind::bad;
}

}  // namespace

std::vector<TaggedUtterance> read_conllu(std::string_view text) {
  std::vector<TaggedUtterance> out;
  std::vector<std::pair<std::string, Upos>> pending;  // (form, upos)

  auto finalize = [&] {
    if (pending.empty()) return;
    TaggedUtterance utt;
    utt.utterance_index = static_cast<int>(out.size());
    utt.tag_source = TagSource::conllu;
    std::size_t cp = 0;
    for (std::size_t i = 0; i < pending.size(); ++i) {
      if (i) {
        utt.text += ' ';
        ++cp;
      }
      Token t;
      t.text = pending[i].first;
      t.norm = utf8::normalize(t.text);
      t.upos = pending[i].second;
      t.index = static_cast<int>(i);
      t.char_start = cp;
      cp += utf8::count(t.text);
      t.char_end = cp;
      t.utterance_index = utt.utterance_index;
      utt.text += t.text;
      utt.tokens.push_back(std::move(t));
    }
    out.push_back(std::move(utt));
    pending.clear();
  };

  std::size_t pos = 0;
  int line_no = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::size_t end = (eol == std::string_view::npos) ? text.size() : eol;
    std::string_view line = text.substr(pos, end - pos);
    ++line_no;
    if (!line.empty() && line.back() == '\r') line.remove_suffix(1);

    if (line.empty()) {
      finalize();
    } else if (line.front() != '#') {
      std::vector<std::string_view> cols;
      std::size_t col_start = 0;
      for (std::size_t i = 0; i <= line.size(); ++i) {
        if (i == line.size() || line[i] == '\t') {
          cols.push_back(line.substr(col_start, i - col_start));
          col_start = i + 1;
        }
      }
      if (cols.size() != 10)
        throw MalformedConllu("expected 10 tab-separated columns, got " +
                                  std::to_string(cols.size()),
                              line_no);
      switch (classify_id(cols[0])) {
        case IdKind::word: {
          Upos tag = Upos::X;
          if (cols[3] != "_") {
            auto parsed = upos_from_string(cols[3]);
            if (!parsed)
              throw MalformedConllu(
                  "unknown UPOS tag '" + std::string(cols[3]) + "'", line_no);
            tag = *parsed;
          }
          pending.emplace_back(std::string(cols[1]), tag);
          break;
        }
        case IdKind::skip:
          break;
        case IdKind::bad:
          throw MalformedConllu("bad token ID '" + std::string(cols[0]) + "'",
                                line_no);
      }
    }
    if (eol == std::string_view::npos) break;
    pos = eol + 1;
  }
  finalize();
  return out;
}

std::string write_conllu(const std::vector<TaggedUtterance>& utterances) {
  std::string out;
  for (const auto& utt : utterances) {
    out += "# text = " + utt.text + "\n";
    for (std::size_t i = 0; i < utt.tokens.size(); ++i) {
      const Token& t = utt.tokens[i];
      out += std::to_string(i + 1) + "\t" + t.text + "\t_\t" +
             std::string(to_string(t.upos)) + "\t_\t_\t_\t_\t_\t_\n";
    }
    out += "\n";
  }
  return out;
}

}  // namespace negcorpus

#include "negcorpus/utf8.hpp"

namespace negcorpus::utf8 {

namespace {
constexpr char32_t kReplacement = 0xFFFD;
}

char32_t decode(std::string_view text, std::size_t& i) {
  const auto b0 = static_cast<unsigned char>(text[i]);
  if (b0 < 0x80) {
    ++i;
    return b0;
  }
  int len;
  char32_t cp;
  if ((b0 & 0xE0) == 0xC0) {
    len = 2;
    cp = b0 & 0x1F;
  } else if ((b0 & 0xF0) == 0xE0) {
    len = 3;
    cp = b0 & 0x0F;
  } else if ((b0 & 0xF8) == 0xF0) {
    len = 4;
    cp = b0 & 0x07;
  } else {
    ++i;
    return kReplacement;
  }
  if (i + len > text.size()) {
    ++i;
    return kReplacement;
  }
  for (int k = 1; k < len; ++k) {
    const auto bk = static_cast<unsigned char>(text[i + k]);
    if ((bk & 0xC0) != 0x80) {
      ++i;
      return kReplacement;
    }
    cp = (cp << 6) | (bk & 0x3F);
  }
  i += len;
  return cp;
}

std::string encode(char32_t cp) {
  std::string out;
  if (cp < 0x80) {
    out.push_back(static_cast<char>(cp));
  } else if (cp < 0x800) {
    out.push_back(static_cast<char>(0xC0 | (cp >> 6)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else if (cp < 0x10000) {
    out.push_back(static_cast<char>(0xE0 | (cp >> 12)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  } else {
    out.push_back(static_cast<char>(0xF0 | (cp >> 18)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 12) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | ((cp >> 6) & 0x3F)));
    out.push_back(static_cast<char>(0x80 | (cp & 0x3F)));
  }
  return out;
}

std::vector<char32_t> decode_all(std::string_view text) {
  std::vector<char32_t> out;
  std::size_t i = 0;
  while (i < text.size()) out.push_back(decode(text, i));
  return out;
}

std::string encode_all(const std::vector<char32_t>& cps) {
  std::string out;
  for (char32_t cp : cps) out += encode(cp);
  return out;
}

std::size_t count(std::string_view text) {
  std::size_t i = 0, n = 0;
  while (i < text.size()) {
    decode(text, i);
    ++n;
  }
  return n;
}

std::string substr(std::string_view text, std::size_t begin, std::size_t end) {
  std::size_t i = 0, cp = 0;
  std::size_t byte_begin = text.size(), byte_end = text.size();
  while (i < text.size()) {
    if (cp == begin) byte_begin = i;
    if (cp == end) {
      byte_end = i;
      break;
    }
    decode(text, i);
    ++cp;
  }
  if (cp == begin) byte_begin = text.size();
  if (byte_begin > byte_end) return {};
  return std::string(text.substr(byte_begin, byte_end - byte_begin));
}

bool is_space(char32_t cp) {
  return cp == U' ' || cp == U'\t' || cp == U'\n' || cp == U'\r' ||
         cp == U'\f' || cp == U'\v';
}

char32_t to_lower(char32_t c) {
  if (c >= U'A' && c <= U'Z') return c + 32;
  // Latin-1 supplement, skipping the multiplication sign.
  if (c >= 0x00C0 && c <= 0x00DE && c != 0x00D7) return c + 32;
  if (c == 0x0178) return 0x00FF;  // Ÿ
  // Latin Extended-A upper/lower pairs.
  if (c >= 0x0100 && c <= 0x0137) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x0139 && c <= 0x0148) return (c % 2 == 1) ? c + 1 : c;
  if (c >= 0x014A && c <= 0x0177) return (c % 2 == 0) ? c + 1 : c;
  if (c >= 0x0179 && c <= 0x017E) return (c % 2 == 1) ? c + 1 : c;
  return c;
}

char32_t compose(char32_t base, char32_t mark) {
  switch (mark) {
    case 0x0300:  // grave
      switch (base) {
        case U'a': return U'à';
        case U'e': return U'è';
        case U'i': return U'ì';
        case U'o': return U'ò';
        case U'u': return U'ù';
      }
      break;
    case 0x0301:  // acute
      switch (base) {
        case U'a': return U'á';
        case U'e': return U'é';
        case U'i': return U'í';
        case U'o': return U'ó';
        case U'u': return U'ú';
        case U'y': return U'ý';
      }
      break;
    case 0x0302:  // circumflex
      switch (base) {
        case U'a': return U'â';
        case U'e': return U'ê';
        case U'i': return U'î';
        case U'o': return U'ô';
        case U'u': return U'û';
      }
      break;
    case 0x0303:  // tilde
      switch (base) {
        case U'a': return U'ã';
        case U'o': return U'õ';
        case U'n': return U'ñ';
      }
      break;
    case 0x0308:  // diaeresis
      switch (base) {
        case U'a': return U'ä';
        case U'e': return U'ë';
        case U'i': return U'ï';
        case U'o': return U'ö';
        case U'u': return U'ü';
        case U'y': return U'ÿ';
      }
      break;
    case 0x0327:  // cedilla
      if (base == U'c') return U'ç';
      break;
  }
  return 0;
}

std::string normalize(std::string_view text) {
  std::vector<char32_t> out;
  out.reserve(text.size());
  std::size_t i = 0;
  while (i < text.size()) {
    char32_t cp = to_lower(decode(text, i));
    if (!out.empty()) {
      if (char32_t composed = compose(out.back(), cp)) {
        out.back() = composed;
        continue;
      }
    }
    out.push_back(cp);
  }
  return encode_all(out);
}

}  // namespace negcorpus::utf8

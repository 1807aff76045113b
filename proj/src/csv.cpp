#include "negcorpus/csv.hpp"

namespace negcorpus::csv {

std::string escape_field(std::string_view field) {
  const bool needs_quotes =
      field.find_first_of(",\"\r\n") != std::string_view::npos;
  if (!needs_quotes) return std::string(field);
  std::string out = "\"";
  for (char c : field) {
    if (c == '"') out += "\"\"";
    else out += c;
  }
  out += '"';
  return out;
}

std::string write_row(const std::vector<std::string>& fields) {
  std::string out;
  for (std::size_t i = 0; i < fields.size(); ++i) {
    if (i) out += ',';
    out += escape_field(fields[i]);
  }
  out += '\n';
  return out;
}

std::vector<std::vector<std::string>> parse(std::string_view text) {
  std::vector<std::vector<std::string>> rows;
  std::vector<std::string> row;
  std::string field;
  bool in_quotes = false;
  bool field_was_quoted = false;
  bool row_has_content = false;
  int line = 1;

  auto end_field = [&] {
    row.push_back(std::move(field));
    field.clear();
    field_was_quoted = false;
  };
  auto end_row = [&] {
    end_field();
    rows.push_back(std::move(row));
    row.clear();
    row_has_content = false;
  };

  std::size_t i = 0;
  while (i < text.size()) {
    char c = text[i];
    if (in_quotes) {
      if (c == '"') {
        if (i + 1 < text.size() && text[i + 1] == '"') {
          field += '"';
          i += 2;
        } else {
          in_quotes = false;
          ++i;
        }
      } else {
        if (c == '\n') ++line;
        field += c;
        ++i;
      }
      continue;
    }
    switch (c) {
      case '"':
        if (!field.empty() || field_was_quoted)
          throw MalformedCsv("quote inside unquoted field", line);
        in_quotes = true;
        field_was_quoted = true;
        row_has_content = true;
        ++i;
        break;
      case ',':
        end_field();
        row_has_content = true;
        ++i;
        break;
      case '\r':
        ++i;
        break;
      case '\n':
        if (row_has_content || !field.empty() || !row.empty()) end_row();
        ++line;
        ++i;
        break;
      default:
        field += c;
        row_has_content = true;
        ++i;
        break;
    }
  }
  if (in_quotes) throw MalformedCsv("unterminated quoted field", line);
  if (row_has_content || !field.empty() || !row.empty()) end_row();
  return rows;
}

}  // namespace negcorpus::csv

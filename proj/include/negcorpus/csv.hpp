#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "negcorpus/errors.hpp"

// RFC 4180 CSV, UTF-8, LF line endings on output.
namespace negcorpus::csv {

class MalformedCsv : public Error {
 public:
  MalformedCsv(const std::string& what, int line)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

// Quotes a field when it contains a comma, quote, or line break.
std::string escape_field(std::string_view field);

// One CSV record, terminated with '\n'.
std::string write_row(const std::vector<std::string>& fields);

// Parses a whole CSV document. Accepts LF and CRLF input.
std::vector<std::vector<std::string>> parse(std::string_view text);

}  // namespace negcorpus::csv

#pragma once

#include <stdexcept>
#include <string>

namespace negcorpus {

// Base class for every error raised by this library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Raised by agreement and evaluation when an input grid or sequence holds
// no usable data (empty, or too few annotators/labels to compute anything).
class EmptyMatrix : public Error {
 public:
  using Error::Error;
};

}  // namespace negcorpus

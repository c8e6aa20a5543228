#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace condlog {

// Malformed user input: bad text, bad documents, violated preconditions.
class InputError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A configured enumeration ceiling would be exceeded.
class ResourceLimit : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct SourceSpan {
  std::size_t start = 0;
  std::size_t end = 0;
};

class ParseError : public InputError {
 public:
  ParseError(SourceSpan span, const std::string& message)
      : InputError(message + " at " + std::to_string(span.start) + ".." +
                   std::to_string(span.end)),
        span_(span) {}
  SourceSpan span() const { return span_; }

 private:
  SourceSpan span_;
};

}  // namespace condlog

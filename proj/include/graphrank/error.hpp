#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace graphrank {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed or unreadable user input. Carries the source location when known.
class InputError : public Error {
 public:
  InputError(std::string source, std::size_t line, const std::string& what)
      : Error(source.empty() ? what
                             : source + ":" + std::to_string(line) + ": " + what),
        source_(std::move(source)),
        line_(line) {}
  explicit InputError(const std::string& what) : InputError("", 0, what) {}

  const std::string& source() const { return source_; }
  std::size_t line() const { return line_; }

 private:
  std::string source_;
  std::size_t line_ = 0;
};

// A concept-level statistic was requested for a concept the document never mentions.
class AbsentConceptError : public Error {
 public:
  using Error::Error;
};

// A query term or topic could not be mapped onto the concept vocabulary.
class UntranslatableError : public Error {
 public:
  using Error::Error;
};

class UnsupportedArityError : public Error {
 public:
  using Error::Error;
};

class MissingSpecificityError : public Error {
 public:
  using Error::Error;
};

// Violated internal contract (e.g. overlapping full and partial lists).
class InternalInconsistency : public Error {
 public:
  using Error::Error;
};

}  // namespace graphrank

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace svsm {

/// Base class for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed input file. Carries the file and 1-based line number.
class ParseError : public Error {
 public:
  ParseError(std::string file, std::size_t line, const std::string& what)
      : Error(file + ":" + std::to_string(line) + ": " + what),
        file_(std::move(file)),
        line_(line) {}

  const std::string& file() const noexcept { return file_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string file_;
  std::size_t line_;
};

/// A record names a class, sense, entity or relation that does not exist.
class ReferenceError : public Error {
 public:
  using Error::Error;
};

/// The class taxonomy or the hypernym graph contains a cycle.
class CycleError : public Error {
 public:
  using Error::Error;
};

/// An operation was called outside its documented domain.
class PreconditionError : public Error {
 public:
  using Error::Error;
};

/// Index container could not be read back (bad magic, version, checksum).
class FormatError : public Error {
 public:
  using Error::Error;
};

class VersionError : public FormatError {
 public:
  using FormatError::FormatError;
};

class CorruptFileError : public FormatError {
 public:
  using FormatError::FormatError;
};

}  // namespace svsm

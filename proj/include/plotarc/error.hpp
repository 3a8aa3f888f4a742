#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace plotarc {

// Base of every error the library throws.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// Malformed input file content. Carries the 1-based line number when known.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t line)
      : Error(line ? "line " + std::to_string(line) + ": " + what : what), line_(line) {}
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

// Missing or unreadable files, bad metadata rows.
class LoadError : public Error {
 public:
  using Error::Error;
};

// Parameter outside the range an operation accepts.
class ConfigError : public Error {
 public:
  using Error::Error;
};

class SegmentationError : public Error {
 public:
  using Error::Error;
};

class DimensionError : public Error {
 public:
  using Error::Error;
};

class TrainingError : public Error {
 public:
  using Error::Error;
};

class GenerationError : public Error {
 public:
  using Error::Error;
};

}  // namespace plotarc

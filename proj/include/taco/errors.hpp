#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace taco {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed text. `offset` is the byte position where parsing failed.
class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(what + " at offset " + std::to_string(offset)), offset_(offset) {}

  std::size_t offset() const noexcept { return offset_; }

 private:
  std::size_t offset_;
};

/// A coordinate fell outside the 16384 x 1048576 grid.
class BoundsError : public Error {
 public:
  using Error::Error;
};

/// Graph mutation rejected (e.g. a formula referencing its own cell).
class GraphError : public Error {
 public:
  using Error::Error;
};

/// Serialized graph failed validation; `path()` names the offending field.
class ImportError : public Error {
 public:
  ImportError(const std::string& path, const std::string& what)
      : Error(path + ": " + what), path_(path) {}

  const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

}  // namespace taco

namespace taco {

/// Sheet dump rejected; `line()` is 1-based.
class DumpError : public Error {
 public:
  DumpError(std::size_t line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}

  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

}  // namespace taco

#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace wfts {

/// A model violates a well-formedness rule (unknown name, empty product set, ...).
class ModelError : public std::runtime_error {
public:
  using std::runtime_error::runtime_error;
};

/// Lexical or syntax error in a model document; `what()` is prefixed with `line:col`.
class ParseError : public ModelError {
public:
  ParseError(std::size_t line, std::size_t column, const std::string& message)
      : ModelError(std::to_string(line) + ":" + std::to_string(column) + ": " + message),
        line_(line), column_(column) {}

  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

private:
  std::size_t line_;
  std::size_t column_;
};

} // namespace wfts

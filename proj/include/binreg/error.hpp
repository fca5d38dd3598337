#pragma once

#include <stdexcept>
#include <string>

namespace binreg {

enum class ErrorKind {
  Domain,         // argument outside a function's documented domain
  Dimension,      // operands do not conform
  RankDeficient,  // singular weighted cross-product
  Validation,     // dataset or config violates an invariant
  Parse,          // malformed CSV / config text
  Io,
};

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what)
      : std::runtime_error(what), kind_(kind) {}

  ErrorKind kind() const noexcept { return kind_; }

 private:
  ErrorKind kind_;
};

class DomainError : public Error {
 public:
  explicit DomainError(const std::string& what) : Error(ErrorKind::Domain, what) {}
};

class DimensionError : public Error {
 public:
  explicit DimensionError(const std::string& what) : Error(ErrorKind::Dimension, what) {}
};

/// Raised when the Cholesky factorization of X'WX meets a non-positive pivot.
/// `column()` carries the label (or index) of the first offending column.
class RankDeficientError : public Error {
 public:
  RankDeficientError(std::string column, const std::string& what)
      : Error(ErrorKind::RankDeficient, what), column_(std::move(column)) {}

  const std::string& column() const noexcept { return column_; }

 private:
  std::string column_;
};

class ValidationError : public Error {
 public:
  explicit ValidationError(const std::string& what) : Error(ErrorKind::Validation, what) {}
};

class ParseError : public Error {
 public:
  explicit ParseError(const std::string& what) : Error(ErrorKind::Parse, what) {}
};

class IoError : public Error {
 public:
  explicit IoError(const std::string& what) : Error(ErrorKind::Io, what) {}
};

}  // namespace binreg

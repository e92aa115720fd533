#pragma once

#include <stdexcept>
#include <string>

namespace qgkit {

// Base class for everything thrown by the library.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// A row or column of a multiplication table repeats a symbol.
class NotLatin : public Error {
 public:
  enum class Kind { Row, Column };

  NotLatin(Kind kind, int index)
      : Error(std::string(kind == Kind::Row ? "row " : "column ") +
              std::to_string(index) + " is not a permutation"),
        kind_(kind),
        index_(index) {}

  Kind kind() const { return kind_; }
  int index() const { return index_; }

 private:
  Kind kind_;
  int index_;
};

class DimensionMismatch : public Error {
 public:
  using Error::Error;
};

class NotHomomorphism : public Error {
 public:
  using Error::Error;
};

class NotEpimorphism : public Error {
 public:
  using Error::Error;
};

// Fibers of a quasigroup homomorphism are always uniform; seeing this means
// the input tables were corrupted.
class NonUniformFibers : public Error {
 public:
  using Error::Error;
};

class NotCompatible : public Error {
 public:
  using Error::Error;
};

class OrderTooLarge : public Error {
 public:
  using Error::Error;
};

class InvalidSystem : public Error {
 public:
  using Error::Error;
};

class InconsistentDecomposition : public Error {
 public:
  using Error::Error;
};

// Two routes that must agree by a theorem disagreed at runtime.
class InconsistentPredicates : public Error {
 public:
  using Error::Error;
};

class PreconditionFailed : public Error {
 public:
  using Error::Error;
};

class PatternConflict : public Error {
 public:
  using Error::Error;
};

class NotGroup : public Error {
 public:
  using Error::Error;
};

class NotLfInstance : public Error {
 public:
  using Error::Error;
};

class IsotopyFailed : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

}  // namespace qgkit

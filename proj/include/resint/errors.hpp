#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace resint {

enum class ErrorKind {
  Parse,
  RingMismatch,
  UnknownVariable,
  UnboundVariable,
  InexactDivision,
  BudgetExceeded,
  FactorizationScope,
  Dimension,
  EmptyVariety,
  NonCompleteIntersection,
  InvalidCenter,
  ContainedInCenter,
  ImproperIntersection,
  IntersectionScope,
  NotSmooth,
  Complementarity,
  AnnotationRequired,
  InconsistentStrata,
  NonstandardPerversity,
  Precondition,
  Validation,
};

const char* kind_name(ErrorKind k);

class Error : public std::runtime_error {
 public:
  Error(ErrorKind kind, const std::string& what) : std::runtime_error(what), kind_(kind) {}
  ErrorKind kind() const { return kind_; }

 private:
  ErrorKind kind_;
};

class ParseError : public Error {
 public:
  ParseError(const std::string& what, std::size_t offset)
      : Error(ErrorKind::Parse, what + " at offset " + std::to_string(offset)), offset_(offset) {}
  std::size_t offset() const { return offset_; }

 private:
  std::size_t offset_;
};

}  // namespace resint

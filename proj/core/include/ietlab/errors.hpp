#pragma once

#include <stdexcept>
#include <string>

namespace ietlab {

// Base for everything thrown by the library. The CLI maps subtrees to exit
// codes: DomainError -> 2, ResourceLimit -> 3.
class Error : public std::runtime_error {
public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

// Malformed object construction: mismatched sizes, non-bijective data,
// reducible permutations, bad serialized input.
class StructuralError : public Error {
public:
  using Error::Error;
};

// Valid objects fed to an operation outside its domain.
class DomainError : public Error {
public:
  using Error::Error;
};

// Numeric comparison cannot be decided at the declared generator precision.
class PrecisionExhausted : public DomainError {
public:
  using DomainError::DomainError;
};

// Parameter point violates the constraint region of a chart or family.
class ChartDomainError : public DomainError {
public:
  using DomainError::DomainError;
};

// Projective point lies outside the requested gasket cell.
class CellViolationError : public DomainError {
public:
  using DomainError::DomainError;
};

// Induction step undefined because the two candidate lengths coincide.
class TieError : public DomainError {
public:
  using DomainError::DomainError;
};

// A configured cap (piece count, step budget) was hit before completion.
class ResourceLimit : public Error {
public:
  using Error::Error;
};

} // namespace ietlab

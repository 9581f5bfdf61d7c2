#pragma once

#include <stdexcept>
#include <string>

namespace adelic {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct AlgebraMismatch : Error {
  AlgebraMismatch() : Error("operands belong to different algebras") {}
};

// Raised when inverting something whose determinant vanishes; carries that determinant.
struct NonInvertible : Error {
  NonInvertible(const std::string& what, std::string det) : Error(what + " (det = " + det + ")"), det(std::move(det)) {}
  std::string det;
};

struct DegenerateKernel : Error {
  explicit DegenerateKernel(std::string det)
      : Error("kernel basis is degenerate: flattened Wronski determinant is " + det), det(std::move(det)) {}
  std::string det;
};

struct InsufficientContext : Error {
  using Error::Error;
};

// An identity that the mathematics guarantees did not hold; indicates bad input.
struct ConsistencyError : Error {
  using Error::Error;
};

struct ParseError : Error {
  using Error::Error;
};

}  // namespace adelic

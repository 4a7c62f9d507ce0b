#pragma once

#include <stdexcept>
#include <string>

namespace qchar {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

class InvalidArgument : public Error {
 public:
  using Error::Error;
};

class ParseError : public Error {
 public:
  using Error::Error;
};

/// Some pending monomial had unequal colorings along its non-dominant
/// directions.
class AlgorithmFailed : public Error {
 public:
  explicit AlgorithmFailed(std::string monomial)
      : Error("algorithm failed at " + monomial), monomial_(std::move(monomial)) {}
  const std::string& monomial() const noexcept { return monomial_; }

 private:
  std::string monomial_;
};

/// A non-anchor l-dominant monomial appeared in strict mode.
class AlgorithmStopped : public Error {
 public:
  explicit AlgorithmStopped(std::string monomial)
      : Error("algorithm stopped at l-dominant monomial " + monomial),
        monomial_(std::move(monomial)) {}
  const std::string& monomial() const noexcept { return monomial_; }

 private:
  std::string monomial_;
};

class DepthGuardExceeded : public Error {
 public:
  explicit DepthGuardExceeded(long depth)
      : Error("depth guard exceeded at depth " + std::to_string(depth)), depth_(depth) {}
  long depth() const noexcept { return depth_; }

 private:
  long depth_;
};

/// Two roots a (earlier factor) and b (later factor) with a/b = q^n, n >= 2.
class OrderViolation : public Error {
 public:
  OrderViolation(int earlier_index, int later_index)
      : Error("factor order violates the root condition: q^" + std::to_string(earlier_index) +
              " / q^" + std::to_string(later_index) + " = q^" +
              std::to_string(earlier_index - later_index)),
        earlier_(earlier_index),
        later_(later_index) {}
  int earlier_index() const noexcept { return earlier_; }
  int later_index() const noexcept { return later_; }
  int exponent() const noexcept { return earlier_ - later_; }

 private:
  int earlier_;
  int later_;
};

class MissingStandard : public Error {
 public:
  explicit MissingStandard(const std::string& monomial)
      : Error("missing standard module character for " + monomial) {}
};

class NoSolution : public Error {
 public:
  using Error::Error;
};

class NonInvariant : public Error {
 public:
  using Error::Error;
};

class BoundExceeded : public Error {
 public:
  explicit BoundExceeded(std::size_t bound)
      : Error("crystal generation exceeded bound " + std::to_string(bound)) {}
};

}  // namespace qchar

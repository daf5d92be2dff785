#pragma once

#include <stdexcept>
#include <string>

namespace lcube {

class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// A variable with max == min cannot be min-max normalized; the pair is
// degenerate and cannot be scored.
class ConstantVariableError : public Error {
 public:
  ConstantVariableError() : Error("variable is constant (max == min)") {}
};

// Base for conditions that disqualify a single knot count m for a pair.
// The model search treats these as "skip this m", not as failures.
class ModelSkipError : public Error {
 public:
  using Error::Error;
};

class InsufficientSamplesError : public ModelSkipError {
 public:
  InsufficientSamplesError(long n, int m)
      : ModelSkipError("need at least m + 4 = " + std::to_string(m + 4) +
                       " samples, got " + std::to_string(n)) {}
};

class EmptyIntervalError : public ModelSkipError {
 public:
  explicit EmptyIntervalError(int interval)
      : ModelSkipError("inter-knot interval " + std::to_string(interval) +
                       " contains no samples") {}
};

// Every candidate knot count was skipped; no score exists for the pair.
class NoAdmissibleModelError : public Error {
 public:
  NoAdmissibleModelError() : Error("no admissible knot count for this pair") {}
};

class ParseError : public Error {
 public:
  ParseError(int line, const std::string& what)
      : Error("line " + std::to_string(line) + ": " + what), line_(line) {}
  int line() const { return line_; }

 private:
  int line_;
};

class TooFewSamplesError : public Error {
 public:
  explicit TooFewSamplesError(long n)
      : Error("pair has " + std::to_string(n) + " samples, need at least 8") {}
};

class AllZeroWeightsError : public Error {
 public:
  AllZeroWeightsError() : Error("all record weights are zero") {}
};

}  // namespace lcube

#pragma once

#include <stdexcept>
#include <string>

namespace amalg {

/// Base class of every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Malformed or inconsistent input: bad syntax, unknown names, shape mismatch,
/// violated preconditions.
class InputError : public Error {
 public:
  using Error::Error;
};

/// A product or query would leave the truncation range [0, N].
class DegreeOverflow : public Error {
 public:
  using Error::Error;
};

/// A mathematical check failed.  `degree` is the first failing degree, or -1
/// when the failure is not attached to a degree.
class CheckFailure : public Error {
 public:
  CheckFailure(const std::string& what, int degree) : Error(what), degree_(degree) {}
  int degree() const { return degree_; }

 private:
  int degree_;
};

}  // namespace amalg

#pragma once

#include <stdexcept>
#include <string>

namespace margulis {

/// Base for every error raised by the library.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

// certnum
class DomainError : public Error {
 public:
  using Error::Error;
};
class DegenerateNu : public Error {
 public:
  using Error::Error;
};
class NoSignChange : public Error {
 public:
  using Error::Error;
};

// hyp3
class DegenerateHeight : public Error {
 public:
  using Error::Error;
};
class AmbiguousClass : public Error {
 public:
  using Error::Error;
};
class DegenerateVertex : public Error {
 public:
  using Error::Error;
};
class HypothesisViolated : public Error {
 public:
  using Error::Error;
};

// gtree
class InvalidTree : public Error {
 public:
  using Error::Error;
};
class NotDisjoint : public Error {
 public:
  using Error::Error;
};
class PreconditionFailed : public Error {
 public:
  using Error::Error;
};
class TruncationAmbiguous : public Error {
 public:
  using Error::Error;
};

// margulis
class InputError : public Error {
 public:
  using Error::Error;
};
class BudgetExceeded : public Error {
 public:
  using Error::Error;
};

}  // namespace margulis

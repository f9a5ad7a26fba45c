#pragma once

#include <stdexcept>
#include <cstddef>
#include <string>
#include <vector>

namespace rsl {

/// Base of every exception thrown by the toolkit.
class Error : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

#define RSL_DECLARE_ERROR(Name)                                  \
  class Name : public Error {                                    \
   public:                                                       \
    explicit Name(const std::string& what) : Error(#Name ": " + what) {} \
  }

RSL_DECLARE_ERROR(DomainError);
RSL_DECLARE_ERROR(ConfigError);
RSL_DECLARE_ERROR(MismatchedLambda);
RSL_DECLARE_ERROR(OutOfRange);
RSL_DECLARE_ERROR(BracketNotFound);
RSL_DECLARE_ERROR(IndexOutOfRange);
RSL_DECLARE_ERROR(ContourTooLarge);
RSL_DECLARE_ERROR(IncompleteSpectrum);
RSL_DECLARE_ERROR(NonConvergence);
RSL_DECLARE_ERROR(PreconditionViolated);
RSL_DECLARE_ERROR(DegenerateInput);
RSL_DECLARE_ERROR(InvalidProblem);

#undef RSL_DECLARE_ERROR

/// Expression text that does not parse. `offset` is a byte offset into the
/// source; `expected` lists what the parser would have accepted there.
class SyntaxError : public Error {
 public:
  SyntaxError(std::size_t offset, std::vector<std::string> expected, const std::string& found);

  std::size_t offset() const { return offset_; }
  const std::vector<std::string>& expected() const { return expected_; }

 private:
  std::size_t offset_;
  std::vector<std::string> expected_;
};

class UnknownIdentifier : public Error {
 public:
  UnknownIdentifier(std::size_t offset, const std::string& name);

  std::size_t offset() const { return offset_; }
  const std::string& name() const { return name_; }

 private:
  std::size_t offset_;
  std::string name_;
};

}  // namespace rsl

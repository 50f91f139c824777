#pragma once

#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace stabcat {

enum class Errc {
  DuplicateName,
  NotReflexive,
  NotTransitive,
  MissingComposite,
  UnitLawViolation,
  AssociativityViolation,
  DanglingEndpoint,
  NotMonotone,
  NotFunctorial,
  TypeMismatch,
  KindMismatch,
  SizeLimit,
  NotDistinguishedInput,
  NotEpi,
  JunctionMismatch,
  NotACover,
  NotTrivialOnOverlap,
  HypothesisViolated,
  HypothesesFail,
  NoMediator,
  NonUniqueMediator,
  PreconditionFailed,
  CoherenceFault,
  InputError,
};

std::string_view to_string(Errc code);

// All library errors. `witness` carries the names of the offending items
// (a pair for NotTransitive, a triple for AssociativityViolation, ...).
class Error : public std::runtime_error {
 public:
  Error(Errc code, std::string message, std::vector<std::string> witness = {});

  Errc code() const noexcept { return code_; }
  const std::vector<std::string>& witness() const noexcept { return witness_; }
  /// The message without the leading error code.
  const std::string& message() const noexcept { return message_; }

 private:
  Errc code_;
  std::string message_;
  std::vector<std::string> witness_;
};

}  // namespace stabcat

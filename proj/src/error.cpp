#include "stabcat/error.hpp"

namespace stabcat {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::DuplicateName: return "DuplicateName";
    case Errc::NotReflexive: return "NotReflexive";
    case Errc::NotTransitive: return "NotTransitive";
    case Errc::MissingComposite: return "MissingComposite";
    case Errc::UnitLawViolation: return "UnitLawViolation";
    case Errc::AssociativityViolation: return "AssociativityViolation";
    case Errc::DanglingEndpoint: return "DanglingEndpoint";
    case Errc::NotMonotone: return "NotMonotone";
    case Errc::NotFunctorial: return "NotFunctorial";
    case Errc::TypeMismatch: return "TypeMismatch";
    case Errc::KindMismatch: return "KindMismatch";
    case Errc::SizeLimit: return "SizeLimit";
    case Errc::NotDistinguishedInput: return "NotDistinguishedInput";
    case Errc::NotEpi: return "NotEpi";
    case Errc::JunctionMismatch: return "JunctionMismatch";
    case Errc::NotACover: return "NotACover";
    case Errc::NotTrivialOnOverlap: return "NotTrivialOnOverlap";
    case Errc::HypothesisViolated: return "HypothesisViolated";
    case Errc::HypothesesFail: return "HypothesesFail";
    case Errc::NoMediator: return "NoMediator";
    case Errc::NonUniqueMediator: return "NonUniqueMediator";
    case Errc::PreconditionFailed: return "PreconditionFailed";
    case Errc::CoherenceFault: return "CoherenceFault";
    case Errc::InputError: return "InputError";
  }
  return "Unknown";
}

Error::Error(Errc code, std::string message, std::vector<std::string> witness)
    : std::runtime_error(std::string(to_string(code)) + ": " + message),
      code_(code),
      message_(std::move(message)),
      witness_(std::move(witness)) {}

}  // namespace stabcat

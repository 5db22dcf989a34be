#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace opmeans {

enum class ErrorCode {
  DimensionMismatch,
  InvariantViolation,
  NoConvergence,
  SingularMatrix,
  SpectrumNotEnclosed,
  ResolventSingular,
  NonPositiveInput,
  WeightOutOfRange,
  BadInterval,
  DomainViolation,
  ZeroDenominatorWeight,
  ParameterOutOfDomain,
  VariantPreconditionViolated,
  BadDimension,
  UnknownLawId,
  ParseError,
  IoError,
};

std::string_view to_string(ErrorCode code);

/// Every failure raised by the library carries one of the codes above so
/// callers (tests, the CLI) can branch on the kind without parsing text.
class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  [[nodiscard]] ErrorCode code() const noexcept { return code_; }

private:
  ErrorCode code_;
};

}  // namespace opmeans

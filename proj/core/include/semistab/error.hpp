#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace semistab {

enum class Errc {
  DivisionByZero,
  NegativeValuation,
  NotRepresentable,
  ContextMismatch,
  ZeroPolynomial,
  PreconditionViolated,
  InvalidDivisor,
  RHViolation,
  NeedsExtension,
  NotEnoughBranchPoints,
  AllPointsCoalesce,
  NonIntegral,
  VertexNotFound,
  NotOrdinary,
  BadReduction,
  TooFewBranchPoints,
  NotSimpleTail,
  ThresholdUndefined,
  InadmissiblePartition,
  NotSimpleReduction,
  Lemma31Failed,
  CenterNotRoot,
  ResidualRootOutsideFp,
  NonTermination,
  Schema,
};

std::string_view errc_name(Errc code) noexcept;

/// Every failure in the library is reported through this type. `code` selects
/// the failure kind; `required_e` is set when the computation would succeed in
/// a larger ramification index (NotRepresentable / NeedsExtension).
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& what, std::optional<long> required_e = std::nullopt)
      : std::runtime_error(std::string(errc_name(code)) + ": " + what),
        code_(code),
        required_e_(required_e) {}

  Errc code() const noexcept { return code_; }
  std::optional<long> required_e() const noexcept { return required_e_; }

 private:
  Errc code_;
  std::optional<long> required_e_;
};

}  // namespace semistab

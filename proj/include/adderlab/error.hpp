#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace adderlab {

enum class Errc {
  FanInViolation,
  UnknownNet,
  Frozen,
  DuplicatePortName,
  CombinationalLoop,
  MissingInput,
  UnknownInput,
  ZeroWidth,
  BadFanIn,
  BlockTooLarge,
  EmptySpecList,
  OperandOutOfRange,
  ExhaustiveTooLarge,
  PortContractViolation,
  MissingStageMetadata,
  ParseError,
  UnknownGateKind,
  UnsupportedVersion,
  InvariantViolation,
  NameCollisionAfterSanitization,
  BadDelayModel,
};

std::string_view to_string(Errc code) noexcept;

/// Every failure raised by the library carries one of the codes above; the
/// message always starts with the code name so command-line users can grep it.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& detail);

  Errc code() const noexcept { return code_; }

 private:
  Errc code_;
};

class CombinationalLoopError : public Error {
 public:
  explicit CombinationalLoopError(std::size_t gate);

  /// One gate that lies on the detected cycle.
  std::size_t gate() const noexcept { return gate_; }

 private:
  std::size_t gate_;
};

}  // namespace adderlab

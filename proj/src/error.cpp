#include "adderlab/error.hpp"

namespace adderlab {

std::string_view to_string(Errc code) noexcept {
  switch (code) {
    case Errc::FanInViolation: return "FanInViolation";
    case Errc::UnknownNet: return "UnknownNet";
    case Errc::Frozen: return "Frozen";
    case Errc::DuplicatePortName: return "DuplicatePortName";
    case Errc::CombinationalLoop: return "CombinationalLoop";
    case Errc::MissingInput: return "MissingInput";
    case Errc::UnknownInput: return "UnknownInput";
    case Errc::ZeroWidth: return "ZeroWidth";
    case Errc::BadFanIn: return "BadFanIn";
    case Errc::BlockTooLarge: return "BlockTooLarge";
    case Errc::EmptySpecList: return "EmptySpecList";
    case Errc::OperandOutOfRange: return "OperandOutOfRange";
    case Errc::ExhaustiveTooLarge: return "ExhaustiveTooLarge";
    case Errc::PortContractViolation: return "PortContractViolation";
    case Errc::MissingStageMetadata: return "MissingStageMetadata";
    case Errc::ParseError: return "ParseError";
    case Errc::UnknownGateKind: return "UnknownGateKind";
    case Errc::UnsupportedVersion: return "UnsupportedVersion";
    case Errc::InvariantViolation: return "InvariantViolation";
    case Errc::NameCollisionAfterSanitization: return "NameCollisionAfterSanitization";
    case Errc::BadDelayModel: return "BadDelayModel";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& detail)
    : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}

CombinationalLoopError::CombinationalLoopError(std::size_t gate)
    : Error(Errc::CombinationalLoop, "cycle through gate " + std::to_string(gate)),
      gate_(gate) {}

}  // namespace adderlab

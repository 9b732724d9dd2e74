#include "clientnet/error.hpp"

namespace clientnet {

std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io: return "Io";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::MissingRoot: return "MissingRoot";
    case ErrorCode::RootNotCompany: return "RootNotCompany";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::DanglingEdge: return "DanglingEdge";
    case ErrorCode::InvalidClientEdge: return "InvalidClientEdge";
    case ErrorCode::InvalidJobRoleEdge: return "InvalidJobRoleEdge";
    case ErrorCode::InvalidLabel: return "InvalidLabel";
    case ErrorCode::NoClientEdge: return "NoClientEdge";
    case ErrorCode::NodeNotFound: return "NodeNotFound";
    case ErrorCode::GammaOutOfRange: return "GammaOutOfRange";
    case ErrorCode::InvalidConfig: return "InvalidConfig";
    case ErrorCode::EmptyRanking: return "EmptyRanking";
    case ErrorCode::DegenerateLabels: return "DegenerateLabels";
    case ErrorCode::InsufficientPopulation: return "InsufficientPopulation";
    case ErrorCode::RestoreFailed: return "RestoreFailed";
    case ErrorCode::UnknownId: return "UnknownId";
    case ErrorCode::Disconnected: return "Disconnected";
  }
  return "Unknown";
}

bool is_data_error(ErrorCode code) {
  switch (code) {
    case ErrorCode::Io:
    case ErrorCode::ParseError:
    case ErrorCode::MissingRoot:
    case ErrorCode::RootNotCompany:
    case ErrorCode::DuplicateId:
    case ErrorCode::DanglingEdge:
    case ErrorCode::InvalidClientEdge:
    case ErrorCode::InvalidJobRoleEdge:
    case ErrorCode::InvalidLabel:
    case ErrorCode::NodeNotFound:
    case ErrorCode::UnknownId:
    case ErrorCode::InsufficientPopulation:
      return true;
    default:
      return false;
  }
}

Error::Error(ErrorCode code, const std::string& message)
    : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code) {}

ParseError::ParseError(std::string source, std::size_t line, const std::string& message)
    : Error(ErrorCode::ParseError, source + ":" + std::to_string(line) + ": " + message),
      source_(std::move(source)),
      line_(line) {}

}  // namespace clientnet

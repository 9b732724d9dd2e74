#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>
#include <string_view>

namespace clientnet {

enum class ErrorCode {
  Io,
  ParseError,
  MissingRoot,
  RootNotCompany,
  DuplicateId,
  DanglingEdge,
  InvalidClientEdge,
  InvalidJobRoleEdge,
  InvalidLabel,
  NoClientEdge,
  NodeNotFound,
  GammaOutOfRange,
  InvalidConfig,
  EmptyRanking,
  DegenerateLabels,
  InsufficientPopulation,
  RestoreFailed,
  UnknownId,
  Disconnected,
};

std::string_view to_string(ErrorCode code);

// True for errors caused by bad input data rather than by the computation.
bool is_data_error(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message);

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

class ParseError : public Error {
 public:
  ParseError(std::string source, std::size_t line, const std::string& message);

  const std::string& source() const noexcept { return source_; }
  std::size_t line() const noexcept { return line_; }

 private:
  std::string source_;
  std::size_t line_;
};

}  // namespace clientnet

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <vector>

namespace cdelta {

enum class ErrorCode {
  InvalidParameter,
  MalformedTable,
  AxiomViolation,
  OrderCapExceeded,
  NonCommutativeBase,
  NonMonicModulus,
  NotAHomomorphism,
  NotUnital,
  NotASubring,
  NonCentralParameter,
  NotIdempotent,
  NotAnIdeal,
  NotAGroup,
  RingMismatch,
  InternalInconsistency,
  UnknownKind,
  PredicateParseError,
  UnknownCheck,
  SyntaxError,
  UnknownName,
  BadMagic,
  ChecksumMismatch,
  VersionUnsupported,
  IoError,
};

std::string_view to_string(ErrorCode code) noexcept;

/// Every failure raised by the library. `witness` carries the element
/// indices (or table coordinates) that exhibit the failure, when there are any.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message, std::vector<std::uint32_t> witness = {},
        std::string law = {});

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::uint32_t>& witness() const noexcept { return witness_; }
  /// Name of the violated law for AxiomViolation, empty otherwise.
  const std::string& law() const noexcept { return law_; }

 private:
  ErrorCode code_;
  std::vector<std::uint32_t> witness_;
  std::string law_;
};

class SyntaxError : public Error {
 public:
  SyntaxError(const std::string& message, std::size_t line, std::size_t column);
  std::size_t line() const noexcept { return line_; }
  std::size_t column() const noexcept { return column_; }

 private:
  std::size_t line_;
  std::size_t column_;
};

}  // namespace cdelta

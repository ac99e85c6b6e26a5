#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace cartan {

enum class ErrorCode {
  NonAssociative,
  BadUnit,
  BadInverse,
  DomainMismatch,
  NotSubgroupoid,
  NotNormal,
  NotComposable,
  FiberMismatch,
  NotCocycle,
  NotCoboundary,
  NotHomomorphic,
  NotAbelian,
  NotInDomain,
  CriteriaDisagree,
  PreconditionFailed,
  RankDeficient,
  NotCoprime,
  ParseError,
  ModulusLimit,
};

inline std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::NonAssociative: return "NonAssociative";
    case ErrorCode::BadUnit: return "BadUnit";
    case ErrorCode::BadInverse: return "BadInverse";
    case ErrorCode::DomainMismatch: return "DomainMismatch";
    case ErrorCode::NotSubgroupoid: return "NotSubgroupoid";
    case ErrorCode::NotNormal: return "NotNormal";
    case ErrorCode::NotComposable: return "NotComposable";
    case ErrorCode::FiberMismatch: return "FiberMismatch";
    case ErrorCode::NotCocycle: return "NotCocycle";
    case ErrorCode::NotCoboundary: return "NotCoboundary";
    case ErrorCode::NotHomomorphic: return "NotHomomorphic";
    case ErrorCode::NotAbelian: return "NotAbelian";
    case ErrorCode::NotInDomain: return "NotInDomain";
    case ErrorCode::CriteriaDisagree: return "CriteriaDisagree";
    case ErrorCode::PreconditionFailed: return "PreconditionFailed";
    case ErrorCode::RankDeficient: return "RankDeficient";
    case ErrorCode::NotCoprime: return "NotCoprime";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ModulusLimit: return "ModulusLimit";
  }
  return "Unknown";
}

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(to_string(code)) + ": " + message), code_(code), detail_(message) {}

  ErrorCode code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }

 private:
  ErrorCode code_;
  std::string detail_;
};

[[noreturn]] inline void fail(ErrorCode code, const std::string& message) { throw Error(code, message); }

}  // namespace cartan

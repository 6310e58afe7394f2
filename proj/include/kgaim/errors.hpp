#pragma once

#include <cstdio>
#include <stdexcept>
#include <string>
#include <string_view>

namespace kgaim {

enum class ErrorCode {
  InvalidParameter,
  PoleAtRadius,
  AxisSingularity,
  SingularMatchingSystem,
  JetOrderExhausted,
  NoSignChange,
  MaxIterations,
  NoBoundWindow,
  NoBoundState,
  Degenerate,
  ComplexEnergy,
  ComplexOrbital,
  ComplexOrder,
  NonConvergence,
  PoleInDenominator,
  NotBound,
  QuadratureFailure,
  MeshTooCoarse,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidParameter: return "InvalidParameter";
    case ErrorCode::PoleAtRadius: return "PoleAtRadius";
    case ErrorCode::AxisSingularity: return "AxisSingularity";
    case ErrorCode::SingularMatchingSystem: return "SingularMatchingSystem";
    case ErrorCode::JetOrderExhausted: return "JetOrderExhausted";
    case ErrorCode::NoSignChange: return "NoSignChange";
    case ErrorCode::MaxIterations: return "MaxIterations";
    case ErrorCode::NoBoundWindow: return "NoBoundWindow";
    case ErrorCode::NoBoundState: return "NoBoundState";
    case ErrorCode::Degenerate: return "Degenerate";
    case ErrorCode::ComplexEnergy: return "ComplexEnergy";
    case ErrorCode::ComplexOrbital: return "ComplexOrbital";
    case ErrorCode::ComplexOrder: return "ComplexOrder";
    case ErrorCode::NonConvergence: return "NonConvergence";
    case ErrorCode::PoleInDenominator: return "PoleInDenominator";
    case ErrorCode::NotBound: return "NotBound";
    case ErrorCode::QuadratureFailure: return "QuadratureFailure";
    case ErrorCode::MeshTooCoarse: return "MeshTooCoarse";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

/// Short %g rendering for messages.
inline std::string format_number(double x) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", x);
  return buf;
}

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw Error(code, std::string(to_string(code)) + ": " + what);
}

}  // namespace kgaim

#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nodal_stab {

enum class ErrorCode {
  // curve_model
  EmptyCurve,
  DuplicateId,
  UnknownComponent,
  SelfLoop,
  InvalidComponent,
  CycleDetected,
  Disconnected,
  MultiEdge,
  IndexOutOfRange,
  // twist_calculus / semistability
  ClassMismatch,
  EmptySubcurve,
  InvalidPolarization,
  WrongArity,
  OrderingMismatch,
  ZeroMultirank,
  InvalidMultirank,
  // balancer
  PreconditionViolated,
  // gpb
  InvalidGpb,
  DimensionBound,
  DegreeBound,
  SingularProjection,
  NoRoot,
  // fields / truncated rings
  InvalidField,
  FieldMismatch,
  NotUnit,
  NotInKernelLayer,
  DimensionMismatch,
  // io
  ParseError,
};

constexpr std::string_view to_string(ErrorCode code) {
  switch (code) {
    case ErrorCode::EmptyCurve: return "EmptyCurve";
    case ErrorCode::DuplicateId: return "DuplicateId";
    case ErrorCode::UnknownComponent: return "UnknownComponent";
    case ErrorCode::SelfLoop: return "SelfLoop";
    case ErrorCode::InvalidComponent: return "InvalidComponent";
    case ErrorCode::CycleDetected: return "CycleDetected";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::MultiEdge: return "MultiEdge";
    case ErrorCode::IndexOutOfRange: return "IndexOutOfRange";
    case ErrorCode::ClassMismatch: return "ClassMismatch";
    case ErrorCode::EmptySubcurve: return "EmptySubcurve";
    case ErrorCode::InvalidPolarization: return "InvalidPolarization";
    case ErrorCode::WrongArity: return "WrongArity";
    case ErrorCode::OrderingMismatch: return "OrderingMismatch";
    case ErrorCode::ZeroMultirank: return "ZeroMultirank";
    case ErrorCode::InvalidMultirank: return "InvalidMultirank";
    case ErrorCode::PreconditionViolated: return "PreconditionViolated";
    case ErrorCode::InvalidGpb: return "InvalidGpb";
    case ErrorCode::DimensionBound: return "DimensionBound";
    case ErrorCode::DegreeBound: return "DegreeBound";
    case ErrorCode::SingularProjection: return "SingularProjection";
    case ErrorCode::NoRoot: return "NoRoot";
    case ErrorCode::InvalidField: return "InvalidField";
    case ErrorCode::FieldMismatch: return "FieldMismatch";
    case ErrorCode::NotUnit: return "NotUnit";
    case ErrorCode::NotInKernelLayer: return "NotInKernelLayer";
    case ErrorCode::DimensionMismatch: return "DimensionMismatch";
    case ErrorCode::ParseError: return "ParseError";
  }
  return "Unknown";
}

/// Every failure raised by the library carries a machine-readable code.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(to_string(code)) + ": " + what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace nodal_stab

#pragma once

#include <stdexcept>
#include <string>

namespace crewml {

enum class ErrorCode {
  // crew construction / run
  UnknownTool,
  DuplicateRole,
  MissingManager,
  TaskCycle,
  EmptyCrew,
  UnknownAgent,
  PlaceholderMissing,
  AgentLoopExceeded,
  UnknownCoworker,
  EmptyOutputs,
  // memory
  EmptyContent,
  // gateway
  GatewayTransport,
  ReplayMiss,
  MalformedResponse,
  DuplicateFingerprint,
  // tabular
  FileMissing,
  EmptyFile,
  RaggedRow,
  UnknownTarget,
  TooFewCompleteRows,
  MinorityTooSmall,
  SingleClass,
  KeyMissing,
  UnknownStatusSymbol,
  // model lab
  NonBinaryTarget,
  MissingValuesPresent,
  UnknownHyperparam,
  ArityMismatch,
  NoPositives,
  TooFewPerClass,
  EmptyGrid,
  MethodUnsupported,
  VersionMismatch,
  CorruptArtifact,
  // crews
  InvalidRecipe,
  DataMissing,
  IncompleteCrewOutput,
  MissingSubReport,
  EmptyGuide,
  RowOutOfRange,
  NoNumericColumns,
  // cli
  UnknownCommand,
  MissingFlag,
  BadValue,
  BadImbalance,
};

const char* error_code_name(ErrorCode code);

/// Exception carrying a typed error code alongside the message.
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& message)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + message),
        code_(code) {}

  ErrorCode code() const { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace crewml

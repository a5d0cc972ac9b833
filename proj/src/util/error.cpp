#include "crewml/util/error.hpp"

namespace crewml {

const char* error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::UnknownTool: return "UnknownTool";
    case ErrorCode::DuplicateRole: return "DuplicateRole";
    case ErrorCode::MissingManager: return "MissingManager";
    case ErrorCode::TaskCycle: return "TaskCycle";
    case ErrorCode::EmptyCrew: return "EmptyCrew";
    case ErrorCode::UnknownAgent: return "UnknownAgent";
    case ErrorCode::PlaceholderMissing: return "PlaceholderMissing";
    case ErrorCode::AgentLoopExceeded: return "AgentLoopExceeded";
    case ErrorCode::UnknownCoworker: return "UnknownCoworker";
    case ErrorCode::EmptyOutputs: return "EmptyOutputs";
    case ErrorCode::EmptyContent: return "EmptyContent";
    case ErrorCode::GatewayTransport: return "GatewayTransport";
    case ErrorCode::ReplayMiss: return "ReplayMiss";
    case ErrorCode::MalformedResponse: return "MalformedResponse";
    case ErrorCode::DuplicateFingerprint: return "DuplicateFingerprint";
    case ErrorCode::FileMissing: return "FileMissing";
    case ErrorCode::EmptyFile: return "EmptyFile";
    case ErrorCode::RaggedRow: return "RaggedRow";
    case ErrorCode::UnknownTarget: return "UnknownTarget";
    case ErrorCode::TooFewCompleteRows: return "TooFewCompleteRows";
    case ErrorCode::MinorityTooSmall: return "MinorityTooSmall";
    case ErrorCode::SingleClass: return "SingleClass";
    case ErrorCode::KeyMissing: return "KeyMissing";
    case ErrorCode::UnknownStatusSymbol: return "UnknownStatusSymbol";
    case ErrorCode::NonBinaryTarget: return "NonBinaryTarget";
    case ErrorCode::MissingValuesPresent: return "MissingValuesPresent";
    case ErrorCode::UnknownHyperparam: return "UnknownHyperparam";
    case ErrorCode::ArityMismatch: return "ArityMismatch";
    case ErrorCode::NoPositives: return "NoPositives";
    case ErrorCode::TooFewPerClass: return "TooFewPerClass";
    case ErrorCode::EmptyGrid: return "EmptyGrid";
    case ErrorCode::MethodUnsupported: return "MethodUnsupported";
    case ErrorCode::VersionMismatch: return "VersionMismatch";
    case ErrorCode::CorruptArtifact: return "CorruptArtifact";
    case ErrorCode::InvalidRecipe: return "InvalidRecipe";
    case ErrorCode::DataMissing: return "DataMissing";
    case ErrorCode::IncompleteCrewOutput: return "IncompleteCrewOutput";
    case ErrorCode::MissingSubReport: return "MissingSubReport";
    case ErrorCode::EmptyGuide: return "EmptyGuide";
    case ErrorCode::RowOutOfRange: return "RowOutOfRange";
    case ErrorCode::NoNumericColumns: return "NoNumericColumns";
    case ErrorCode::UnknownCommand: return "UnknownCommand";
    case ErrorCode::MissingFlag: return "MissingFlag";
    case ErrorCode::BadValue: return "BadValue";
    case ErrorCode::BadImbalance: return "BadImbalance";
  }
  return "UnknownError";
}

}  // namespace crewml

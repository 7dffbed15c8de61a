#include "corona/error.hpp"

namespace corona {

std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::DegenerateInput: return "DegenerateInput";
    case ErrorCode::NonPositiveRatio: return "NonPositiveRatio";
    case ErrorCode::InvalidSpec: return "InvalidSpec";
    case ErrorCode::ParallelLines: return "ParallelLines";
    case ErrorCode::SameGrid: return "SameGrid";
    case ErrorCode::SingularMultigrid: return "SingularMultigrid";
    case ErrorCode::NotACrossing: return "NotACrossing";
    case ErrorCode::GridNotRepresented: return "GridNotRepresented";
    case ErrorCode::OnGridLine: return "OnGridLine";
    case ErrorCode::DisconnectedPatch: return "DisconnectedPatch";
    case ErrorCode::ResourceLimit: return "ResourceLimit";
    case ErrorCode::BoundaryContamination: return "BoundaryContamination";
    case ErrorCode::EmptyScene: return "EmptyScene";
    case ErrorCode::ParseError: return "ParseError";
    case ErrorCode::ValidationError: return "ValidationError";
    case ErrorCode::InvalidArgument: return "InvalidArgument";
  }
  return "Unknown";
}

}  // namespace corona

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

namespace naw {

enum class ErrorCode {
  TooFewPoints,
  FirstTripleCollinear,
  AllCollinear,
  NeighborSlotMismatch,
  UnmatchedEdge,
  NoVisibleFacet,
  BrokenHull,
  DegenerateCoplanarSet,
  NonFiniteCoordinate,
  Overflow,
  CollinearTriangle,
  CapExceeded,
  FileNotFound,
  EmptyInput,
  IoWrite,
  Parse,
};

constexpr std::string_view to_string(ErrorCode code) noexcept {
  switch (code) {
    case ErrorCode::TooFewPoints: return "TOO_FEW_POINTS";
    case ErrorCode::FirstTripleCollinear: return "FIRST_TRIPLE_COLLINEAR";
    case ErrorCode::AllCollinear: return "ALL_COLLINEAR";
    case ErrorCode::NeighborSlotMismatch: return "NEIGHBOR_SLOT_MISMATCH";
    case ErrorCode::UnmatchedEdge: return "UNMATCHED_EDGE";
    case ErrorCode::NoVisibleFacet: return "NO_VISIBLE_FACET";
    case ErrorCode::BrokenHull: return "BROKEN_HULL";
    case ErrorCode::DegenerateCoplanarSet: return "DEGENERATE_COPLANAR_SET";
    case ErrorCode::NonFiniteCoordinate: return "NON_FINITE_COORDINATE";
    case ErrorCode::Overflow: return "OVERFLOW";
    case ErrorCode::CollinearTriangle: return "COLLINEAR_TRIANGLE";
    case ErrorCode::CapExceeded: return "CAP_EXCEEDED";
    case ErrorCode::FileNotFound: return "FILE_NOT_FOUND";
    case ErrorCode::EmptyInput: return "EMPTY_INPUT";
    case ErrorCode::IoWrite: return "IO_WRITE";
    case ErrorCode::Parse: return "PARSE";
  }
  return "UNKNOWN";
}

/// Structured failure raised by every module. `ids` carries whatever point or
/// facet ids the failure refers to (for DEGENERATE_COPLANAR_SET, the planar
/// boundary polygon in sorted-point ids).
class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& detail, std::vector<std::int32_t> ids = {})
      : std::runtime_error(std::string(to_string(code)) + ": " + detail),
        code_(code),
        ids_(std::move(ids)) {}

  ErrorCode code() const noexcept { return code_; }
  const std::vector<std::int32_t>& ids() const noexcept { return ids_; }

 private:
  ErrorCode code_;
  std::vector<std::int32_t> ids_;
};

}  // namespace naw

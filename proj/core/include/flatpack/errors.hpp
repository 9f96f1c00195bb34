#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace flatpack {

enum class ErrorCode {
  // surface
  UnmatchedSide,
  NonTranslationGluing,
  DoubleIdentification,
  Disconnected,
  AngleNotMultiple,
  GenusTooSmall,
  PointOutsidePolygons,
  NoSingularities,
  InvalidPolygon,
  // packing
  ArcChainBroken,
  AngleSumNotMultiple,
  IllegalRelation,
  OverlappingCircles,
  IrrationalIntersection,
  NotASector,
  // topomap
  InvalidPermutation,
  SigmaFixedPoint,
  NotAClosedWalk,
  StraddlingLoop,
  OrderingImpossible,
  DecompositionMismatch,
  MarkedBigonNotSplitting,
  // builders
  DegenerateSlit,
  SlitOverlap,
  WrongSlitCount,
  ChainDoesNotFit,
  // cli
  SyntaxError,
  SchemaError,
  IoError,
};

std::string_view to_string(ErrorCode code);

class Error : public std::runtime_error {
public:
  Error(ErrorCode code, const std::string& detail)
      : std::runtime_error(std::string(to_string(code)) + ": " + detail), code_(code) {}
  ErrorCode code() const { return code_; }

private:
  ErrorCode code_;
};

}  // namespace flatpack

#pragma once

#include <stdexcept>
#include <string>

namespace dualcurve {

enum class ErrorCode {
  InvalidArgument,
  UnboundedBody,
  UnboundedWulffShape,
  OriginNotInterior,
  PolarUndefined,
  InvalidFacet,
  NonConvexUnion,
  UnsupportedDimension,
  Infeasible,
};

//! Exception carrying a machine-readable reason alongside the message.
class GeometryError : public std::runtime_error {
 public:
  GeometryError(ErrorCode code, const std::string& what)
      : std::runtime_error(what), code_(code) {}

  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

}  // namespace dualcurve

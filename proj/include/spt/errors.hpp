#pragma once

#include <stdexcept>
#include <string>

namespace spt {

// Base class for every error thrown by this library.
struct Error : std::runtime_error {
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

#define SPT_ERROR(Name) \
  struct Name : Error { \
    explicit Name(const std::string& msg) : Error(msg) {} \
  }

SPT_ERROR(NonPositiveMarginal);
SPT_ERROR(AsymmetryConflict);
SPT_ERROR(NotNormalized);
SPT_ERROR(EmptySet);
SPT_ERROR(OverlappingSets);
SPT_ERROR(InvalidPartition);
SPT_ERROR(DisconnectedVertexInRestriction);
SPT_ERROR(ParseError);
SPT_ERROR(SchemaVersionMismatch);
SPT_ERROR(SchemaValidationError);
SPT_ERROR(DimensionMismatch);
SPT_ERROR(EmptySourceClass);
SPT_ERROR(EigensolverFailure);
SPT_ERROR(DegenerateParams);
SPT_ERROR(Divergence);

#undef SPT_ERROR

}  // namespace spt

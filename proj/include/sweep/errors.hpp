#pragma once

#include <stdexcept>
#include <string>

namespace sweep {

/// Failure categories surfaced by the library. Tests and the CLI switch on
/// these rather than parsing messages.
enum class Fault {
  DegenerateDirection,
  InfiniteIntersections,
  MalformedDocument,
  MissingField,
  NonFinite,
  InfeasibleStart,
  DestinationInsideObstacle,
  NotCollinear,
  InitialOverlap,
  BadAgentCount,
  AgentPastDestination,
  NonPositiveControl,
  ArcExceedsHorizon,
  BelowContactBound,
  ContactWouldOccur,
  EmptyInterval,
  ProjectionStalled,
  BadArguments,
};

const char* fault_name(Fault f);

class ModelError : public std::runtime_error {
 public:
  ModelError(Fault fault, const std::string& message)
      : std::runtime_error(std::string(fault_name(fault)) + ": " + message),
        fault_(fault) {}

  Fault fault() const noexcept { return fault_; }

 private:
  Fault fault_;
};

}  // namespace sweep

#pragma once

#include <stdexcept>

namespace mpj {

/// A stated precondition does not hold; the message names the violated
/// inequality.
struct PreconditionViolated : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A pigeonhole search came up empty. At the scales this library runs,
/// that falsifies the premise the search relies on, so it is surfaced
/// loudly instead of being retried.
struct NoCollision : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// A message oracle emitted a string whose length differs from the
/// speaker's declared budget.
struct BudgetViolation : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// An exhaustive enumeration would exceed the configured instance cap.
struct CapExceeded : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// The adversary pipeline failed mid-construction (wraps a NoCollision).
struct ConstructionFailed : std::runtime_error {
  using std::runtime_error::runtime_error;
};

}  // namespace mpj

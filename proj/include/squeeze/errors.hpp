#pragma once

#include <stdexcept>

namespace squeeze {

/// An exact combinatorial mode would need more norm evaluations than allowed.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// A property that holds by construction (or by a theorem whose hypotheses
/// were verified) was observed to fail during a run.
class InvariantViolation : public std::logic_error {
 public:
  using std::logic_error::logic_error;
};

/// A recursive construction ran out of indices on the finite horizon.
class HorizonExhausted : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace squeeze

#pragma once

#include <stdexcept>
#include <string>

namespace bcproof {

/// A configured work limit (vertex subsets, tree nodes, search expansions)
/// was reached before the operation could finish.
class BudgetExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// The operation needs a bounded polyhedron and got an unbounded one.
class UnboundedPolyhedron : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

/// The instance tuple itself is wrong, e.g. an integral point beats the bound.
class InvalidInstance : public std::domain_error {
 public:
  using std::domain_error::domain_error;
};

}  // namespace bcproof

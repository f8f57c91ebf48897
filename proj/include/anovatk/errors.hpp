#pragma once

#include <stdexcept>
#include <string>

namespace anovatk {

// Convergence or accuracy failure inside a numerical routine.
class numeric_error : public std::runtime_error {
public:
  explicit numeric_error(const std::string& what) : std::runtime_error(what) {}
};

// A requested construction has no solution (empty feasibility window).
class infeasible_error : public std::runtime_error {
public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace anovatk

#pragma once

#include <stdexcept>
#include <string>

namespace mgswap {

/// A solver found no point satisfying the model's constraints.
class InfeasibleError : public std::runtime_error {
 public:
  explicit InfeasibleError(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace mgswap

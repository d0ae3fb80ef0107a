#pragma once

#include <stdexcept>
#include <string>

namespace causanet {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Thrown when a transition is asked to fire without being enabled.
// `place` names the first input place that lacks tokens.
struct DisabledTransition : Error {
  DisabledTransition(const std::string& msg, std::string place_name)
      : Error(msg), place(std::move(place_name)) {}
  std::string place;
};

}  // namespace causanet

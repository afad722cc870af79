#pragma once

#include <optional>
#include <string>

#include "bnc/typed.hpp"

namespace bnc {

struct ElbowCheck {
  std::optional<bool> agree;  // empty when a side did not become curve-like
  std::string report;
};

// Cables t and t with its D_dot arrows removed, brings both to curve-like form
// and compares generator counts per (idempotent, q, h) and the module types
// of the pairing panels. t must be curve-like and cap-trivial.
ElbowCheck check_elbow_splitting(const TypeD& t);

}  // namespace bnc

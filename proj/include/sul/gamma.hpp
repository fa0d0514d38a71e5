#pragma once

#include "sul/scalar.hpp"

namespace sul {

/// Gamma(twice_arg / 2) by upward recursion from Gamma(1) = 1 and
/// Gamma(1/2) = sqrt(pi). Throws std::invalid_argument for twice_arg < 1.
Scalar gamma_half_integer(int twice_arg);

}  // namespace sul

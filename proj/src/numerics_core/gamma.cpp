#include "sul/gamma.hpp"

#include <stdexcept>

namespace sul {

Scalar gamma_half_integer(int twice_arg) {
  if (twice_arg < 1) throw std::invalid_argument("gamma_half_integer: argument must be positive");
  // Gamma(x + 1) = x * Gamma(x), stepping x by one (twice_arg by two).
  int twice_x = (twice_arg % 2 == 0) ? 2 : 1;
  Scalar value = (twice_x == 2) ? Scalar(1) : sqrt(pi());
  while (twice_x < twice_arg) {
    value *= Scalar(twice_x);
    value /= Scalar(2);
    twice_x += 2;
  }
  return value;
}

}  // namespace sul

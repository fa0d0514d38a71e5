#pragma once

#include <string>

#include "sul/scalar.hpp"

namespace sul::testing {

// |a - b| <= tol, with tol given as a decimal string.
inline bool near(const Scalar& a, const Scalar& b, const char* tol) {
  return abs(a - b) <= Scalar::parse(tol);
}

inline bool near(const Scalar& a, const char* b, const char* tol) { return near(a, Scalar::parse(b), tol); }

inline bool rel_near(const Scalar& a, const char* b, const char* tol) {
  const Scalar expected = Scalar::parse(b);
  return abs(a - expected) <= Scalar::parse(tol) * max(Scalar(1), abs(expected));
}

inline std::string show(const Scalar& x) { return x.to_string(40); }

}  // namespace sul::testing

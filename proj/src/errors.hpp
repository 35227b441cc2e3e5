#pragma once

#include <stdexcept>
#include <string>

namespace ahm {

struct Error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Background Q(r) has no positive root in the scan window.
struct NoRootError : Error {
  using Error::Error;
};

// Metric (r,r) component requested at or below r = r_plus.
struct SingularAtHorizon : Error {
  using Error::Error;
};

// Torus block is numerically singular (condition number guard tripped).
struct DegenerateGamma : Error {
  using Error::Error;
};

struct QuadratureError : Error {
  using Error::Error;
};

struct FitUnstable : Error {
  using Error::Error;
};

// Finite-difference stencil would cross r = r_plus.
struct StencilOutOfDomain : Error {
  using Error::Error;
};

// Smoothness condition v_hat(r_plus, xi) = u_hat(r_plus) fails.
struct RegularityError : Error {
  using Error::Error;
};

// Malformed spec input (parse or invariant failure at construction).
struct SpecError : Error {
  using Error::Error;
};

}  // namespace ahm

#pragma once

#include <stdexcept>

#include "epslab/spaces.hpp"

namespace epslab {

/// Raised when g(eps) > eps or g(eps/(1-eps)) < eps beyond tolerance, which
/// can only come from a broken norm.
struct BracketError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct LineMinimum {
  double min_value;
  double y_star;
};

/// Value omega with min_y ||(y-1)e_0 + y*omega*e_1|| = eps, plus the minimizer.
struct GeoSolution {
  double omega;
  double y_star;
  double min_value;
  double residual;
};

struct ClosedFormOmega {
  double omega;
  double y;
};

inline constexpr double kDefaultInnerTol = 1e-12;
inline constexpr double kDefaultOuterTol = 1e-10;

/// Minimizes y -> ||(y-1)e_0 + y*omega*e_1|| over y in C.
///
/// Replacing a complex y by clamp(Re y, 0, 1) shrinks both |y-1| and |y|, so by
/// 1-unconditionality the search runs over real y in [0, 1]. The function is
/// convex there; golden-section search brackets the minimum to `y_tol`, the
/// endpoints are compared explicitly, and on a flat minimum the smallest
/// minimizing y is returned.
LineMinimum min_over_y(double omega, const NormSpec& spec, double y_tol = kDefaultInnerTol);

/// Bisection on g(omega) - eps over [eps, eps/(1-eps)], g(omega) = min_over_y(omega).
/// The bracket is kept by sign change, not by assuming g monotone.
GeoSolution solve_omega(double eps, const NormSpec& spec, double tol = kDefaultOuterTol,
                        double y_tol = kDefaultInnerTol);

/// Root of omega / (1 + omega^q)^(1/q) = eps with q = p/(p-1), and y = 1/(1 + omega^q).
/// Computed in log form so exponents near 1 do not overflow.
ClosedFormOmega closed_form_omega(double eps, double p);

}  // namespace epslab

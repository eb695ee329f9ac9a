#include "epslab/geometry.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

namespace epslab {
namespace {

constexpr int kMaxBisections = 200;

void require_eps(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1), got " + std::to_string(eps));
}

bool nearly_equal(double a, double b) {
  return std::abs(a - b) <= 4.0 * std::numeric_limits<double>::epsilon() * std::max(std::abs(a), std::abs(b));
}

}  // namespace

LineMinimum min_over_y(double omega, const NormSpec& spec, double y_tol) {
  if (!(omega >= 0.0)) throw DomainError("omega must be nonnegative");
  if (!(y_tol > 0.0)) throw DomainError("y tolerance must be positive");

  auto f = [&](double y) { return spec.of_pair(y - 1.0, y * omega); };

  const double inv_phi = (std::sqrt(5.0) - 1.0) / 2.0;
  double a = 0.0, b = 1.0;
  double c = b - inv_phi * (b - a);
  double d = a + inv_phi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > y_tol) {
    if (fc <= fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - inv_phi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + inv_phi * (b - a);
      fd = f(d);
    }
  }

  // Golden section never lands on the endpoints; minima at y = 0 or y = 1 are common (p = 1).
  LineMinimum best{f(0.0), 0.0};
  for (double y : {a, 0.5 * (a + b), b, 1.0}) {
    const double v = f(y);
    if (v < best.min_value) best = {v, y};
  }

  // Flat minimum: walk left to the smallest minimizer.
  const double probe = std::max(0.0, best.y_star - 1e-6);
  if (best.y_star > 0.0 && nearly_equal(f(probe), best.min_value)) {
    double lo = 0.0, hi = best.y_star;
    if (nearly_equal(f(lo), best.min_value)) {
      hi = lo;
    } else {
      while (hi - lo > y_tol) {
        const double mid = 0.5 * (lo + hi);
        if (nearly_equal(f(mid), best.min_value)) {
          hi = mid;
        } else {
          lo = mid;
        }
      }
    }
    best.y_star = hi;
    best.min_value = std::min(best.min_value, f(hi));
  }
  return best;
}

GeoSolution solve_omega(double eps, const NormSpec& spec, double tol, double y_tol) {
  require_eps(eps);
  if (!(tol > 0.0)) throw DomainError("tolerance must be positive");

  auto h = [&](double omega) { return min_over_y(omega, spec, y_tol).min_value - eps; };

  double lo = eps, hi = eps / (1.0 - eps);
  double h_lo = h(lo), h_hi = h(hi);
  if (h_lo > tol || h_hi < -tol) {
    throw BracketError("endpoint estimates violated for " + spec.to_string() + ": g(eps)-eps=" +
                       std::to_string(h_lo) + ", g(eps/(1-eps))-eps=" + std::to_string(h_hi));
  }

  auto finish = [&](double omega) {
    const LineMinimum m = min_over_y(omega, spec, y_tol);
    return GeoSolution{omega, m.y_star, m.min_value, std::abs(m.min_value - eps)};
  };

  if (std::abs(h_lo) <= tol || std::abs(h_hi) <= tol) {
    return finish(std::abs(h_lo) <= std::abs(h_hi) ? lo : hi);
  }

  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    const double h_mid = h(mid);
    if (h_mid == 0.0) return finish(mid);
    if (h_mid < 0.0) {
      lo = mid;
      h_lo = h_mid;
    } else {
      hi = mid;
      h_hi = h_mid;
    }
  }
  const double omega = std::abs(h_lo) <= std::abs(h_hi) ? lo : hi;
  GeoSolution sol = finish(omega);
  if (sol.residual > tol) {
    throw BracketError("bisection stalled with residual " + std::to_string(sol.residual));
  }
  return sol;
}

ClosedFormOmega closed_form_omega(double eps, double p) {
  require_eps(eps);
  if (!(p > 1.0) || !std::isfinite(p)) throw DomainError("closed form needs 1 < p < inf");
  const double q = p / (p - 1.0);

  // log of omega / (1 + omega^q)^(1/q), strictly increasing in omega.
  auto log_ratio = [q](double omega) {
    if (omega <= 1.0) return std::log(omega) - std::log1p(std::pow(omega, q)) / q;
    return -std::log1p(std::pow(omega, -q)) / q;
  };

  const double target = std::log(eps);
  double lo = eps, hi = eps / (1.0 - eps);
  for (int i = 0; i < kMaxBisections; ++i) {
    const double mid = lo + 0.5 * (hi - lo);
    if (mid <= lo || mid >= hi) break;
    if (log_ratio(mid) < target) {
      lo = mid;
    } else {
      hi = mid;
    }
  }
  const double omega = std::abs(log_ratio(lo) - target) <= std::abs(log_ratio(hi) - target) ? lo : hi;
  const double y = 1.0 / (1.0 + std::exp(q * std::log(omega)));
  return {omega, y};
}

}  // namespace epslab

#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "epslab/dynamics.hpp"
#include "epslab/sampling.hpp"

namespace epslab {

inline constexpr double kDefaultCheckTol = 1e-9;

// ---------------------------------------------------------------------------
// Witness vectors: ||v(k)|| <= 1/k and ||T^{m_k+r_k} v(k) - u(k)|| <= eps ||u(k)||.

/// u(k) is admissible when it lives on blocks 0..k-1, every block lies in
/// span(e_0, ..., e_{k-1}) and every block has X-norm at most k.
bool is_admissible(const DirectSumVector& u, Index k, const NormSpec& spec_x);

struct AdmittedTarget {
  DirectSumVector target;
  double scale;           ///< factor applied after projection, in (0, 1]
  std::size_t dropped;    ///< coefficients removed by the projection
  double max_block_norm;  ///< before scaling
};

/// Projects u onto the admissible support and rescales so every block norm is <= k.
AdmittedTarget admit_target(const DirectSumVector& u, Index k, const NormSpec& spec_x);

struct WitnessComponent {
  Index j;
  Index l;              ///< block with m_l <= j < m_{l+1}
  bool block_start;     ///< j == m_l
  Scalar x;             ///< coefficient on e_l
  Scalar y;             ///< coefficient on e_k
  double mu;            ///< 2^{t_j}, read off the inverse product table (1 at a block start)
  double v_norm;        ///< ||v_j(k)||
  double v_bound;       ///< k^-2
  double residual_norm; ///< ||z_j(k) - u_j(k)||
  double residual_bound;
  double identity_error;  ///< max |z_j - u_j - predicted residual|
};

struct WitnessResult {
  Index k;
  Index n_k;
  double eps;
  DirectSumVector target;
  DirectSumVector v;
  double approx_error;
  double target_norm;
  double v_norm;
  bool pass;
  std::vector<WitnessComponent> components;
};

/// Builds v(k) for an admissible target and checks it against the orbit.
WitnessResult build_witness(const OperatorT& T, const DirectSumVector& target, Index k,
                            double tol = kDefaultCheckTol);

struct Target {
  Index k;
  DirectSumVector u;
};

/// Random admissible target for step k (before admission: blocks < k, indices < k).
Target random_target(Rng& rng, Index k, const NormSpec& spec_x);

struct AnnihilationCheck {
  Index support_max;
  Index power;
  bool exact_zero;
};

struct BulletLine {
  std::string name;
  std::string status;  ///< "pass", "fail" or "not machine-checkable"
  std::string detail;
};

struct CriterionReport {
  std::vector<AnnihilationCheck> annihilation;
  std::vector<WitnessResult> witnesses;
  std::vector<BulletLine> bullets;
  bool pass;
};

/// Checks the finite bullets of the eps-hypercyclicity criterion: T^{n_k} x = 0 past the
/// support, ||v(k)|| <= 1/k, and the eps-approximation per target.
CriterionReport criterion_report(const OperatorT& T, const std::vector<Target>& targets,
                                 std::size_t annihilation_samples = 20, std::uint64_t seed = 0,
                                 double tol = kDefaultCheckTol);

// ---------------------------------------------------------------------------
// Lower bound: no power of T brings u delta-close to v = (K e_0, 0, ...).

/// K with |K - u_{n,0}| eps > delta K for all n: 1 if M = 0, else 2 M eps / (eps - delta).
double choose_K(const DirectSumVector& u, double eps, double delta);

struct LowerBoundResult {
  double eps;
  double delta;
  double K_scalar;
  Index horizon;
  double min_ratio;
  double min_slack;
  std::vector<double> per_n_slack;  ///< entry n-1 is ||v - T^n u|| - eps |K - u_{n,0}|
  bool pass;
};

LowerBoundResult lower_bound_check(const OperatorT& T, const DirectSumVector& u, double delta, Index horizon,
                                   double tol = kDefaultCheckTol);

// ---------------------------------------------------------------------------
// l^1 intervals: I_n = I cap {a : ||T^n u - a v|| <= eps a}, v = (e_0, 0, ...).

struct IntervalEntry {
  Index n;
  bool block_start;  ///< n = m_k for some k
  Scalar u_n0;
  Scalar x_n;
  /// Superset [anchor + lower_offset, anchor + upper_offset] before intersecting with I;
  /// present only when Re u_{n,0} > 0 and n is not a block start.
  bool has_superset;
  double anchor;  ///< Re x_n
  double lower_offset;
  double upper_offset;
  bool empty;  ///< after intersecting with I
  double lo;
  double hi;
  bool negative_re_x;  ///< nonempty with Re x_n < 0: flagged for review

  double superset_length() const { return upper_offset - lower_offset; }
  double length() const;
};

struct IntervalReport {
  double eps;
  double M;
  double ray_start;  ///< 2M / (1 - eps)
  Index horizon;
  double probe_length;
  std::vector<IntervalEntry> intervals;  ///< one per n = 0..horizon
  double total_length;
  double bound;  ///< 2 eps / (1 - eps^2) * sum_n max(Re u_{n,0}, 0)
  std::optional<double> uncovered_point;
  std::vector<Index> flagged;
};

/// Requires X = Y = l^1.
IntervalReport l1_interval_report(const OperatorT& T, const DirectSumVector& u, Index horizon, double probe_length);

struct SupersetCheck {
  std::size_t points;
  std::size_t violations;
  double worst_excess;  ///< largest distance of a violating grid point to its interval
};

/// Every grid point a in (ray_start, ray_start + probe_length] with ||T^n u - a v|| <= eps a
/// must lie in the recorded interval for n.
SupersetCheck check_interval_superset(const OperatorT& T, const DirectSumVector& u, const IntervalReport& report,
                                      std::size_t grid_points = 10'000);

}  // namespace epslab

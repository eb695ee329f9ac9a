#include "epslab/verification.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "epslab/parallel.hpp"

namespace epslab {

// ---------------------------------------------------------------------------
// Witnesses

bool is_admissible(const DirectSumVector& u, Index k, const NormSpec& spec_x) {
  for (const auto& [j, block] : u) {
    if (j >= k) return false;
    if (!block.empty() && block.max_index() >= k) return false;
    if (norm_x(block, spec_x) > static_cast<double>(k) * (1.0 + 1e-12)) return false;
  }
  return true;
}

AdmittedTarget admit_target(const DirectSumVector& u, Index k, const NormSpec& spec_x) {
  if (k < 1) throw DomainError("targets are indexed from k = 1");
  AdmittedTarget out{{}, 1.0, 0, 0.0};
  for (const auto& [j, block] : u) {
    if (j >= k) {
      out.dropped += block.size();
      continue;
    }
    CoeffVector kept;
    for (const auto& [i, c] : block) {
      if (i < k) {
        kept.set(i, c);
      } else {
        ++out.dropped;
      }
    }
    out.max_block_norm = std::max(out.max_block_norm, norm_x(kept, spec_x));
    out.target.set_block(j, std::move(kept));
  }
  const double cap = static_cast<double>(k);
  if (out.max_block_norm > cap) {
    out.scale = cap / out.max_block_norm;
    out.target *= out.scale;
  }
  return out;
}

Target random_target(Rng& rng, Index k, const NormSpec& spec_x) {
  (void)spec_x;
  std::uniform_real_distribution<double> magnitude(0.1, 2.0 * static_cast<double>(k));
  std::bernoulli_distribution keep(0.7);
  DirectSumVector u;
  for (Index j = 0; j < k; ++j) {
    if (j + 1 < k && !keep(rng)) continue;
    CoeffVector block = random_coeff_vector(rng, k - 1, k);
    block *= magnitude(rng);
    u.set_block(j, std::move(block));
  }
  return {k, std::move(u)};
}

WitnessResult build_witness(const OperatorT& T, const DirectSumVector& target, Index k, double tol) {
  const BlockPlan& plan = T.plan();
  if (k < 1 || k > plan.block_count()) {
    throw RangeError("witness for k=" + std::to_string(k) + " needs a plan with at least k blocks");
  }
  if (!is_admissible(target, k, plan.spec_x())) {
    throw DomainError("target is not admissible for k=" + std::to_string(k) +
                      " (blocks < k, indices < k, block norms <= k)");
  }

  const Constants& c = plan.constants();
  const BlockRecord& bk = plan.block(k);
  const double lambda = c.lambda;
  const double doubling = std::ldexp(1.0, static_cast<int>(bk.r) - 1);  // 2^{r_k - 1}
  const Index n_k = bk.m + bk.r;

  WitnessResult res{k, n_k, c.eps, target, {}, 0.0, 0.0, 0.0, false, {}};
  std::vector<Scalar> predicted_coeff0(k), predicted_coeffk(k);

  for (Index j = 0; j < k; ++j) {
    const CoeffVector& uj = target.block(j);
    const Index l = plan.block_of_index(j);
    const BlockRecord& bl = plan.block(l);
    const Scalar a = uj[0];
    const Scalar b = uj[l];
    const double lambda_rkj = std::pow(lambda, static_cast<double>(bk.r + j));
    const double lambda_j = std::pow(lambda, static_cast<double>(j - bl.m));

    CoeffVector vj;
    for (const auto& [s, coef] : uj) {
      if (s == 0 || s == l) continue;
      vj.add(s, coef * lambda_j / lambda_rkj);
    }

    WitnessComponent comp{j, l, j == bl.m, {}, {}, 1.0, 0.0, 1.0 / static_cast<double>(k * k), 0.0, 0.0, 0.0};
    if (comp.block_start) {
      comp.x = b / lambda_rkj;
      comp.y = bk.y * a / doubling;
      predicted_coeff0[j] = a * (bk.y - 1.0);
      predicted_coeffk[j] = a * bk.y * bk.omega;
    } else {
      // e_l coefficient of A_j^-1 ... A_{m_l+1}^-1 e_l is 1 / (mu_j omega_l).
      const CoeffVector inv = inverse_product(plan, l, j - bl.m);
      comp.mu = 1.0 / (inv[l].real() * bl.omega);
      const Scalar x_prime = b;
      const Scalar y_prime = (a + comp.mu * b) / lambda_j;
      comp.x = x_prime * bl.omega * comp.mu / lambda_rkj;
      comp.y = y_prime * lambda_j / doubling;
      predicted_coeff0[j] = 0.0;
      predicted_coeffk[j] = y_prime * bk.omega;
    }
    vj.add(l, comp.x);
    vj.add(k, comp.y);
    vj = vj.pruned();
    comp.v_norm = norm_x(vj, plan.spec_x());
    res.v.set_block(n_k + j, std::move(vj));
    res.components.push_back(comp);
  }

  const DirectSumVector image = apply_T_pow(T, res.v, n_k);
  res.approx_error = T.norm(image - target);
  res.target_norm = T.norm(target);
  res.v_norm = T.norm(res.v);

  for (auto& comp : res.components) {
    const CoeffVector& uj = target.block(comp.j);
    const CoeffVector residual = image.block(comp.j) - uj;
    comp.residual_norm = norm_x(residual, plan.spec_x());
    comp.residual_bound = comp.block_start ? c.eps * std::abs(uj[0])
                                           : 3.0 / (lambda * (1.0 - c.eps)) * norm_x(uj, plan.spec_x());
    CoeffVector predicted;
    predicted.set(0, predicted_coeff0[comp.j]);
    predicted.add(k, predicted_coeffk[comp.j]);
    comp.identity_error = max_abs_diff(residual, predicted);
  }

  res.pass = res.approx_error <= c.eps * res.target_norm + tol && res.v_norm <= 1.0 / static_cast<double>(k) + tol;
  return res;
}

CriterionReport criterion_report(const OperatorT& T, const std::vector<Target>& targets,
                                 std::size_t annihilation_samples, std::uint64_t seed, double tol) {
  const BlockPlan& plan = T.plan();
  CriterionReport rep;
  Rng rng(seed);

  // Bullet 1: finitely supported x are killed by every n_k beyond their support.
  bool annihilation_ok = true;
  const Index max_block = plan.m(plan.block_count());
  for (std::size_t i = 0; i < annihilation_samples; ++i) {
    const DirectSumVector x = random_direct_sum(rng, max_block, plan.block_count() + 2, 4, 4);
    const Index support = x.max_block();
    std::vector<Index> powers{support + 1};
    for (const auto& b : plan.blocks()) {
      if (b.m + b.r > support) powers.push_back(b.m + b.r);
    }
    for (Index n : powers) {
      const bool zero = apply_T_pow(T, x, n).empty();
      annihilation_ok = annihilation_ok && zero;
      rep.annihilation.push_back({support, n, zero});
    }
  }

  bool decay_ok = true;
  bool approx_ok = true;
  rep.witnesses = parallel_map(targets.size(), [&](std::size_t i) {
    return build_witness(T, targets[i].u, targets[i].k, tol);
  });
  for (const WitnessResult& w : rep.witnesses) {
    decay_ok = decay_ok && w.v_norm <= 1.0 / static_cast<double>(w.k) + tol;
    approx_ok = approx_ok && w.approx_error <= w.eps * w.target_norm + tol;
  }

  auto status = [](bool ok) { return std::string(ok ? "pass" : "fail"); };
  rep.bullets.push_back({"annihilation", status(annihilation_ok),
                         std::to_string(rep.annihilation.size()) + " exact checks of T^n x = 0 past the support"});
  rep.bullets.push_back(
      {"witness_decay", status(decay_ok), std::to_string(targets.size()) + " witnesses with ||v(k)|| <= 1/k"});
  rep.bullets.push_back({"eps_approximation", status(approx_ok),
                         std::to_string(targets.size()) + " targets with ||T^n_k v(k) - u(k)|| <= eps ||u(k)||"});
  rep.bullets.push_back({"dense_generalized_kernel", "not machine-checkable",
                         "density of finitely supported vectors is an infinite-dimensional statement"});
  rep.bullets.push_back({"dense_target_sequence", "not machine-checkable",
                         "density and infinite repetition of (u(k)) are infinite-dimensional statements"});
  rep.pass = annihilation_ok && decay_ok && approx_ok;
  return rep;
}

// ---------------------------------------------------------------------------
// Lower bound

double choose_K(const DirectSumVector& u, double eps, double delta) {
  if (!(delta > 0.0)) throw DomainError("delta must be positive");
  if (!(delta < eps)) throw DomainError("delta must be smaller than eps");
  double M = 0.0;
  for (const auto& [n, block] : u) M = std::max(M, std::abs(coordinate(block, 0)));
  if (M == 0.0) return 1.0;
  return 2.0 * M * eps / (eps - delta);
}

LowerBoundResult lower_bound_check(const OperatorT& T, const DirectSumVector& u, double delta, Index horizon,
                                   double tol) {
  const double eps = T.plan().constants().eps;
  const double K = choose_K(u, eps, delta);
  const DirectSumVector v{{0, CoeffVector::basis(0, K)}};
  const double v_norm = T.norm(v);

  LowerBoundResult res{eps, delta, K, horizon, std::numeric_limits<double>::infinity(),
                       std::numeric_limits<double>::infinity(), {}, false};
  res.per_n_slack.reserve(horizon);
  DirectSumVector orbit = u;
  for (Index n = 1; n <= horizon; ++n) {
    orbit = apply_T(T, orbit);
    const double dist = T.norm(v - orbit);
    const double slack = dist - eps * std::abs(K - coordinate(u.block(n), 0));
    res.per_n_slack.push_back(slack);
    res.min_slack = std::min(res.min_slack, slack);
    res.min_ratio = std::min(res.min_ratio, dist / v_norm);
  }
  if (horizon == 0) {
    res.min_slack = 0.0;
    res.min_ratio = 1.0;
  }
  res.pass = res.min_slack >= -tol && res.min_ratio > delta;
  return res;
}

// ---------------------------------------------------------------------------
// l^1 intervals

double IntervalEntry::length() const {
  if (empty) return 0.0;
  if (lo == anchor + lower_offset) return superset_length();
  return hi - lo;
}

namespace {

bool is_block_start(const BlockPlan& plan, Index n) {
  for (const auto& b : plan.blocks()) {
    if (b.m == n) return true;
  }
  return n == plan.max_weight();
}

}  // namespace

IntervalReport l1_interval_report(const OperatorT& T, const DirectSumVector& u, Index horizon, double probe_length) {
  if (!T.spec_x().is_l1() || !T.spec_y().is_l1()) throw DomainError("l1 interval report needs X = Y = l^1");
  if (!(probe_length >= 0.0)) throw DomainError("probe length must be nonnegative");
  const BlockPlan& plan = T.plan();
  const double eps = plan.constants().eps;

  IntervalReport rep{eps, 0.0, 0.0, horizon, probe_length, {}, 0.0, 0.0, std::nullopt, {}};
  for (const auto& [n, block] : u) rep.M = std::max(rep.M, std::abs(coordinate(block, 0)));
  rep.ray_start = 2.0 * rep.M / (1.0 - eps);

  double positive_mass = 0.0;
  DirectSumVector orbit = u;
  for (Index n = 0; n <= horizon; ++n) {
    if (n > 0) orbit = orbit.empty() ? orbit : apply_T(T, orbit);
    IntervalEntry e{n, is_block_start(plan, n), coordinate(u.block(n), 0), 0.0, false, 0.0, 0.0, 0.0, true,
                    0.0, 0.0, false};
    positive_mass += std::max(e.u_n0.real(), 0.0);

    if (!e.block_start && n <= plan.max_weight() && e.u_n0.real() > 0.0) {
      const Index k = plan.block_of_weight(n);
      e.x_n = coordinate(orbit.block(0), k) / plan.block(k).omega;
      e.has_superset = true;
      e.anchor = e.x_n.real();
      e.lower_offset = e.u_n0.real() / (1.0 + eps);
      e.upper_offset = e.u_n0.real() / (1.0 - eps);
      const double lo = std::max(e.anchor + e.lower_offset, rep.ray_start);
      const double hi = e.anchor + e.upper_offset;
      if (lo <= hi) {
        e.empty = false;
        e.lo = lo;
        e.hi = hi;
        rep.total_length += e.length();
        if (e.anchor < 0.0) {
          e.negative_re_x = true;
          rep.flagged.push_back(n);
        }
      }
    }
    rep.intervals.push_back(e);
  }
  rep.bound = 2.0 * eps / (1.0 - eps * eps) * positive_mass;

  // Sweep the closed intervals from the left for the first uncovered point of the probe window.
  std::vector<std::pair<double, double>> spans;
  for (const auto& e : rep.intervals) {
    if (!e.empty) spans.emplace_back(e.lo, e.hi);
  }
  std::sort(spans.begin(), spans.end());
  // a = 0 (only when M = 0) is met by every T^n u = 0 past the support; start just above it.
  double candidate = rep.ray_start > 0.0 ? rep.ray_start : std::numeric_limits<double>::min();
  const double window_end = rep.ray_start + probe_length;
  for (const auto& [lo, hi] : spans) {
    if (lo > candidate) break;
    if (hi >= candidate) candidate = std::nextafter(hi, std::numeric_limits<double>::infinity());
  }
  if (candidate <= window_end) rep.uncovered_point = candidate;
  return rep;
}

SupersetCheck check_interval_superset(const OperatorT& T, const DirectSumVector& u, const IntervalReport& report,
                                      std::size_t grid_points) {
  if (!T.spec_x().is_l1() || !T.spec_y().is_l1()) throw DomainError("superset check needs X = Y = l^1");
  SupersetCheck out{0, 0, 0.0};
  if (grid_points == 0 || report.probe_length <= 0.0) return out;
  const double eps = report.eps;
  const double step = report.probe_length / static_cast<double>(grid_points);

  DirectSumVector orbit = u;
  for (const auto& e : report.intervals) {
    if (e.n > 0) orbit = orbit.empty() ? orbit : apply_T(T, orbit);
    // ||T^n u - a e_0||_{l1} = |c_0 - a| + rest, with rest independent of a.
    const Scalar c0 = coordinate(orbit.block(0), 0);
    double rest = norm_z(orbit, T.spec_x(), T.spec_y()) - std::abs(c0);
    rest = std::max(rest, 0.0);
    for (std::size_t i = 1; i <= grid_points; ++i) {
      const double a = report.ray_start + step * static_cast<double>(i);
      ++out.points;
      if (std::abs(c0 - a) + rest > eps * a) continue;
      const double slack = 1e-9 * std::max(1.0, a);
      const bool inside = !e.empty && a >= e.lo - slack && a <= e.hi + slack;
      if (!inside) {
        ++out.violations;
        const double excess = e.empty ? std::numeric_limits<double>::infinity()
                                      : std::max(e.lo - a, a - e.hi);
        out.worst_excess = std::max(out.worst_excess, excess);
      }
    }
  }
  return out;
}

}  // namespace epslab

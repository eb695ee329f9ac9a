#include "epslab/construction.hpp"

#include <algorithm>
#include <cmath>
#include <string>

namespace epslab {
namespace {

constexpr Index kMaxStretch = 1'000'000;

bool close_rel(double a, double b, double rel) { return std::abs(a - b) <= rel * std::max(std::abs(a), std::abs(b)); }

[[noreturn]] void invalid(const std::string& what) { throw DomainError("invalid plan: " + what); }

}  // namespace

Constants constants(double eps) {
  if (!(eps > 0.0 && eps < 1.0)) throw DomainError("eps must lie in (0,1), got " + std::to_string(eps));
  const double lambda = 3.0 / (eps * (1.0 - eps));
  const double kappa = (1.0 + lambda) + std::max(1.0 + eps / (1.0 - eps), 2.0 / eps);
  return {eps, lambda, kappa};
}

LargenessBounds largeness_bounds(const Constants& c, Index k, Index r) {
  const double kk = static_cast<double>(k);
  const double lambda_r = std::pow(c.lambda, -static_cast<double>(r));
  const double half_r = std::ldexp(1.0, 1 - static_cast<int>(std::min<Index>(r, 4000)));
  const double s1 = kk * ((kk - 1.0) * lambda_r + half_r);
  const double s2 = kk * ((kk - 1.0) * lambda_r + c.omega_bar() * std::ldexp(1.0, static_cast<int>(k) - 1) * lambda_r +
                          3.0 * std::pow(c.lambda, kk - 2.0) * half_r);
  return {s1, s2, 1.0 / (kk * kk)};
}

BlockPlan::BlockPlan(Constants constants, NormSpec spec_x, std::vector<BlockRecord> blocks)
    : constants_(constants), spec_x_(spec_x), blocks_(std::move(blocks)) {
  if (blocks_.empty()) invalid("a plan needs at least one block");
}

const BlockRecord& BlockPlan::block(Index k) const {
  if (k < 1 || k > blocks_.size()) {
    throw RangeError("block " + std::to_string(k) + " outside plan of " + std::to_string(blocks_.size()) + " blocks");
  }
  return blocks_[k - 1];
}

Index BlockPlan::m(Index k) const {
  if (k == blocks_.size() + 1) return blocks_.back().next_m();
  return block(k).m;
}

Index BlockPlan::block_of_weight(Index n) const {
  if (n < 1 || n > max_weight()) {
    throw RangeError("weight A_" + std::to_string(n) + " outside plan range 1.." + std::to_string(max_weight()));
  }
  auto it = std::lower_bound(blocks_.begin(), blocks_.end(), n,
                             [](const BlockRecord& b, Index value) { return b.next_m() < value; });
  return it->k;
}

Index BlockPlan::block_of_index(Index j) const {
  if (j >= max_weight()) {
    throw RangeError("index " + std::to_string(j) + " outside plan range 0.." + std::to_string(max_weight() - 1));
  }
  auto it = std::upper_bound(blocks_.begin(), blocks_.end(), j,
                             [](Index value, const BlockRecord& b) { return value < b.next_m(); });
  return it->k;
}

BlockPlan plan_blocks(double eps, const NormSpec& spec_x, Index block_count, const std::map<Index, Index>& r_min,
                      double omega_tol) {
  if (block_count < 1) throw DomainError("plan needs at least one block");
  const Constants c = constants(eps);
  // The norm is symmetric in the coordinates, so F_k = span(e_0, e_k) gives the same omega for every k.
  const GeoSolution geo = solve_omega(eps, spec_x, omega_tol);

  std::vector<BlockRecord> blocks;
  blocks.reserve(block_count);
  Index m = 0;
  for (Index k = 1; k <= block_count; ++k) {
    Index r = 2;
    if (auto it = r_min.find(k); it != r_min.end()) r = std::max(r, it->second);
    while (!largeness_bounds(c, k, r).satisfied()) {
      if (++r > kMaxStretch) throw DomainError("no admissible r_k below " + std::to_string(kMaxStretch));
    }
    blocks.push_back({k, m, r, geo.omega, geo.y_star});
    m = blocks.back().next_m();
  }
  BlockPlan plan(c, spec_x, std::move(blocks));
  validate_plan(plan);
  return plan;
}

void validate_plan(const BlockPlan& plan) {
  const Constants& c = plan.constants();
  const Constants expect = constants(c.eps);
  if (!close_rel(c.lambda, expect.lambda, 1e-12)) invalid("lambda does not match 3/(eps(1-eps))");
  if (!close_rel(c.kappa, expect.kappa, 1e-12)) invalid("kappa does not match its formula");

  Index m = 0;
  for (std::size_t i = 0; i < plan.blocks().size(); ++i) {
    const BlockRecord& b = plan.blocks()[i];
    const std::string where = "block " + std::to_string(i + 1) + ": ";
    if (b.k != i + 1) invalid(where + "block numbers must run 1, 2, ...");
    if (b.m != m) invalid(where + "m_k breaks m_1 = 0, m_{k+1} = m_k + r_k + k + 1");
    if (b.r < 2) invalid(where + "r_k must be at least 2");
    if (b.omega < c.eps * (1.0 - 1e-12) || b.omega > c.omega_bar() * (1.0 + 1e-12)) {
      invalid(where + "omega_k outside [eps, eps/(1-eps)]");
    }
    if (!(b.y >= 0.0 && b.y <= 1.0)) invalid(where + "y_k outside [0,1]");
    if (!largeness_bounds(c, b.k, b.r).satisfied()) invalid(where + "r_k too small for the witness bounds");
    m = b.next_m();
  }
}

WeightAction weight(const BlockPlan& plan, Index n) {
  const Index k = plan.block_of_weight(n);
  const BlockRecord& b = plan.block(k);
  const Index j = n - b.m;
  const Index r = b.r;
  const double lambda = plan.constants().lambda;

  WeightAction w{n, k, j, CoeffVector::basis(0), {}, lambda};
  if (j == 1) {
    w.image_ek = CoeffVector{{0, 1.0}, {k, b.omega}};
  } else if (j <= r) {
    w.image_ek = CoeffVector::basis(k, 2.0);
  } else if (j <= r + k - 1) {
    w.image_ek = CoeffVector::basis(k, 1.0);
  } else if (j == r + k) {
    w.image_ek = CoeffVector::basis(k, std::ldexp(1.0, -static_cast<int>(r - 1)));
  } else {
    w.image_ek = CoeffVector{{0, -1.0 / b.omega}, {k, 1.0 / b.omega}};
    w.scalar_other = std::pow(lambda, -static_cast<double>(r + k));
  }
  return w;
}

CoeffVector apply_weight(const WeightAction& w, const CoeffVector& v) {
  CoeffVector out;
  for (const auto& [i, c] : v) {
    if (i == 0) {
      for (const auto& [t, a] : w.image_e0) out.add(t, c * a);
    } else if (i == w.k) {
      for (const auto& [t, a] : w.image_ek) out.add(t, c * a);
    } else {
      out.add(i, c * w.scalar_other);
    }
  }
  return out;
}

CoeffVector apply_weight_inverse(const WeightAction& w, const CoeffVector& v) {
  // Restricted to span(e_0, e_k) the weight is [[1, alpha], [0, beta]].
  const Scalar alpha = w.image_ek[0];
  const Scalar beta = w.image_ek[w.k];
  CoeffVector out;
  for (const auto& [i, c] : v) {
    if (i == 0) {
      out.add(0, c);
    } else if (i == w.k) {
      out.add(w.k, c / beta);
      out.add(0, -alpha * c / beta);
    } else {
      out.add(i, c / w.scalar_other);
    }
  }
  return out;
}

namespace {

void require_position(const BlockRecord& b, Index j, const char* what) {
  if (j < 1 || j > b.length()) {
    throw RangeError(std::string(what) + ": j=" + std::to_string(j) + " outside 1.." + std::to_string(b.length()));
  }
}

}  // namespace

CoeffVector forward_product(const BlockPlan& plan, Index k, Index j) {
  const BlockRecord& b = plan.block(k);
  require_position(b, j, "forward_product");
  const Index r = b.r;
  if (j == b.length()) return CoeffVector::basis(k);
  double scale = 1.0;
  if (j >= 2 && j <= r) {
    scale = std::ldexp(1.0, static_cast<int>(j - 1));
  } else if (j > r && j <= r + k - 1) {
    scale = std::ldexp(1.0, static_cast<int>(r - 1));
  }
  return CoeffVector{{0, scale}, {k, scale * b.omega}};
}

CoeffVector inverse_product(const BlockPlan& plan, Index k, Index j) {
  const BlockRecord& b = plan.block(k);
  require_position(b, j, "inverse_product");
  const Index r = b.r;
  if (j == b.length()) return CoeffVector::basis(k);
  double doubling = 1.0;
  if (j >= 2 && j <= r) {
    doubling = std::ldexp(1.0, static_cast<int>(j - 1));
  } else if (j > r && j <= r + k - 1) {
    doubling = std::ldexp(1.0, static_cast<int>(r - 1));
  }
  return CoeffVector{{0, -1.0 / b.omega}, {k, 1.0 / (doubling * b.omega)}};
}

}  // namespace epslab

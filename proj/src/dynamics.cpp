#include "epslab/dynamics.hpp"

#include <algorithm>
#include <string>

#include "epslab/sampling.hpp"

namespace epslab {
namespace {

void require_in_plan(const OperatorT& T, const DirectSumVector& u) {
  if (!u.empty() && u.max_block() > T.plan().max_weight()) {
    throw RangeError("vector block " + std::to_string(u.max_block()) + " needs weights beyond the plan (last A_" +
                     std::to_string(T.plan().max_weight()) + ")");
  }
}

}  // namespace

DirectSumVector apply_T(const OperatorT& T, const DirectSumVector& u) {
  require_in_plan(T, u);
  DirectSumVector out;
  for (const auto& [n, block] : u) {
    if (n == 0) continue;
    out.set_block(n - 1, apply_weight(weight(T.plan(), n), block));
  }
  return out;
}

DirectSumVector apply_T_pow(const OperatorT& T, const DirectSumVector& u, Index n) {
  require_in_plan(T, u);
  DirectSumVector cur = u;
  for (Index step = 0; step < n && !cur.empty(); ++step) cur = apply_T(T, cur);
  return cur;
}

DirectSumVector apply_T_pow_composed(const OperatorT& T, const DirectSumVector& u, Index n) {
  require_in_plan(T, u);
  DirectSumVector out;
  for (const auto& [s, block] : u) {
    if (s < n) continue;
    // Columns of P = A_{j+1} ... A_s restricted to supp(block) + {0}; every A maps
    // e_i into span(e_0, e_i), so this coordinate set is closed.
    std::map<Index, CoeffVector> columns;
    columns[0] = CoeffVector::basis(0);
    for (const auto& [i, c] : block) columns[i] = CoeffVector::basis(i);

    for (Index w = s - n + 1; w <= s; ++w) {
      const WeightAction a = weight(T.plan(), w);
      // P <- P A_w, column by column: (P A_w) e_i = P (A_w e_i).
      const CoeffVector col0 = columns[0];
      for (auto& [i, col] : columns) {
        if (i == 0) continue;  // A_w e_0 = e_0
        if (i == a.k) {
          col = a.image_ek[0] * col0 + a.image_ek[a.k] * col;
        } else {
          col *= a.scalar_other;
        }
      }
    }

    CoeffVector image;
    for (const auto& [i, c] : block) image += c * columns.at(i);
    out.set_block(s - n, std::move(image));
  }
  return out;
}

TBoundResult check_T_bound(const OperatorT& T, std::size_t samples, std::uint64_t seed) {
  if (samples < 1) throw DomainError("check_T_bound needs at least one sample");
  Rng rng(seed);
  const Index max_block = T.plan().max_weight();
  const Index max_index = T.plan().block_count() + 3;
  double worst = 0.0;
  for (std::size_t i = 0; i < samples; ++i) {
    const DirectSumVector u = random_direct_sum(rng, max_block, max_index, 6, 6);
    const double base = T.norm(u);
    if (base == 0.0) continue;
    worst = std::max(worst, T.norm(apply_T(T, u)) / base);
  }
  const double bound = OperatorT::backward_shift_norm * T.plan().constants().kappa;
  return {samples, worst, bound, worst <= bound + 1e-9};
}

}  // namespace epslab

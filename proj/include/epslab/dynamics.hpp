#pragma once

#include <cstdint>

#include "epslab/construction.hpp"
#include "epslab/spaces.hpp"

namespace epslab {

/// T(u_0, u_1, ...) = (A_1 u_1, A_2 u_2, ...) on Z = (+)_Y X.
class OperatorT {
 public:
  OperatorT(BlockPlan plan, NormSpec spec_y) : plan_(std::move(plan)), spec_y_(spec_y) {}

  const BlockPlan& plan() const { return plan_; }
  const NormSpec& spec_x() const { return plan_.spec_x(); }
  const NormSpec& spec_y() const { return spec_y_; }

  double norm(const DirectSumVector& u) const { return norm_z(u, spec_x(), spec_y_); }

  /// Norm of the backward shift on Y; 1 for l^p and c_0.
  static constexpr double backward_shift_norm = 1.0;

 private:
  BlockPlan plan_;
  NormSpec spec_y_;
};

/// Throws RangeError if u has a block beyond the last weight of the plan.
DirectSumVector apply_T(const OperatorT& T, const DirectSumVector& u);

/// T^n u by n successive applications of T.
DirectSumVector apply_T_pow(const OperatorT& T, const DirectSumVector& u, Index n);

/// T^n u by composing A_{j+1} ... A_{j+n} into one sparse map per source block
/// (ascending right-multiplication) and applying it once.
DirectSumVector apply_T_pow_composed(const OperatorT& T, const DirectSumVector& u, Index n);

struct TBoundResult {
  std::size_t samples;
  double max_ratio;
  double bound;  ///< K_1 kappa
  bool pass;
};

/// Largest ||Tu|| / ||u|| over random finitely supported u.
TBoundResult check_T_bound(const OperatorT& T, std::size_t samples, std::uint64_t seed);

}  // namespace epslab

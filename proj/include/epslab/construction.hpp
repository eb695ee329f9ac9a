#pragma once

#include <map>
#include <vector>

#include "epslab/geometry.hpp"
#include "epslab/spaces.hpp"

namespace epslab {

struct Constants {
  double eps;
  double lambda;  ///< 3 / (eps (1 - eps))
  double kappa;   ///< (1 + lambda) + max(1 + eps/(1-eps), 2/eps)

  /// Upper end of the omega bracket, eps / (1 - eps).
  double omega_bar() const { return eps / (1.0 - eps); }
};

Constants constants(double eps);

struct BlockRecord {
  Index k;  ///< block number, from 1
  Index m;  ///< start index m_k
  Index r;  ///< doubling stretch r_k
  double omega;
  double y;

  /// Number of weights in the block, m_{k+1} - m_k.
  Index length() const { return r + k + 1; }
  Index next_m() const { return m + length(); }
};

/// Sufficient conditions on r_k for the witness bound ||v_j(k)|| <= k^-2.
///   s1 = k((k-1) lambda^-r + 2^(1-r))                                   (j = m_l)
///   s2 = k((k-1) lambda^-r + wbar 2^(k-1) lambda^-r + 3 lambda^(k-2) 2^(1-r))  (j > m_l)
struct LargenessBounds {
  double s1;
  double s2;
  double target;  ///< k^-2

  bool satisfied() const { return s1 <= target && s2 <= target; }
};

LargenessBounds largeness_bounds(const Constants& c, Index k, Index r);

/// Weights A_1 .. A_{m_{K+1}} for blocks 1..K. Immutable once built.
class BlockPlan {
 public:
  BlockPlan(Constants constants, NormSpec spec_x, std::vector<BlockRecord> blocks);

  const Constants& constants() const { return constants_; }
  const NormSpec& spec_x() const { return spec_x_; }
  const std::vector<BlockRecord>& blocks() const { return blocks_; }
  Index block_count() const { return blocks_.size(); }

  /// Record for block k, 1 <= k <= K.
  const BlockRecord& block(Index k) const;
  /// m_k for 1 <= k <= K + 1.
  Index m(Index k) const;
  /// m_{K+1}: the largest weight index the plan defines.
  Index max_weight() const { return m(block_count() + 1); }

  /// The k with m_k < n <= m_{k+1}; requires 1 <= n <= max_weight().
  Index block_of_weight(Index n) const;
  /// The l with m_l <= j < m_{l+1}; requires j < max_weight().
  Index block_of_index(Index j) const;

 private:
  Constants constants_;
  NormSpec spec_x_;
  std::vector<BlockRecord> blocks_;
};

/// Builds K blocks. r_k is the least r >= max(2, r_min[k]) with
/// largeness_bounds(k, r).satisfied().
BlockPlan plan_blocks(double eps, const NormSpec& spec_x, Index block_count,
                      const std::map<Index, Index>& r_min = {}, double omega_tol = kDefaultOuterTol);

/// Re-checks the m recurrence, r_k >= 2, the constants, the omega bracket and the
/// largeness inequalities. Throws DomainError on the first violation.
void validate_plan(const BlockPlan& plan);

/// Action of one weight A_n: e_0 -> image_e0, e_k -> image_ek, e_l -> scalar_other e_l otherwise.
struct WeightAction {
  Index n;
  Index k;
  Index j;  ///< position n - m_k in the block, 1..r_k+k+1
  CoeffVector image_e0;
  CoeffVector image_ek;
  Scalar scalar_other;
};

WeightAction weight(const BlockPlan& plan, Index n);
CoeffVector apply_weight(const WeightAction& w, const CoeffVector& v);
CoeffVector apply_weight_inverse(const WeightAction& w, const CoeffVector& v);

/// A_{m_k+1} ... A_{m_k+j} e_k from the closed-form table, 1 <= j <= r_k+k+1.
CoeffVector forward_product(const BlockPlan& plan, Index k, Index j);
/// A_{m_k+j}^-1 ... A_{m_k+1}^-1 e_k from the closed-form table, 1 <= j <= r_k+k+1.
CoeffVector inverse_product(const BlockPlan& plan, Index k, Index j);

}  // namespace epslab

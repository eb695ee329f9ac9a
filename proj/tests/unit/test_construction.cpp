#include "doctest.h"

#include "epslab/construction.hpp"
#include "epslab/sampling.hpp"
#include "oracles.hpp"

using namespace epslab;

namespace {

double diff(const oracle::Dense& a, const oracle::Dense& b) {
  double m = 0.0;
  for (std::size_t i = 0; i < a.size(); ++i) m = std::max(m, std::abs(a[i] - b[i]));
  return m;
}

}  // namespace

TEST_CASE("constants") {
  const Constants half = constants(0.5);
  CHECK(half.lambda == 12.0);
  CHECK(half.kappa == 17.0);
  const Constants fifth = constants(0.2);
  CHECK(fifth.lambda == doctest::Approx(18.75));
  CHECK(fifth.kappa == doctest::Approx(29.75));
  for (int i = 1; i < 100; ++i) CHECK(constants(i / 100.0).lambda >= 12.0);
  CHECK_THROWS_AS(constants(0.0), DomainError);
  CHECK_THROWS_AS(constants(1.0), DomainError);
}

TEST_CASE("plan examples") {
  const BlockPlan one = plan_blocks(0.5, NormSpec::lp(1.0), 1);
  CHECK(one.m(1) == 0);
  CHECK(one.block(1).omega == doctest::Approx(0.5));
  CHECK(one.block(1).r == 2);
  CHECK(one.m(2) == 4);

  const BlockPlan forced = plan_blocks(0.5, NormSpec::lp(2.0), 4, {{3, 50}});
  CHECK(forced.block(3).r >= 50);
  CHECK(forced.block(3).r == 50);

  for (const auto& spec : {NormSpec::lp(2.0), NormSpec::sup()}) {
    CHECK(plan_blocks(0.3, spec, 1).m(1) == 0);
  }
}

TEST_CASE("plan invariants") {
  for (double eps : {0.2, 0.5, 0.8}) {
    for (const auto& spec : {NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::sup()}) {
      const BlockPlan plan = plan_blocks(eps, spec, 8);
      CHECK(plan.m(1) == 0);
      for (Index k = 1; k <= 8; ++k) {
        const BlockRecord& b = plan.block(k);
        CHECK(b.k == k);
        CHECK(plan.m(k + 1) == b.m + b.r + k + 1);
        CHECK(b.r >= 2);
        CHECK(b.omega >= eps);
        CHECK(b.omega <= eps / (1.0 - eps) + 1e-15);
        CHECK(largeness_bounds(plan.constants(), k, b.r).satisfied());
        if (b.r > 2) CHECK_FALSE(largeness_bounds(plan.constants(), k, b.r - 1).satisfied());
      }
      for (Index n = 1; n <= plan.max_weight(); ++n) {
        const Index k = plan.block_of_weight(n);
        CHECK(plan.m(k) < n);
        CHECK(n <= plan.m(k + 1));
      }
      for (Index j = 0; j < plan.max_weight(); ++j) {
        const Index l = plan.block_of_index(j);
        CHECK(plan.m(l) <= j);
        CHECK(j < plan.m(l + 1));
      }
    }
  }
}

TEST_CASE("validate_plan rejects tampered plans") {
  const BlockPlan good = plan_blocks(0.5, NormSpec::lp(2.0), 3);
  auto with = [&](auto edit) {
    std::vector<BlockRecord> blocks = good.blocks();
    Constants c = good.constants();
    edit(blocks, c);
    return BlockPlan(c, good.spec_x(), blocks);
  };
  CHECK_NOTHROW(validate_plan(good));
  CHECK_THROWS_AS(validate_plan(with([](auto& b, auto&) { b[1].m += 1; })), DomainError);
  CHECK_THROWS_AS(validate_plan(with([](auto& b, auto&) { b[0].r = 1; })), DomainError);
  CHECK_THROWS_AS(validate_plan(with([](auto& b, auto&) { b[2].omega = 0.1; })), DomainError);
  CHECK_THROWS_AS(validate_plan(with([](auto& b, auto&) { b[2].y = 1.5; })), DomainError);
  CHECK_THROWS_AS(validate_plan(with([](auto&, auto& c) { c.lambda = 13.0; })), DomainError);
  CHECK_THROWS_AS(validate_plan(with([](auto& b, auto&) { b[1].k = 5; })), DomainError);
}

TEST_CASE("weights match the table") {
  for (const auto& spec : {NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::sup()}) {
    const BlockPlan plan = plan_blocks(0.5, spec, 5);
    const Index dim = 8;
    for (Index n = 1; n <= plan.max_weight(); ++n) {
      const WeightAction w = weight(plan, n);
      CHECK(w.image_e0 == CoeffVector::basis(0));
      const oracle::Matrix a = oracle::weight_matrix(plan, n, dim);
      for (Index col = 0; col < dim; ++col) {
        const CoeffVector image = apply_weight(w, CoeffVector::basis(col));
        oracle::Dense expect(dim);
        for (Index row = 0; row < dim; ++row) expect[row] = a[row][col];
        CHECK(diff(oracle::dense(image, dim), expect) <= 1e-14 * oracle::norm(expect, NormSpec::sup()));
      }
    }
    const BlockRecord& b = plan.block(2);
    const WeightAction first = weight(plan, b.m + 1);
    CHECK(apply_weight(first, CoeffVector::basis(2)) == CoeffVector({{0, 1.0}, {2, b.omega}}));
    CHECK(first.scalar_other == Scalar(plan.constants().lambda));
    const WeightAction last = weight(plan, b.m + b.r + 2 + 1);
    CHECK(last.scalar_other.real() == doctest::Approx(std::pow(plan.constants().lambda, -double(b.r + 2))));
    CHECK_THROWS_AS(weight(plan, 0), RangeError);
    CHECK_THROWS_AS(weight(plan, plan.max_weight() + 1), RangeError);
  }
}

TEST_CASE("weight inverse round trip") {
  const BlockPlan plan = plan_blocks(0.2, NormSpec::lp(2.0), 4);
  Rng rng(1);
  for (Index n = 1; n <= plan.max_weight(); ++n) {
    const WeightAction w = weight(plan, n);
    for (int t = 0; t < 10; ++t) {
      const CoeffVector v = random_coeff_vector(rng, 6, 5);
      const CoeffVector back = apply_weight_inverse(w, apply_weight(w, v));
      CHECK(max_abs_diff(back, v) <= 1e-12 * std::max(1.0, norm_x(v, NormSpec::sup())));
    }
  }
}

TEST_CASE("product tables match iterated dense products") {
  for (double eps : {0.2, 0.5, 0.8}) {
    const BlockPlan plan = plan_blocks(eps, NormSpec::lp(2.0), 6);
    for (Index k = 1; k <= 6; ++k) {
      const Index dim = k + 1;
      const BlockRecord& b = plan.block(k);
      oracle::Matrix fwd = oracle::identity(dim);
      oracle::Dense inv = oracle::dense(CoeffVector::basis(k), dim);
      for (Index j = 1; j <= b.r + k + 1; ++j) {
        const oracle::Matrix a = oracle::weight_matrix(plan, b.m + j, dim);
        fwd = oracle::mul(fwd, a);
        // Invert A on span(e_0, e_k): upper triangular 2x2.
        const Scalar a00 = a[0][0], a0k = a[0][k], akk = a[k][k];
        const Scalar ck = inv[k] / akk;
        const Scalar c0 = (inv[0] - a0k * ck) / a00;
        inv[0] = c0;
        inv[k] = ck;

        oracle::Dense fcol(dim);
        for (Index row = 0; row < dim; ++row) fcol[row] = fwd[row][k];
        const double scale = std::max(1.0, oracle::norm(fcol, NormSpec::sup()));
        CHECK(diff(oracle::dense(forward_product(plan, k, j), dim), fcol) <= 1e-10 * scale);
        CHECK(diff(oracle::dense(inverse_product(plan, k, j), dim), inv) <= 1e-10);
      }
      CHECK(forward_product(plan, k, 1) == CoeffVector({{0, 1.0}, {k, b.omega}}));
      CHECK(forward_product(plan, k, b.r + k + 1) == CoeffVector::basis(k));
      CHECK(inverse_product(plan, k, b.r + k + 1) == CoeffVector::basis(k));
      if (b.r >= 3) {
        const CoeffVector three = forward_product(plan, k, 3);
        CHECK(three[0] == Scalar(4.0));
        CHECK(three[k].real() == doctest::Approx(4.0 * b.omega));
      }
      CHECK_THROWS_AS(forward_product(plan, k, 0), RangeError);
      CHECK_THROWS_AS(inverse_product(plan, k, b.r + k + 2), RangeError);
    }
  }
}

TEST_CASE("a full block multiplies to the identity") {
  const BlockPlan plan = plan_blocks(0.5, NormSpec::sup(), 5);
  const Index dim = 8;
  for (Index k = 1; k <= 5; ++k) {
    oracle::Matrix p = oracle::identity(dim);
    for (Index n = plan.m(k) + 1; n <= plan.m(k + 1); ++n) p = oracle::mul(p, oracle::weight_matrix(plan, n, dim));
    for (Index row = 0; row < dim; ++row) {
      for (Index col = 0; col < dim; ++col) {
        CHECK(std::abs(p[row][col] - (row == col ? 1.0 : 0.0)) <= 1e-10);
      }
    }
  }
}

TEST_CASE("every weight is bounded by kappa") {
  Rng rng(9);
  for (double eps : {0.2, 0.5, 0.8}) {
    for (const auto& spec : {NormSpec::lp(1.0), NormSpec::lp(2.0), NormSpec::sup()}) {
      const BlockPlan plan = plan_blocks(eps, spec, 4);
      const double kappa = plan.constants().kappa;
      for (Index n = 1; n <= plan.max_weight(); ++n) {
        const WeightAction w = weight(plan, n);
        for (int t = 0; t < 20; ++t) {
          const CoeffVector v = random_coeff_vector(rng, 6, 6);
          CHECK(norm_x(apply_weight(w, v), spec) <= kappa * norm_x(v, spec) * (1.0 + 1e-12));
        }
        // The extreme direction for the first weight of a block.
        const CoeffVector ek = CoeffVector::basis(w.k);
        CHECK(norm_x(apply_weight(w, ek), spec) <= kappa);
      }
    }
  }
}

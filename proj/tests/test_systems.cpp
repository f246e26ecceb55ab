#include <gtest/gtest.h>

#include "oracles.hpp"
#include "protower/protower.hpp"
#include "protower/verify/sampling.hpp"

using namespace protower;

namespace {

const PrimeField k2{2};

std::vector<RingTower<PrimeField>> towers() {
  auto t = truncated_polynomial_tower(k2, 3);
  return {t, product_with_constant_factor(t, field_algebra(k2)), half_speed_tower(k2, 4),
          upper_triangular_tower(truncated_polynomial_tower(k2, 2)), constant_tower(matrix_algebra(field_algebra(k2), 2), 3)};
}

TEST(MakeLeftSystem, RegularTopGivesFreeRankOne) {
  for (const auto& t : towers()) {
    auto p = make_left_system(t, regular_module(t.top(), Side::left));
    auto f = free_system(t, 1);
    EXPECT_EQ(p.dims(), f.dims());
    EXPECT_FALSE(system_defect(p));
    EXPECT_FALSE(system_defect(f));
    // the identity top map is an isomorphism at every level
    for (std::size_t n = 1; n <= t.depth(); ++n) {
      auto g = level_component(p, f, Matrix<PrimeField>::identity(k2, t.top()->dim()), n);
      EXPECT_TRUE(is_module_map(p.level(n), f.level(n), g));
      EXPECT_EQ(rank(g), f.level(n).dim());
    }
  }
}

TEST(MakeLeftSystem, DualNumbersPlusResidueField) {
  auto t = truncated_polynomial_tower(k2, 3);
  auto reg = regular_module(t.top(), Side::left);
  auto residue = quotient_module(reg, generated_submodule(reg, {t.top()->basis(1)})).module;
  auto p = make_left_system(t, direct_sum(reg, residue));
  EXPECT_EQ(p.dims(), (std::vector<std::size_t>{2, 3, 4}));
  // levelwise oracle: P_n = R_n (x)_{R_d} P_d
  for (std::size_t n = 1; n <= 3; ++n) {
    auto rn = restrict_module(t.projection(n), regular_module(t.level(n), Side::right));
    EXPECT_EQ(oracle::tensor_dim_by_relations(rn, p.top()), p.level(n).dim());
  }
}

TEST(MakeLeftSystem, ZeroTop) {
  auto t = truncated_polynomial_tower(k2, 3);
  auto p = make_left_system(t, zero_module(t.top(), Side::left));
  EXPECT_EQ(p.dims(), (std::vector<std::size_t>{0, 0, 0}));
  EXPECT_FALSE(system_defect(p));
}

TEST(MakeLeftSystem, AlwaysSatisfiesSystemAxiom) {
  Sampler rng(3);
  for (const auto& t : towers())
    for (int trial = 0; trial < 6; ++trial) {
      auto p = make_left_system(t, random_module(t.top(), Side::left, rng));
      EXPECT_FALSE(system_defect(p));
      EXPECT_NO_THROW(LeftSystem<PrimeField>::make(t, p.levels(), p.transitions()));
    }
}

TEST(MakeLeftSystem, RejectsWrongAlgebra) {
  auto t = truncated_polynomial_tower(k2, 3);
  EXPECT_THROW(make_left_system(t, regular_module(t.level(2), Side::left)), ValidationError);
  EXPECT_THROW(make_left_system(t, regular_module(t.top(), Side::right)), ValidationError);
}

TEST(LeftSystem, RejectsBrokenAxiom) {
  // residue field at every level with zero transitions: sigma is not onto
  auto t = truncated_polynomial_tower(k2, 3);
  std::vector<FinModule<PrimeField>> levels;
  for (std::size_t n = 1; n <= 3; ++n) {
    auto reg = regular_module(t.level(n), Side::left);
    levels.push_back(n == 1 ? reg : quotient_module(reg, generated_submodule(reg, {t.level(n)->basis(1)})).module);
  }
  std::vector<Matrix<PrimeField>> zero{Matrix<PrimeField>(k2, 1, 1), Matrix<PrimeField>(k2, 1, 1)};
  auto defect = detail::system_defect(t, levels, zero);
  ASSERT_TRUE(defect);
  EXPECT_EQ(defect->level, 1u);
  EXPECT_EQ(defect->cokernel_dim, 1u);
  EXPECT_THROW(LeftSystem<PrimeField>::make(t, levels, zero), ValidationError);
  // correct transitions repair it
  std::vector<Matrix<PrimeField>> ones{Matrix<PrimeField>::identity(k2, 1), Matrix<PrimeField>::identity(k2, 1)};
  EXPECT_NO_THROW(LeftSystem<PrimeField>::make(t, levels, ones));
}

TEST(LeftSystem, RejectsOversizedLevel) {
  // P_1 = R_1^2 is too big for R_1 (x) P_2 with P_2 = R_2
  auto t = truncated_polynomial_tower(k2, 2);
  std::vector<FinModule<PrimeField>> levels{free_module(t.level(1), Side::left, 2), regular_module(t.level(2), Side::left)};
  Matrix<PrimeField> tau(k2, 2, 2);
  tau(0, 0) = 1;
  auto defect = detail::system_defect(t, levels, {tau});
  ASSERT_TRUE(defect);
  EXPECT_EQ(defect->level, 1u);
}

TEST(SystemHom, Examples) {
  Sampler rng(11);
  auto t = truncated_polynomial_tower(k2, 2);
  for (int trial = 0; trial < 5; ++trial) {
    auto q = make_left_system(t, random_module(t.top(), Side::left, rng));
    EXPECT_EQ(system_hom(free_system(t, 1), q).dim(), q.top().dim());
    EXPECT_EQ(system_hom(q, zero_system(t)).dim(), 0u);
  }
  auto reg = regular_module(t.top(), Side::left);
  auto p = make_left_system(t, direct_sum(reg, quotient_module(reg, generated_submodule(reg, {t.top()->basis(1)})).module));
  auto h = system_hom(p, p);
  EXPECT_EQ(std::uint64_t{1} << h.dim(), oracle::count_module_maps(p.top(), p.top()));
  EXPECT_EQ(h.dim(), 5u);
  EXPECT_THROW(system_hom(p, free_system(truncated_polynomial_tower(k2, 3), 1)), ValidationError);
}

TEST(SystemHom, LevelComponentsCommuteWithTransitions) {
  Sampler rng(12);
  auto t = product_with_constant_factor(truncated_polynomial_tower(k2, 3), field_algebra(k2));
  for (int trial = 0; trial < 5; ++trial) {
    auto p = make_left_system(t, random_module(t.top(), Side::left, rng));
    auto q = make_left_system(t, random_module(t.top(), Side::left, rng));
    auto hom = system_hom(p, q);
    for (const auto& g : hom.basis())
      for (std::size_t n = 1; n < 3; ++n) {
        auto gn = level_component(p, q, g, n);
        auto gn1 = level_component(p, q, g, n + 1);
        EXPECT_EQ(gn * p.transition(n), q.transition(n) * gn1);
        EXPECT_TRUE(is_module_map(p.level(n), q.level(n), gn));
      }
  }
}

TEST(Contratensor, FreeSystems) {
  Sampler rng(13);
  for (const auto& t : towers())
    for (std::size_t r = 0; r <= 2; ++r)
      for (std::size_t m = 1; m <= t.depth(); ++m) {
        auto n = DiscreteModule<PrimeField>::make(t, m, random_module(t.level(m), Side::right, rng));
        EXPECT_EQ(contratensor(n, free_system(t, r)).dim(), r * n.dim());
      }
}

TEST(Contratensor, RegularDiscreteModule) {
  Sampler rng(14);
  for (const auto& t : towers()) {
    auto p = make_left_system(t, random_module(t.top(), Side::left, rng));
    for (std::size_t m = 1; m <= t.depth(); ++m) {
      auto n = DiscreteModule<PrimeField>::make(t, m, regular_module(t.level(m), Side::right));
      EXPECT_EQ(contratensor(n, p).dim(), p.level(m).dim());
      auto z = DiscreteModule<PrimeField>::make(t, m, zero_module(t.level(m), Side::right));
      EXPECT_EQ(contratensor(z, p).dim(), 0u);
    }
  }
}

TEST(Contratensor, ReleveledModuleGivesSameDimension) {
  Sampler rng(15);
  for (const auto& t : towers())
    for (int trial = 0; trial < 4; ++trial) {
      auto p = make_left_system(t, random_module(t.top(), Side::left, rng));
      auto n = DiscreteModule<PrimeField>::make(t, 1, random_module(t.level(1), Side::right, rng));
      for (std::size_t m = 1; m <= t.depth(); ++m) EXPECT_EQ(contratensor(n.relevel(m), p).dim(), contratensor(n, p).dim());
      EXPECT_THROW(n.relevel(t.depth()).relevel(1), ValidationError);
    }
}

TEST(Contratensor, RightExactOnSurjections) {
  Sampler rng(16);
  for (const auto& t : towers())
    for (int trial = 0; trial < 4; ++trial) {
      // R_d (+) M -> R_d / (r), zero on M
      auto reg = regular_module(t.top(), Side::left);
      auto p = make_left_system(t, direct_sum(reg, random_module(t.top(), Side::left, rng)));
      auto cut = quotient_module(reg, generated_submodule(reg, {rng.vector(k2, reg.dim())}));
      auto pp = make_left_system(t, cut.module);
      Matrix<PrimeField> g(k2, cut.module.dim(), p.top().dim());
      for (std::size_t i = 0; i < reg.dim(); ++i) g.set_column(i, cut.projection.column(i));
      ASSERT_TRUE(is_module_map(p.top(), pp.top(), g));
      for (std::size_t m = 1; m <= t.depth(); ++m) {
        auto n = DiscreteModule<PrimeField>::make(t, m, random_module(t.level(m), Side::right, rng));
        auto a = contratensor(n, p);
        auto b = contratensor(n, pp);
        auto induced = a.induced(Matrix<PrimeField>::identity(k2, n.dim()), level_component(p, pp, g, m), b);
        EXPECT_EQ(rank(induced), b.dim());
      }
    }
}

TEST(Contratensor, SplitFlatSequencesStayExact) {
  Sampler rng(17);
  for (const auto& t : towers()) {
    auto p = free_system(t, 1);
    auto q = free_system(t, 2);
    auto sum = make_left_system(t, direct_sum(p.top(), q.top()));
    const std::size_t dp = p.top().dim(), dq = q.top().dim();
    Matrix<PrimeField> inc(k2, dp + dq, dp), pr(k2, dq, dp + dq);
    for (std::size_t i = 0; i < dp; ++i) inc(i, i) = 1;
    for (std::size_t i = 0; i < dq; ++i) pr(i, dp + i) = 1;
    for (std::size_t m = 1; m <= t.depth(); ++m) {
      auto n = DiscreteModule<PrimeField>::make(t, m, random_module(t.level(m), Side::right, rng));
      auto a = contratensor(n, p), b = contratensor(n, sum), c = contratensor(n, q);
      auto id = Matrix<PrimeField>::identity(k2, n.dim());
      auto i_m = a.induced(id, level_component(p, sum, inc, m), b);
      auto p_m = b.induced(id, level_component(sum, q, pr, m), c);
      EXPECT_EQ(rank(i_m), a.dim());
      EXPECT_EQ(rank(p_m), c.dim());
      EXPECT_TRUE((p_m * i_m).is_zero());
      EXPECT_EQ(a.dim() + c.dim(), b.dim());
    }
  }
}

TEST(IsFlatSystem, Examples) {
  for (const auto& t : towers()) EXPECT_TRUE(is_flat_system(free_system(t, 2)).holds);
  auto t = truncated_polynomial_tower(k2, 3);
  auto reg = regular_module(t.top(), Side::left);
  auto residue = quotient_module(reg, generated_submodule(reg, {t.top()->basis(1)})).module;
  auto p = make_left_system(t, residue);
  EXPECT_FALSE(system_defect(p));
  auto v = is_flat_system(p);
  EXPECT_FALSE(v.holds);
  EXPECT_EQ(*v.failing_level, 2u);
  // product tower, summand R_d e with e = (1, 0)
  auto pt = product_with_constant_factor(truncated_polynomial_tower(k2, 3), field_algebra(k2));
  auto preg = regular_module(pt.top(), Side::left);
  auto e = pt.top()->unit();
  e.back() = 0;
  auto summand = submodule(preg, generated_submodule(preg, {e})).module;
  auto ps = make_left_system(pt, summand);
  EXPECT_EQ(ps.dims(), (std::vector<std::size_t>{1, 2, 3}));
  EXPECT_TRUE(is_flat_system(ps).holds);
  for (std::size_t n = 1; n <= 3; ++n) EXPECT_TRUE(oracle::projective_by_enumeration(ps.level(n)));
}

TEST(Reflections, AreConstant) {
  Sampler rng(18);
  auto t = truncated_polynomial_tower(k2, 3);
  auto p = make_left_system(t, random_module(t.top(), Side::left, rng));
  EXPECT_EQ(separated_reflection(p).dims(), p.dims());
  EXPECT_EQ(nonseparated_part(p).dims(), (std::vector<std::size_t>{0, 0, 0}));
}

TEST(Systems, RationalTower) {
  RationalField q;
  auto t = product_with_constant_factor(truncated_polynomial_tower(q, 3), field_algebra(q));
  Sampler rng(4);
  auto p = make_left_system(t, random_module(t.top(), Side::left, rng));
  EXPECT_FALSE(system_defect(p));
  auto n = DiscreteModule<RationalField>::make(t, 2, regular_module(t.level(2), Side::right));
  EXPECT_EQ(contratensor(n, p).dim(), p.level(2).dim());
}

}  // namespace

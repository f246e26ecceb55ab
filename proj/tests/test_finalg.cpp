#include <gtest/gtest.h>

#include <cstdint>
#include <random>

#include "protower/protower.hpp"

using namespace protower;

namespace {

const PrimeField k2{2};

TEST(PrimeField, ArithmeticIsExact) {
  PrimeField k(7);
  EXPECT_EQ(k.mul(3, 5), 1u);
  EXPECT_EQ(k.inv(3), 5u);
  EXPECT_EQ(k.from_int(-1), 6u);
  EXPECT_EQ(k.sub(2, 5), 4u);
  for (std::uint32_t a = 1; a < 7; ++a) EXPECT_EQ(k.mul(a, k.inv(a)), 1u);
  EXPECT_THROW(PrimeField(6), std::invalid_argument);
  EXPECT_THROW(PrimeField(1u << 31), std::invalid_argument);
  PrimeField big(2147483647u);
  EXPECT_EQ(big.mul(big.inv(123456789u), 123456789u), 1u);
}

TEST(RationalField, ParsesAndPrintsFractions) {
  RationalField q;
  auto x = q.parse("6/4");
  EXPECT_EQ(q.to_string(x), "3/2");
  EXPECT_EQ(q.to_string(q.inv(x)), "2/3");
  EXPECT_EQ(q.to_string(q.from_int(-5)), "-5");
  EXPECT_THROW(q.inv(q.zero()), std::domain_error);
}

TEST(Matrix, SolveKernelRoundTrip) {
  std::mt19937_64 rng(11);
  PrimeField k(5);
  for (int trial = 0; trial < 50; ++trial) {
    Matrix<PrimeField> a(k, 4, 6);
    for (std::size_t i = 0; i < 4; ++i)
      for (std::size_t j = 0; j < 6; ++j) a(i, j) = k.from_int(static_cast<std::int64_t>(rng() % 5));
    auto ker = kernel(a);
    EXPECT_EQ(ker.rows() + rank(a), 6u);
    for (std::size_t r = 0; r < ker.rows(); ++r) EXPECT_TRUE(is_zero_vec(k, a.apply(ker.row(r))));
    Vec<PrimeField> x(6);
    for (auto& e : x) e = k.from_int(static_cast<std::int64_t>(rng() % 5));
    auto b = a.apply(x);
    auto sol = solve(a, b);
    ASSERT_TRUE(sol.has_value());
    EXPECT_TRUE(equal_vec(k, a.apply(*sol), b));
    EXPECT_LE(rank(a), 4u);
  }
}

TEST(Matrix, InconsistentSystemHasCertificate) {
  auto a = Matrix<PrimeField>::from_rows(k2, 2, {{1, 1}, {1, 1}});
  Vec<PrimeField> b{0, 1};
  EXPECT_FALSE(solve(a, b).has_value());
  auto y = infeasibility_certificate(a, b);
  ASSERT_TRUE(y.has_value());
  EXPECT_TRUE(is_zero_vec(k2, a.transpose().apply(*y)));
  EXPECT_NE(dot(k2, *y, b), 0u);
}

TEST(Matrix, RationalSolve) {
  RationalField q;
  auto a = Matrix<RationalField>::from_rows(q, 2, {{q.from_int(2), q.from_int(1)}, {q.from_int(1), q.from_int(3)}});
  Vec<RationalField> b{q.from_int(1), q.from_int(0)};
  auto x = solve(a, b);
  ASSERT_TRUE(x);
  EXPECT_EQ(q.to_string((*x)[0]), "3/5");
  EXPECT_EQ(q.to_string((*x)[1]), "-1/5");
}

TEST(Subspace, EchelonFormIsCanonical) {
  auto s1 = Subspace<PrimeField>::span(k2, 3, {{1, 1, 0}, {0, 1, 1}});
  auto s2 = Subspace<PrimeField>::span(k2, 3, {{1, 0, 1}, {1, 1, 0}, {0, 1, 1}});
  EXPECT_EQ(s1, s2);
  EXPECT_EQ(s1.dim(), 2u);
  EXPECT_TRUE(s1.contains(Vec<PrimeField>{1, 0, 1}));
  EXPECT_FALSE(s1.contains(Vec<PrimeField>{1, 0, 0}));
}

TEST(FinAlgebra, RejectsNonAssociativeConstants) {
  // e0 = 1, e1 * e1 = e0 + e1 is associative; break it with e1 e1 = e1 and
  // a wrong unit row.
  std::vector<std::uint32_t> c(8, 0);
  c[(0 * 2 + 0) * 2 + 0] = 1;
  c[(0 * 2 + 1) * 2 + 1] = 1;
  c[(1 * 2 + 0) * 2 + 0] = 1;  // e1 e0 = e0: unit law fails
  c[(1 * 2 + 1) * 2 + 1] = 1;
  EXPECT_THROW(FinAlgebra<PrimeField>::make(k2, 2, c, {1, 0}), ValidationError);
}

TEST(FinAlgebra, DeclaredCommutativityIsChecked) {
  auto t2 = upper_triangular(field_algebra(k2), 2);
  EXPECT_FALSE(t2->is_commutative());
  EXPECT_THROW(FinAlgebra<PrimeField>::make(k2, t2->dim(), t2->constants(), t2->unit(), {}, true), ValidationError);
}

TEST(FinAlgebra, BuilderFamiliesAreAssociative) {
  std::vector<AlgebraPtr<PrimeField>> family{
      truncated_polynomial(k2, 4),
      polynomial_quotient(k2, Vec<PrimeField>{1, 1}),
      product_algebra(truncated_polynomial(k2, 2), field_algebra(k2)),
      matrix_algebra(field_algebra(k2), 2),
      upper_triangular(truncated_polynomial(k2, 2), 2),
  };
  for (const auto& a : family) EXPECT_EQ(a->associativity_defects(), 0u) << a->name();
}

TEST(FinAlgebra, PresentationExpandsBasis) {
  std::mt19937_64 rng(3);
  auto a = upper_triangular(truncated_polynomial(k2, 2), 2);
  // the left regular representation built from generators must match
  std::vector<Matrix<PrimeField>> gens;
  for (const auto& g : a->generators()) gens.push_back(a->left_multiplication(g));
  auto m = FinModule<PrimeField>::from_generator_action(a, Side::left, a->dim(), gens);
  ASSERT_TRUE(m.has_value());
  for (std::size_t i = 0; i < a->dim(); ++i) EXPECT_EQ(m->action(i), a->left_basis(i));
  EXPECT_LE(a->generators().size(), 3u);
  EXPECT_EQ(truncated_polynomial(k2, 5)->generators().size(), 1u);
}

TEST(QuotientAlgebra, TruncatesMonomialBasis) {
  auto a = truncated_polynomial(k2, 3);
  auto ideal = Ideal<PrimeField>::generated(a, {a->basis(2)}, Sidedness::two_sided);
  auto q = quotient_algebra(ideal);
  EXPECT_EQ(q.algebra->dim(), 2u);
  EXPECT_TRUE(q.algebra->same_structure(*truncated_polynomial(k2, 2)));
  EXPECT_TRUE(q.projection.is_surjective());
}

TEST(QuotientAlgebra, ZeroIdealGivesIdentity) {
  auto a = truncated_polynomial(k2, 3);
  auto q = quotient_algebra(Ideal<PrimeField>::zero(a));
  EXPECT_TRUE(q.algebra->same_structure(*a));
  EXPECT_EQ(q.projection.matrix(), (Matrix<PrimeField>::identity(k2, 3)));
}

TEST(QuotientAlgebra, ProductFactorIsKilled) {
  // F2[t]/(t^2) x F2 modulo (0, 1): oracle is the first factor itself
  auto a = product_algebra(truncated_polynomial(k2, 2), field_algebra(k2));
  auto ideal = Ideal<PrimeField>::make(a, Subspace<PrimeField>::span(k2, 3, {{0, 0, 1}}), Sidedness::two_sided);
  auto q = quotient_algebra(ideal);
  EXPECT_EQ(q.algebra->dim(), 2u);
  EXPECT_TRUE(q.algebra->same_structure(*truncated_polynomial(k2, 2)));
}

TEST(QuotientAlgebra, OneSidedIdealIsRejectedWithWitness) {
  auto t2 = upper_triangular(field_algebra(k2), 2);  // basis E11, E12, E22
  // T2 E11 = span{E11}: left ideal, not right (E11 E12 = E12)
  auto left = Ideal<PrimeField>::make(t2, Subspace<PrimeField>::span(k2, 3, {{1, 0, 0}}), Sidedness::left);
  try {
    quotient_algebra(left);
    FAIL() << "expected rejection";
  } catch (const ValidationError& e) {
    EXPECT_FALSE(e.witness().empty());
  }
  EXPECT_THROW(Ideal<PrimeField>::make(t2, Subspace<PrimeField>::span(k2, 3, {{1, 0, 0}}), Sidedness::two_sided),
               ValidationError);
}

TEST(AlgMorphism, RejectsNonMultiplicativeMatrix) {
  auto a = truncated_polynomial(k2, 2);
  // t -> 1 is not multiplicative since t^2 = 0 but 1 * 1 = 1
  auto m = Matrix<PrimeField>::from_rows(k2, 2, {{1, 1}, {0, 0}});
  EXPECT_THROW(AlgMorphism<PrimeField>::make(a, a, m), ValidationError);
}

TEST(BalancedTensorRing, IdentityMap) {
  auto r = truncated_polynomial(k2, 2);
  auto t = balanced_tensor_ring(AlgMorphism<PrimeField>::identity(r));
  EXPECT_EQ(t.dim(), 2u);
  EXPECT_EQ(rank(t.multiplication), 2u);
}

TEST(BalancedTensorRing, UnitInclusionIsNotInjective) {
  auto k = field_algebra(k2);
  auto s = truncated_polynomial(k2, 2);
  auto t = balanced_tensor_ring(unit_map(k, s));
  EXPECT_EQ(t.dim(), 4u);
  // oracle: the 2 x 4 multiplication matrix on 1(x)1, 1(x)t, t(x)1, t(x)t
  auto expected = Matrix<PrimeField>::from_rows(k2, 4, {{1, 0, 0, 0}, {0, 1, 1, 0}});
  EXPECT_EQ(t.multiplication * t.space.projection_matrix(), expected);
  EXPECT_EQ(rank(expected), 2u);
}

TEST(BalancedTensorRing, SurjectionCollapses) {
  auto r = truncated_polynomial(k2, 2);
  auto s = field_algebra(k2);
  auto t = balanced_tensor_ring(truncation_map(r, s));
  EXPECT_EQ(t.dim(), 1u);
  EXPECT_EQ(rank(t.multiplication), 1u);
}

TEST(RingEpimorphism, SurjectionsAreEpimorphisms) {
  auto r = truncated_polynomial(k2, 4);
  auto s = truncated_polynomial(k2, 2);
  EXPECT_TRUE(is_ring_epimorphism(truncation_map(r, s)).epimorphism);
}

TEST(RingEpimorphism, UnitInclusionWitness) {
  auto k = field_algebra(k2);
  auto s = truncated_polynomial(k2, 2);
  auto v = is_ring_epimorphism(unit_map(k, s));
  EXPECT_FALSE(v.epimorphism);
  ASSERT_TRUE(v.witness.has_value());
  // t (x) 1 - 1 (x) t; in characteristic 2 both coefficients are 1
  Vec<PrimeField> expected{0, 1, 1, 0};
  EXPECT_EQ(*v.witness, expected);
  auto t = balanced_tensor_ring(unit_map(k, s));
  EXPECT_TRUE(is_zero_vec(k2, t.multiplication.apply(t.space.project(*v.witness))));
  EXPECT_EQ(v.witness_text, "1(x)t + t(x)1");
}

TEST(RingEpimorphism, IdempotentLocalization) {
  auto r = polynomial_quotient(k2, Vec<PrimeField>{0, 1});  // x^2 = x
  auto s = field_algebra(k2);
  auto f = power_basis_map(r, s, Vec<PrimeField>{1});
  auto t = balanced_tensor_ring(f);
  EXPECT_EQ(t.dim(), 1u);
  EXPECT_TRUE(is_ring_epimorphism(f).epimorphism);
}

TEST(RingEpimorphism, TriangularIntoFullMatrices) {
  auto k = field_algebra(k2);
  auto tri = upper_triangular(k, 2);
  auto full = matrix_algebra(k, 2);
  auto f = triangular_inclusion(tri, full, 2, 1);
  EXPECT_FALSE(f.is_surjective());
  EXPECT_TRUE(is_ring_epimorphism(f).epimorphism);
}

TEST(RingEpimorphism, MultiplicationIsAlwaysSurjective) {
  auto k = field_algebra(k2);
  std::vector<AlgMorphism<PrimeField>> maps{
      unit_map(k, truncated_polynomial(k2, 3)),
      unit_map(k, matrix_algebra(k, 2)),
      diagonal_map(k, product_algebra(k, k)),
      truncation_map(truncated_polynomial(k2, 3), truncated_polynomial(k2, 1)),
  };
  for (const auto& f : maps) {
    auto t = balanced_tensor_ring(f);
    EXPECT_EQ(rank(t.multiplication), f.target()->dim());
  }
}

TEST(RingEpimorphism, EpimorphismsCompose) {
  auto r = truncated_polynomial(k2, 4);
  auto m = truncated_polynomial(k2, 3);
  auto s = truncated_polynomial(k2, 1);
  auto f = truncation_map(r, m);
  auto g = truncation_map(m, s);
  ASSERT_TRUE(is_ring_epimorphism(f).epimorphism && is_ring_epimorphism(g).epimorphism);
  EXPECT_TRUE(is_ring_epimorphism(compose(g, f)).epimorphism);

  auto k = field_algebra(k2);
  auto tri = upper_triangular(k, 2);
  auto full = matrix_algebra(k, 2);
  auto corner = triangular_corner(tri, k, 0);
  EXPECT_TRUE(is_ring_epimorphism(compose(triangular_inclusion(tri, full, 2, 1),
                                          AlgMorphism<PrimeField>::identity(tri)))
                  .epimorphism);
  EXPECT_TRUE(is_ring_epimorphism(compose(AlgMorphism<PrimeField>::identity(k), corner)).epimorphism);
}

TEST(RingEpimorphism, RationalCoefficients) {
  RationalField q;
  auto r = polynomial_quotient(q, Vec<RationalField>{q.zero(), q.from_int(-1)});  // x^2 = x
  auto s = field_algebra(q);
  EXPECT_TRUE(is_ring_epimorphism(power_basis_map(r, s, Vec<RationalField>{q.one()})).epimorphism);
  EXPECT_FALSE(is_ring_epimorphism(unit_map(s, polynomial_quotient(q, Vec<RationalField>{q.one(), q.zero()}))).epimorphism);
}

}  // namespace

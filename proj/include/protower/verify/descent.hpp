#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "protower/functors/functors.hpp"
#include "protower/verify/report.hpp"
#include "protower/verify/sampling.hpp"

namespace protower {

/// q -> 1 (x) q from a left R_n-module to S_n (x)_{R_n} Q as left S_n-module.
template <ExactField F>
struct UnitMap {
  FinModule<F> extended;  // S_n (x)_{R_n} Q
  Matrix<F> map;          // Q -> extended
};

template <ExactField F>
UnitMap<F> extension_unit(const AlgMorphism<F>& f, const FinModule<F>& q) {
  const auto& s = f.target();
  auto t = tensor_over(restrict_module(f, regular_module(s, Side::right)), q);
  Matrix<F> u(q.field(), t.dim(), q.dim());
  const auto& one = s->unit();
  for (std::size_t j = 0; j < q.dim(); ++j) {
    auto col = zero_vec(q.field(), t.dim());
    for (std::size_t i = 0; i < s->dim(); ++i) axpy(q.field(), one[i], t.pure(i, j), col);
    u.set_column(j, col);
  }
  return {t.with_left_action(regular_module(s, Side::left)), std::move(u)};
}

/// The S_n-structure on Q transported through a bijective unit map, or
/// nothing when the unit is not bijective.
template <ExactField F>
std::optional<FinModule<F>> descended_module(const AlgMorphism<F>& f, const FinModule<F>& q) {
  auto u = extension_unit(f, q);
  auto inv = inverse(u.map);
  if (!inv) return std::nullopt;
  std::vector<Matrix<F>> act;
  for (const auto& a : u.extended.actions()) act.push_back(*inv * a * u.map);
  return FinModule<F>::trusted(f.target(), Side::left, q.dim(), std::move(act));
}

template <ExactField F>
struct DescentResult {
  std::optional<LeftSystem<F>> system;
  std::size_t failing_level = 0;
  std::size_t kernel_dim = 0;
  std::size_t cokernel_dim = 0;
  std::string detail;

  bool descended() const { return system.has_value(); }
};

/// Decide whether an R-system comes from an S-system, and build it.  The
/// S_n-structure on Q_n exists iff q -> 1 (x) q is bijective; for a flat
/// epimorphism it is then unique.
template <ExactField F>
DescentResult<F> descend_structure(const TowerMorphism<F>& f, const LeftSystem<F>& q) {
  check_same_tower(q.tower(), f.source(), "descend_structure");
  auto flat = is_left_proflat(f);
  auto epi = is_proepimorphism(f);
  if (!flat.holds || !epi.holds)
    throw PreconditionError("descend_structure: requires a left proflat proepimorphism (" +
                                std::string(flat.holds ? "proflat" : "not proflat: " + flat.detail) + "; " +
                                (epi.holds ? "proepi" : "not proepi: " + epi.detail) + ")",
                            flat.holds ? *epi.failing_level : *flat.failing_level);
  if (!f.source().flags().forgetful_fully_faithful)
    throw PreconditionError("descend_structure: the source tower does not declare a fully faithful forgetful functor");
  DescentResult<F> out;
  std::vector<FinModule<F>> levels;
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    auto u = extension_unit(f.map(n), q.level(n));
    const std::size_t r = rank(u.map);
    if (r != q.level(n).dim() || r != u.extended.dim()) {
      out.failing_level = n;
      out.kernel_dim = q.level(n).dim() - r;
      out.cokernel_dim = u.extended.dim() - r;
      out.detail = "q -> 1 (x) q is not bijective at level " + std::to_string(n) + " (kernel " +
                   std::to_string(out.kernel_dim) + ", cokernel " + std::to_string(out.cokernel_dim) + ")";
      return out;
    }
    levels.push_back(*descended_module(f.map(n), q.level(n)));
  }
  out.system = LeftSystem<F>::make(f.target(), std::move(levels), q.transitions());
  return out;
}

/// Equal modules and transitions at every level.
template <ExactField F>
bool same_system_structure(const LeftSystem<F>& a, const LeftSystem<F>& b) {
  if (!a.tower().same_structure(b.tower())) return false;
  for (std::size_t n = 1; n <= a.depth(); ++n)
    if (!a.level(n).same_structure(b.level(n))) return false;
  for (std::size_t n = 1; n < a.depth(); ++n)
    if (!(a.transition(n) == b.transition(n))) return false;
  return true;
}

/// Two S-systems restricting to the same R-system must coincide when f is
/// a flat proepimorphism.
template <ExactField F>
VerificationReport check_unique_structure(const TowerMorphism<F>& f, const LeftSystem<F>& a, const LeftSystem<F>& b) {
  VerificationReport rep;
  const bool same_restriction = same_system_structure(restrict_system(f, a), restrict_system(f, b));
  if (!same_restriction) {
    rep.add({"descent.uniqueness", "candidates restrict to the same R-system", 0, 1, Outcome::refused,
             "candidates have different restrictions"});
    return rep;
  }
  const bool same = same_system_structure(a, b);
  rep.expect("descent.uniqueness", "equal S-actions", same, 1, same);
  return rep;
}

/// Counts left S-module structures on the space of Q whose restriction
/// along f is Q, by running over every linear map S -> End(Q) compatible
/// with f and testing the module axioms.  Finite prime fields only; throws
/// if the candidate space has more than 2^max_bits points.
inline std::size_t count_s_actions(const AlgMorphism<PrimeField>& f, const FinModule<PrimeField>& q,
                                   std::size_t max_bits = 20) {
  const auto& k = q.field();
  const std::size_t m = q.dim(), ds = f.target()->dim(), dr = f.source()->dim(), e = m * m;
  // unknown x[i * e + c] is entry c of rho(e_i); rho(f(r_j)) = action_j
  Matrix<PrimeField> c(k, dr * e, ds * e);
  Vec<PrimeField> rhs(dr * e, k.zero());
  for (std::size_t j = 0; j < dr; ++j) {
    auto fj = f.matrix().column(j);
    for (std::size_t t = 0; t < e; ++t) {
      for (std::size_t i = 0; i < ds; ++i) c(j * e + t, i * e + t) = fj[i];
      rhs[j * e + t] = q.action(j).flat()[t];
    }
  }
  auto base = solve(c, rhs);
  if (!base) return 0;
  auto ker = kernel(c);
  const std::size_t free = ker.rows();
  double points = 1;
  for (std::size_t i = 0; i < free; ++i) points *= k.modulus();
  if (points > static_cast<double>(std::uint64_t{1} << max_bits))
    throw PreconditionError("count_s_actions: candidate space too large");
  std::size_t count = 0;
  std::vector<std::uint32_t> coef(free, 0);
  while (true) {
    auto x = *base;
    for (std::size_t r = 0; r < free; ++r) axpy(k, coef[r], ker.row(r), x);
    std::vector<Matrix<PrimeField>> act;
    for (std::size_t i = 0; i < ds; ++i)
      act.push_back(Matrix<PrimeField>::from_flat(k, m, m, Vec<PrimeField>(x.begin() + i * e, x.begin() + (i + 1) * e)));
    try {
      FinModule<PrimeField>::make(f.target(), Side::left, m, std::move(act));
      ++count;
    } catch (const ValidationError&) {
    }
    std::size_t r = 0;
    while (r < free && ++coef[r] == k.modulus()) coef[r++] = 0;
    if (r == free) break;
  }
  return count;
}

/// Every left module of dimension `dim` over `a`, from all assignments of
/// generator matrices.
inline std::vector<FinModule<PrimeField>> all_left_modules(const AlgebraPtr<PrimeField>& a, std::size_t dim) {
  const auto& k = a->field();
  const std::size_t g = a->generators().size(), e = dim * dim;
  std::vector<FinModule<PrimeField>> out;
  double points = 1;
  for (std::size_t i = 0; i < g * e; ++i) points *= k.modulus();
  if (points > static_cast<double>(std::uint64_t{1} << 24))
    throw PreconditionError("all_left_modules: too many candidates");
  std::vector<std::uint32_t> digits(g * e, 0);
  while (true) {
    std::vector<Matrix<PrimeField>> gens;
    for (std::size_t i = 0; i < g; ++i)
      gens.push_back(Matrix<PrimeField>::from_flat(
          k, dim, dim, Vec<PrimeField>(digits.begin() + i * e, digits.begin() + (i + 1) * e)));
    if (auto m = FinModule<PrimeField>::from_generator_action(a, Side::left, dim, gens)) out.push_back(std::move(*m));
    std::size_t r = 0;
    while (r < digits.size() && ++digits[r] == k.modulus()) digits[r++] = 0;
    if (r == digits.size()) break;
  }
  return out;
}

/// The unit-bijectivity criterion against exhaustive enumeration of
/// S_n-structures, on every left R_n-module of dimension <= max_dim.
inline VerificationReport check_descent_criterion(const TowerMorphism<PrimeField>& f, std::size_t max_dim = 3) {
  VerificationReport rep;
  rep.predicates = predicate_values(f);
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    std::int64_t modules = 0, agree = 0;
    std::string witness;
    for (std::size_t dim = 0; dim <= max_dim; ++dim)
      for (const auto& q : all_left_modules(f.source().level(n), dim)) {
        const auto count = count_s_actions(f.map(n), q);
        auto u = extension_unit(f.map(n), q);
        const bool bij = rank(u.map) == q.dim() && q.dim() == u.extended.dim();
        ++modules;
        if (count == (bij ? 1u : 0u)) {
          ++agree;
        } else if (witness.empty()) {
          witness = "dim " + std::to_string(dim) + ": " + std::to_string(count) + " S-structures, unit " +
                    (bij ? "bijective" : "not bijective");
        }
      }
    rep.expect("descent_criterion.level" + std::to_string(n), "modules where unit criterion matches enumeration",
               agree, modules, agree == modules, witness);
  }
  return rep;
}

/// descend(restrict(Q)) = Q and restrict(descend(restrict(Q))) = restrict(Q)
/// on sampled S-systems, plus the free R-system of rank 1.
template <ExactField F>
VerificationReport check_descent_round_trip(const TowerMorphism<F>& f, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  rep.predicates = predicate_values(f);
  try {
    descend_structure(f, zero_system(f.source()));
  } catch (const PreconditionError& e) {
    rep.add({"descent", "requires proflat proepimorphism and declared forgetful flag", 0, 1, Outcome::refused,
             e.what()});
    return rep;
  }
  Sampler rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    auto q = make_left_system(f.target(), random_module(f.target().top(), Side::left, rng));
    auto r = restrict_system(f, q);
    auto back = descend_structure(f, r);
    const bool same = back.descended() && same_system_structure(*back.system, q);
    rep.expect("descent.round_trip[" + std::to_string(i) + "]", "descend(f_# Q) = Q", same, 1, same, back.detail);
    const bool again = back.descended() && same_system_structure(restrict_system(f, *back.system), r);
    rep.expect("descent.restrict_after[" + std::to_string(i) + "]", "f_# descend(f_# Q) = f_# Q", again, 1, again);
  }
  auto z = descend_structure(f, zero_system(f.source()));
  rep.expect("descent.zero", "0 descends", z.descended(), 1, z.descended());
  auto free = descend_structure(f, free_system(f.source(), 1));
  // R descends iff S_n (x) R_n = S_n is R_n itself, i.e. every f_n is bijective
  bool iso = true;
  for (std::size_t n = 1; n <= f.depth(); ++n) iso = iso && inverse(f.map(n).matrix()).has_value();
  rep.expect("descent.free_rank1", "free R-system descends iff f is an isomorphism", free.descended(), iso,
             free.descended() == iso, free.detail);
  return rep;
}

}  // namespace protower

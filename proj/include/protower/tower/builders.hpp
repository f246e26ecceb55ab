#pragma once

#include <algorithm>
#include <functional>

#include "protower/finalg/builders.hpp"
#include "protower/tower/tower.hpp"

namespace protower {

namespace detail {
// Tower of k[t]/(t^{e(n)}) with truncation transitions.
template <ExactField F>
RingTower<F> power_tower(const F& k, std::size_t d, const std::function<std::size_t(std::size_t)>& exponent,
                         std::string tag) {
  std::vector<AlgebraPtr<F>> levels;
  std::vector<AlgMorphism<F>> trans;
  for (std::size_t n = 1; n <= d; ++n) {
    levels.push_back(truncated_polynomial(k, exponent(n)));
    if (n > 1) trans.push_back(truncation_map(levels[n - 1], levels[n - 2]));
  }
  return RingTower<F>::make(std::move(levels), std::move(trans), {}, std::move(tag));
}
}  // namespace detail

// ---- towers --------------------------------------------------------------

/// k[t]/(t^n), n = 1..d: the t-adic completion k[[t]].
template <ExactField F>
RingTower<F> truncated_polynomial_tower(const F& k, std::size_t d) {
  return detail::power_tower<F>(k, d, [](std::size_t n) { return n; }, "truncated_polynomial");
}

/// k[t]/(t^{min(n, cap)})
template <ExactField F>
RingTower<F> capped_polynomial_tower(const F& k, std::size_t d, std::size_t cap) {
  return detail::power_tower<F>(k, d, [cap](std::size_t n) { return std::min(n, cap); }, "capped_polynomial");
}

/// k[t]/(t^{ceil(n/2)}): same limit as k[[t]], indexed at half speed.
template <ExactField F>
RingTower<F> half_speed_tower(const F& k, std::size_t d) {
  return detail::power_tower<F>(k, d, [](std::size_t n) { return (n + 1) / 2; }, "half_speed");
}

/// A at every level with identity transitions.
template <ExactField F>
RingTower<F> constant_tower(const AlgebraPtr<F>& a, std::size_t d) {
  std::vector<AlgebraPtr<F>> levels(d, a);
  std::vector<AlgMorphism<F>> trans;
  for (std::size_t n = 1; n < d; ++n) trans.push_back(AlgMorphism<F>::identity(a));
  return RingTower<F>::make(std::move(levels), std::move(trans), {}, "constant");
}

/// R_n x B with transitions t_n x id.
template <ExactField F>
RingTower<F> product_with_constant_factor(const RingTower<F>& r, const AlgebraPtr<F>& b) {
  std::vector<AlgebraPtr<F>> levels;
  std::vector<AlgMorphism<F>> trans;
  for (std::size_t n = 1; n <= r.depth(); ++n) {
    levels.push_back(product_algebra(r.level(n), b));
    if (n > 1)
      trans.push_back(product_of_maps(r.transition(n - 1), AlgMorphism<F>::identity(b), levels[n - 1], levels[n - 2]));
  }
  return RingTower<F>::make(std::move(levels), std::move(trans), {}, "product_with_constant_factor");
}

/// T_n(R_k) (upper triangular) or M_n(R_k) at every level.
template <ExactField F>
RingTower<F> matrix_tower(const RingTower<F>& r, std::size_t size, bool triangular) {
  std::vector<AlgebraPtr<F>> levels;
  std::vector<AlgMorphism<F>> trans;
  for (std::size_t n = 1; n <= r.depth(); ++n) {
    levels.push_back(triangular ? upper_triangular(r.level(n), size) : matrix_algebra(r.level(n), size));
    if (n > 1) trans.push_back(entrywise_map(r.transition(n - 1), size, triangular, levels[n - 1], levels[n - 2]));
  }
  return RingTower<F>::make(std::move(levels), std::move(trans), {}, triangular ? "upper_triangular" : "matrix");
}

template <ExactField F>
RingTower<F> upper_triangular_tower(const RingTower<F>& r, std::size_t size = 2) {
  return matrix_tower(r, size, true);
}

// ---- morphisms -----------------------------------------------------------

/// Levelwise truncations k[t]/(t^{a(n)}) -> k[t]/(t^{b(n)}), b <= a.
template <ExactField F>
TowerMorphism<F> truncation_morphism(const RingTower<F>& src, const RingTower<F>& tgt, std::string tag) {
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 1; n <= src.depth(); ++n) maps.push_back(truncation_map(src.level(n), tgt.level(n)));
  return TowerMorphism<F>::make(src, tgt, std::move(maps), std::move(tag));
}

/// k[t]/(t^n) -> k[t]/(t^{min(n, cap)})
template <ExactField F>
TowerMorphism<F> levelwise_quotient_morphism(const F& k, std::size_t d, std::size_t cap) {
  return truncation_morphism(truncated_polynomial_tower(k, d), capped_polynomial_tower(k, d, cap), "levelwise_quotient");
}

/// k[t]/(t^n) -> k[t]/(t^{ceil(n/2)})
template <ExactField F>
TowerMorphism<F> half_speed_morphism(const F& k, std::size_t d) {
  return truncation_morphism(truncated_polynomial_tower(k, d), half_speed_tower(k, d), "half_speed");
}

/// R_n x B -> R_n
template <ExactField F>
TowerMorphism<F> product_projection_morphism(const RingTower<F>& r, const AlgebraPtr<F>& b) {
  auto prod = product_with_constant_factor(r, b);
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 1; n <= r.depth(); ++n)
    maps.push_back(product_projection(prod.level(n), r.level(n), true, r.level(n)->dim()));
  return TowerMorphism<F>::make(prod, r, std::move(maps), "product_projection");
}

/// Constant k -> R_n through the unit.
template <ExactField F>
TowerMorphism<F> unit_inclusion_morphism(const RingTower<F>& r) {
  auto k = field_algebra(r.field());
  auto src = constant_tower(k, r.depth());
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 1; n <= r.depth(); ++n) maps.push_back(unit_map(k, r.level(n)));
  return TowerMorphism<F>::make(src, r, std::move(maps), "unit_inclusion");
}

/// R_n x B -> R_n x C as id x g.
template <ExactField F>
TowerMorphism<F> product_factor_morphism(const RingTower<F>& r, const AlgMorphism<F>& g) {
  auto src = product_with_constant_factor(r, g.source());
  auto tgt = product_with_constant_factor(r, g.target());
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 1; n <= r.depth(); ++n)
    maps.push_back(product_of_maps(AlgMorphism<F>::identity(r.level(n)), g, src.level(n), tgt.level(n)));
  return TowerMorphism<F>::make(src, tgt, std::move(maps), "product_factor");
}

/// g at every level of constant towers.
template <ExactField F>
TowerMorphism<F> constant_morphism(const AlgMorphism<F>& g, std::size_t d) {
  auto src = constant_tower(g.source(), d);
  auto tgt = constant_tower(g.target(), d);
  return TowerMorphism<F>::make(src, tgt, std::vector<AlgMorphism<F>>(d, g), "constant");
}

/// Applies f entrywise: T_2(R_n) -> T_2(S_n) or M_2(R_n) -> M_2(S_n).
template <ExactField F>
TowerMorphism<F> matrix_morphism(const TowerMorphism<F>& f, std::size_t size, bool triangular) {
  auto src = matrix_tower(f.source(), size, triangular);
  auto tgt = matrix_tower(f.target(), size, triangular);
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 1; n <= f.depth(); ++n)
    maps.push_back(entrywise_map(f.map(n), size, triangular, src.level(n), tgt.level(n)));
  return TowerMorphism<F>::make(src, tgt, std::move(maps), "matrix");
}

}  // namespace protower

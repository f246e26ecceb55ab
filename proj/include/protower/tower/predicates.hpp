#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "protower/finalg/epimorphism.hpp"
#include "protower/finmod/flatness.hpp"
#include "protower/finmod/tensor.hpp"
#include "protower/tower/tower.hpp"

namespace protower {

/// Answer of a tower predicate.  A truncation can only certify levels
/// 1..depth, so every verdict carries the depth it speaks for.
struct LevelVerdict {
  bool holds = true;
  std::size_t certified_depth = 0;
  std::optional<std::size_t> failing_level;
  std::size_t kernel_dim = 0;
  std::size_t cokernel_dim = 0;
  std::string detail;

  std::string caveat() const { return "certified to depth " + std::to_string(certified_depth); }
};

/// S_n as a left R_n-module through f_n.
template <ExactField F>
FinModule<F> target_as_left_module(const TowerMorphism<F>& f, std::size_t n) {
  return restrict_module(f.map(n), regular_module(f.target().level(n), Side::left));
}

/// S_n as a right R_n-module through f_n.
template <ExactField F>
FinModule<F> target_as_right_module(const TowerMorphism<F>& f, std::size_t n) {
  return restrict_module(f.map(n), regular_module(f.target().level(n), Side::right));
}

template <ExactField F>
struct TautnessMap {
  TensorProduct<F> tensor;  // R_n (x)_{R_{n+1}} S_{n+1}
  Matrix<F> map;            // to S_n
};

/// r (x) s -> f_n(r) t^S_n(s) for 1 <= n < d.
template <ExactField F>
TautnessMap<F> tautness_map(const TowerMorphism<F>& f, std::size_t n) {
  const auto& r_n = f.source().level(n);
  const auto& s_n = *f.target().level(n);
  auto rn_right = restrict_module(f.source().transition(n), regular_module(r_n, Side::right));
  auto s_next = restrict_module(f.map(n + 1), regular_module(f.target().level(n + 1), Side::left));
  auto t = tensor_over(rn_right, s_next);
  const auto& fn = f.map(n);
  const auto& ts = f.target().transition(n);
  const std::size_t ds = s_next.dim();
  Matrix<F> on_pairs(s_n.field(), s_n.dim(), r_n->dim() * ds);
  for (std::size_t i = 0; i < r_n->dim(); ++i)
    for (std::size_t j = 0; j < ds; ++j)
      on_pairs.set_column(i * ds + j, s_n.multiply(fn.image_of_basis(i), ts.image_of_basis(j)));
  auto m = t.descend(on_pairs);
  return {std::move(t), std::move(m)};
}

/// R_n (x)_{R_{n+1}} S_{n+1} -> S_n bijective for every n < d.
template <ExactField F>
LevelVerdict is_strongly_right_taut(const TowerMorphism<F>& f) {
  LevelVerdict v;
  v.certified_depth = f.depth();
  for (std::size_t n = 1; n < f.depth(); ++n) {
    auto tm = tautness_map(f, n);
    const std::size_t r = rank(tm.map);
    const std::size_t td = tm.tensor.dim(), sd = f.target().level(n)->dim();
    if (r == td && r == sd) continue;
    v.holds = false;
    v.failing_level = n;
    v.kernel_dim = td - r;
    v.cokernel_dim = sd - r;
    v.detail = "R_" + std::to_string(n) + " (x) S_" + std::to_string(n + 1) + " has dim " + std::to_string(td) +
               ", S_" + std::to_string(n) + " has dim " + std::to_string(sd);
    return v;
  }
  return v;
}

/// Strongly right taut with every S_n flat as a left R_n-module.
template <ExactField F>
LevelVerdict is_left_proflat(const TowerMorphism<F>& f) {
  auto v = is_strongly_right_taut(f);
  if (!v.holds) {
    v.detail = "not strongly right taut: " + v.detail;
    return v;
  }
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    if (is_flat(target_as_left_module(f, n)).flat) continue;
    v.holds = false;
    v.failing_level = n;
    v.detail = "S_" + std::to_string(n) + " is not flat as a left R_" + std::to_string(n) + "-module";
    return v;
  }
  return v;
}

/// Every f_n is a ring epimorphism.
template <ExactField F>
LevelVerdict is_proepimorphism(const TowerMorphism<F>& f) {
  LevelVerdict v;
  v.certified_depth = f.depth();
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    auto e = is_ring_epimorphism(f.map(n));
    if (e.epimorphism) continue;
    v.holds = false;
    v.failing_level = n;
    v.kernel_dim = e.tensor_dim - e.multiplication_rank;
    v.cokernel_dim = e.target_dim - e.multiplication_rank;
    v.detail = "kernel of S_" + std::to_string(n) + " (x) S_" + std::to_string(n) + " -> S_" + std::to_string(n) +
               " contains " + e.witness_text;
    return v;
  }
  return v;
}

/// The two-sided ideal of S_d generated by f_d(K_{m,d}).  For strongly
/// right taut f this is ker(S_d -> S_m); a mismatch there is a bug and
/// throws std::logic_error.
template <ExactField F>
Ideal<F> closure_ideal(const TowerMorphism<F>& f, std::size_t m) {
  f.source().check_level(m);
  const auto& s = f.target().top();
  const auto& fd = f.map(f.depth());
  const auto& basis = f.source().accumulated_kernel(m).span().basis();
  std::vector<Vec<F>> images;
  for (std::size_t r = 0; r < basis.rows(); ++r) images.push_back(fd.apply(basis.row(r)));
  auto j = Ideal<F>::generated(s, images, Sidedness::two_sided);
  if (is_strongly_right_taut(f).holds && !(j == f.target().accumulated_kernel(m)))
    throw std::logic_error("closure_ideal: strongly right taut map with f(I)S != J at level " + std::to_string(m));
  return j;
}

}  // namespace protower

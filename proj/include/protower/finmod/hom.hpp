#pragma once

#include <optional>
#include <vector>

#include "protower/finmod/module.hpp"

namespace protower {

/// Basis of Hom_A(M, N).  Maps are dim N x dim M matrices F with
/// rho_N(a) F = F rho_M(a) for all a.
template <ExactField F>
class HomSpace {
 public:
  HomSpace(FinModule<F> source, FinModule<F> target, std::vector<Matrix<F>> basis)
      : source_(std::move(source)), target_(std::move(target)), basis_(std::move(basis)) {
    std::vector<Vec<F>> flat;
    for (const auto& b : basis_) flat.push_back(b.flat());
    solver_ = SpanSolver<F>(source_.field(), source_.dim() * target_.dim(), flat);
  }

  const FinModule<F>& source() const { return source_; }
  const FinModule<F>& target() const { return target_; }
  const std::vector<Matrix<F>>& basis() const { return basis_; }
  std::size_t dim() const { return basis_.size(); }

  /// Coordinates of a module map in the basis; nothing if the matrix is not
  /// in the span (i.e. it is not a module map).
  std::optional<Vec<F>> coordinates(const Matrix<F>& map) const { return solver_.coordinates(map.flat()); }

  Matrix<F> element(const Vec<F>& coords) const {
    Matrix<F> m(source_.field(), target_.dim(), source_.dim());
    for (std::size_t i = 0; i < basis_.size(); ++i) m.add_scaled(coords.at(i), basis_[i]);
    return m;
  }

 private:
  FinModule<F> source_, target_;
  std::vector<Matrix<F>> basis_;
  SpanSolver<F> solver_;
};

template <ExactField F>
bool is_module_map(const FinModule<F>& m, const FinModule<F>& n, const Matrix<F>& map) {
  if (map.rows() != n.dim() || map.cols() != m.dim()) return false;
  const auto& gens = m.algebra()->generators();
  for (const auto& g : gens)
    if (!(n.act(g) * map == map * m.act(g))) return false;
  return true;
}

template <ExactField F>
HomSpace<F> hom_module(const FinModule<F>& m, const FinModule<F>& n) {
  if (m.side() != n.side()) throw ValidationError("hom_module: modules on different sides");
  if (!same_algebra(m.algebra(), n.algebra())) throw ValidationError("hom_module: modules over different algebras");
  const F& k = m.field();
  const std::size_t dm = m.dim(), dn = n.dim(), unknowns = dm * dn;
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  // unknown F(a, b) sits at index a * dm + b
  Matrix<F> sys(k, gm.size() * unknowns, unknowns);
  for (std::size_t g = 0; g < gm.size(); ++g) {
    const auto& rm = gm[g];
    const auto& rn = gn[g];
    const std::size_t base = g * unknowns;
    for (std::size_t a = 0; a < dn; ++a)
      for (std::size_t b = 0; b < dm; ++b) {
        const std::size_t row = base + a * dm + b;
        // (rho_N F)(a, b) = sum_c rho_N(a, c) F(c, b)
        for (std::size_t c = 0; c < dn; ++c)
          if (!k.is_zero(rn(a, c))) sys(row, c * dm + b) = k.add(sys(row, c * dm + b), rn(a, c));
        // (F rho_M)(a, b) = sum_c F(a, c) rho_M(c, b)
        for (std::size_t c = 0; c < dm; ++c)
          if (!k.is_zero(rm(c, b))) sys(row, a * dm + c) = k.sub(sys(row, a * dm + c), rm(c, b));
      }
  }
  auto ker = gm.empty() ? Matrix<F>::identity(k, unknowns) : kernel(sys);
  std::vector<Matrix<F>> basis;
  for (std::size_t r = 0; r < ker.rows(); ++r) basis.push_back(Matrix<F>::from_flat(k, dn, dm, ker.row(r)));
  return HomSpace<F>(m, n, std::move(basis));
}

/// Materializes an outer action on a Hom space: `op(s, phi)` must return a
/// module map for each basis element s of `outer`.
template <ExactField F, class Op>
FinModule<F> hom_outer_action(const HomSpace<F>& hom, const AlgebraPtr<F>& outer, Side side, Op op) {
  const F& k = outer->field();
  std::vector<Matrix<F>> act;
  for (std::size_t s = 0; s < outer->dim(); ++s) {
    Matrix<F> m(k, hom.dim(), hom.dim());
    for (std::size_t j = 0; j < hom.dim(); ++j) {
      auto coords = hom.coordinates(op(s, hom.basis()[j]));
      if (!coords) throw ValidationError("hom_outer_action: operation leaves the Hom space");
      m.set_column(j, *coords);
    }
    act.push_back(std::move(m));
  }
  return FinModule<F>::make(outer, side, hom.dim(), std::move(act));
}

}  // namespace protower

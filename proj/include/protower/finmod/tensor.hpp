#pragma once

#include <vector>

#include "protower/finmod/module.hpp"

namespace protower {

/// M (x)_A N for a right A-module M and a left A-module N, realized as the
/// quotient of M (x)_k N (pair (i, j) at index i * dim N + j) by the span
/// of m.a (x) n - m (x) a.n.
template <ExactField F>
class TensorProduct {
 public:
  TensorProduct(FinModule<F> m, FinModule<F> n, QuotientSpace<F> space)
      : m_(std::move(m)), n_(std::move(n)), space_(std::move(space)),
        projection_(space_.projection_matrix()), lift_(space_.lift_matrix()) {}

  const FinModule<F>& left_factor() const { return m_; }
  const FinModule<F>& right_factor() const { return n_; }
  const QuotientSpace<F>& space() const { return space_; }
  std::size_t dim() const { return space_.dim(); }
  const Matrix<F>& projection() const { return projection_; }
  const Matrix<F>& lift() const { return lift_; }

  /// Class of e_i (x) f_j.
  Vec<F> pure(std::size_t i, std::size_t j) const { return projection_.column(i * n_.dim() + j); }

  /// Map induced by g (x) h; g, h must be compatible with the A-actions.
  Matrix<F> induced(const Matrix<F>& g, const Matrix<F>& h, const TensorProduct& target) const {
    return target.projection_ * kronecker(g, h) * lift_;
  }
  Matrix<F> induced_on_left(const Matrix<F>& g) const {
    return projection_ * kronecker(g, Matrix<F>::identity(m_.field(), n_.dim())) * lift_;
  }
  Matrix<F> induced_on_right(const Matrix<F>& h) const {
    return projection_ * kronecker(Matrix<F>::identity(m_.field(), m_.dim()), h) * lift_;
  }

  /// A linear map M (x)_k N -> V, given on pure basis tensors, descended to
  /// the quotient.
  Matrix<F> descend(const Matrix<F>& on_pairs) const { return on_pairs * lift_; }

  /// Left module structure induced by a left structure on M commuting with
  /// its right A-action.
  FinModule<F> with_left_action(const FinModule<F>& outer_on_m) const {
    std::vector<Matrix<F>> act;
    for (const auto& a : outer_on_m.actions()) act.push_back(induced_on_left(a));
    return FinModule<F>::trusted(outer_on_m.algebra(), Side::left, dim(), std::move(act));
  }
  /// Right module structure induced by a right structure on N commuting
  /// with its left A-action.
  FinModule<F> with_right_action(const FinModule<F>& outer_on_n) const {
    std::vector<Matrix<F>> act;
    for (const auto& a : outer_on_n.actions()) act.push_back(induced_on_right(a));
    return FinModule<F>::trusted(outer_on_n.algebra(), Side::right, dim(), std::move(act));
  }

 private:
  FinModule<F> m_, n_;
  QuotientSpace<F> space_;
  Matrix<F> projection_, lift_;
};

template <ExactField F>
TensorProduct<F> tensor_over(const FinModule<F>& m, const FinModule<F>& n) {
  if (m.side() != Side::right || n.side() != Side::left)
    throw ValidationError("tensor_over: need a right module tensored with a left module");
  if (!same_algebra(m.algebra(), n.algebra())) throw ValidationError("tensor_over: modules over different algebras");
  const F& k = m.field();
  const std::size_t dm = m.dim(), dn = n.dim();
  std::vector<Vec<F>> relations;
  const auto gm = m.generator_actions();
  const auto gn = n.generator_actions();
  for (std::size_t g = 0; g < gm.size(); ++g)
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dn; ++j) {
        Vec<F> rel(dm * dn, k.zero());
        for (std::size_t a = 0; a < dm; ++a) rel[a * dn + j] = k.add(rel[a * dn + j], gm[g](a, i));
        for (std::size_t b = 0; b < dn; ++b) rel[i * dn + b] = k.sub(rel[i * dn + b], gn[g](b, j));
        relations.push_back(std::move(rel));
      }
  QuotientSpace<F> q(Subspace<F>::span(k, dm * dn, relations));
  return TensorProduct<F>(m, n, std::move(q));
}

}  // namespace protower

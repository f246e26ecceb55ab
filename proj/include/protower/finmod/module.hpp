#pragma once

#include <cstddef>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protower/finalg/algebra.hpp"
#include "protower/finalg/errors.hpp"

namespace protower {

enum class Side { left, right };

inline std::string to_string(Side s) { return s == Side::left ? "left" : "right"; }

/// A finite-dimensional one-sided module over a FinAlgebra.  The action of
/// the basis element e_i is the matrix rho(e_i) acting on column vectors:
///   left:  e_i . x = rho(e_i) x,   rho(e_i e_j) = rho(e_i) rho(e_j)
///   right: x . e_i = rho(e_i) x,   rho(e_i e_j) = rho(e_j) rho(e_i)
template <ExactField F>
class FinModule {
 public:
  FinModule() = default;

  static FinModule make(AlgebraPtr<F> algebra, Side side, std::size_t dim, std::vector<Matrix<F>> action) {
    FinModule m(std::move(algebra), side, dim, std::move(action));
    if (auto w = m.defect()) throw ValidationError("FinModule: invalid action", *w);
    return m;
  }

  /// For constructions that preserve the module axioms by construction.
  static FinModule trusted(AlgebraPtr<F> algebra, Side side, std::size_t dim, std::vector<Matrix<F>> action) {
    return FinModule(std::move(algebra), side, dim, std::move(action));
  }

  /// Expands generator matrices through the algebra's presentation; returns
  /// nothing when they do not define a module.
  static std::optional<FinModule> from_generator_action(AlgebraPtr<F> algebra, Side side, std::size_t dim,
                                                        const std::vector<Matrix<F>>& gens) {
    const auto& pres = algebra->presentation();
    const F& k = algebra->field();
    std::vector<Matrix<F>> word_mats;
    for (const auto& w : pres.words) {
      auto m = Matrix<F>::identity(k, dim);
      for (auto g : w) m = side == Side::left ? m * gens.at(g) : gens.at(g) * m;
      word_mats.push_back(std::move(m));
    }
    std::vector<Matrix<F>> action;
    for (std::size_t e = 0; e < algebra->dim(); ++e) {
      Matrix<F> m(k, dim, dim);
      for (std::size_t w = 0; w < word_mats.size(); ++w) m.add_scaled(pres.expansion(w, e), word_mats[w]);
      action.push_back(std::move(m));
    }
    FinModule mod(std::move(algebra), side, dim, std::move(action));
    if (mod.defect()) return std::nullopt;
    return mod;
  }

  const AlgebraPtr<F>& algebra() const { return algebra_; }
  const F& field() const { return algebra_->field(); }
  Side side() const { return side_; }
  std::size_t dim() const { return dim_; }
  const Matrix<F>& action(std::size_t i) const { return action_.at(i); }
  const std::vector<Matrix<F>>& actions() const { return action_; }

  /// rho(a) for an arbitrary algebra element a.
  Matrix<F> act(const Vec<F>& a) const {
    Matrix<F> m(field(), dim_, dim_);
    for (std::size_t i = 0; i < action_.size(); ++i) m.add_scaled(a.at(i), action_[i]);
    return m;
  }

  /// Action matrices of the algebra generators; intertwining these is
  /// equivalent to intertwining the whole algebra.
  std::vector<Matrix<F>> generator_actions() const {
    std::vector<Matrix<F>> out;
    for (const auto& g : algebra_->generators()) out.push_back(act(g));
    return out;
  }

  bool same_structure(const FinModule& o) const {
    if (side_ != o.side_ || dim_ != o.dim_ || !same_algebra(algebra_, o.algebra_)) return false;
    for (std::size_t i = 0; i < action_.size(); ++i)
      if (!(action_[i] == o.action_[i])) return false;
    return true;
  }

 private:
  FinModule(AlgebraPtr<F> algebra, Side side, std::size_t dim, std::vector<Matrix<F>> action)
      : algebra_(std::move(algebra)), side_(side), dim_(dim), action_(std::move(action)) {}

  std::optional<std::string> defect() const {
    const auto& a = *algebra_;
    const F& k = a.field();
    if (action_.size() != a.dim()) return "expected one action matrix per basis element";
    for (const auto& m : action_)
      if (m.rows() != dim_ || m.cols() != dim_) return "action matrix has wrong shape";
    if (!(act(a.unit()) == Matrix<F>::identity(k, dim_))) return "unit does not act as identity";
    for (std::size_t i = 0; i < a.dim(); ++i)
      for (std::size_t j = 0; j < a.dim(); ++j) {
        auto lhs = act(a.multiply(a.basis(i), a.basis(j)));
        auto rhs = side_ == Side::left ? action_[i] * action_[j] : action_[j] * action_[i];
        if (!(lhs == rhs)) return "rho(e" + std::to_string(i) + " e" + std::to_string(j) + ") is not multiplicative";
      }
    return std::nullopt;
  }

  AlgebraPtr<F> algebra_;
  Side side_ = Side::left;
  std::size_t dim_ = 0;
  std::vector<Matrix<F>> action_;
};

template <ExactField F>
FinModule<F> regular_module(const AlgebraPtr<F>& a, Side side) {
  std::vector<Matrix<F>> act;
  for (std::size_t i = 0; i < a->dim(); ++i) act.push_back(side == Side::left ? a->left_basis(i) : a->right_basis(i));
  return FinModule<F>::trusted(a, side, a->dim(), std::move(act));
}

template <ExactField F>
FinModule<F> zero_module(const AlgebraPtr<F>& a, Side side) {
  std::vector<Matrix<F>> act(a->dim(), Matrix<F>(a->field(), 0, 0));
  return FinModule<F>::trusted(a, side, 0, std::move(act));
}

template <ExactField F>
FinModule<F> direct_sum(const FinModule<F>& m, const FinModule<F>& n) {
  if (m.side() != n.side() || !same_algebra(m.algebra(), n.algebra()))
    throw ValidationError("direct_sum: modules over different algebras or sides");
  const std::size_t d = m.dim() + n.dim();
  std::vector<Matrix<F>> act;
  for (std::size_t i = 0; i < m.actions().size(); ++i) {
    Matrix<F> a(m.field(), d, d);
    const auto& x = m.action(i);
    const auto& y = n.action(i);
    for (std::size_t r = 0; r < m.dim(); ++r)
      for (std::size_t c = 0; c < m.dim(); ++c) a(r, c) = x(r, c);
    for (std::size_t r = 0; r < n.dim(); ++r)
      for (std::size_t c = 0; c < n.dim(); ++c) a(m.dim() + r, m.dim() + c) = y(r, c);
    act.push_back(std::move(a));
  }
  return FinModule<F>::trusted(m.algebra(), m.side(), d, std::move(act));
}

template <ExactField F>
FinModule<F> free_module(const AlgebraPtr<F>& a, Side side, std::size_t rank) {
  auto m = zero_module(a, side);
  for (std::size_t i = 0; i < rank; ++i) m = direct_sum(m, regular_module(a, side));
  return m;
}

/// Pulls a module over A back along phi: B -> A.
template <ExactField F>
FinModule<F> restrict_module(const AlgMorphism<F>& phi, const FinModule<F>& m) {
  if (!same_algebra(phi.target(), m.algebra())) throw ValidationError("restrict_module: algebra mismatch");
  std::vector<Matrix<F>> act;
  for (std::size_t i = 0; i < phi.source()->dim(); ++i) act.push_back(m.act(phi.image_of_basis(i)));
  return FinModule<F>::trusted(phi.source(), m.side(), m.dim(), std::move(act));
}

/// Smallest submodule containing `vectors`.
template <ExactField F>
Subspace<F> generated_submodule(const FinModule<F>& m, const std::vector<Vec<F>>& vectors) {
  const F& k = m.field();
  auto gens = m.generator_actions();
  Subspace<F> span(k, m.dim());
  std::vector<Vec<F>> frontier;
  for (const auto& v : vectors)
    if (!span.contains(v)) {
      span = span + Subspace<F>::span(k, m.dim(), {v});
      frontier.push_back(v);
    }
  while (!frontier.empty()) {
    auto v = std::move(frontier.back());
    frontier.pop_back();
    for (const auto& g : gens) {
      auto w = g.apply(v);
      if (!span.contains(w)) {
        span = span + Subspace<F>::span(k, m.dim(), {w});
        frontier.push_back(std::move(w));
      }
    }
  }
  return span;
}

template <ExactField F>
bool is_submodule(const FinModule<F>& m, const Subspace<F>& w) {
  for (const auto& act : m.actions())
    for (std::size_t r = 0; r < w.dim(); ++r)
      if (!w.contains(act.apply(w.basis().row(r)))) return false;
  return true;
}

template <ExactField F>
struct SubmoduleResult {
  FinModule<F> module;
  Matrix<F> inclusion;  // dim M x dim W
};

template <ExactField F>
SubmoduleResult<F> submodule(const FinModule<F>& m, const Subspace<F>& w) {
  if (!is_submodule(m, w)) throw ValidationError("submodule: subspace is not invariant");
  const F& k = m.field();
  auto inc = w.basis().transpose();
  std::vector<Vec<F>> rows;
  for (std::size_t r = 0; r < w.dim(); ++r) rows.push_back(w.basis().row(r));
  SpanSolver<F> solver(k, m.dim(), rows);
  std::vector<Matrix<F>> act;
  for (const auto& a : m.actions()) {
    Matrix<F> x(k, w.dim(), w.dim());
    for (std::size_t c = 0; c < w.dim(); ++c) x.set_column(c, *solver.coordinates(a.apply(w.basis().row(c))));
    act.push_back(std::move(x));
  }
  return {FinModule<F>::trusted(m.algebra(), m.side(), w.dim(), std::move(act)), std::move(inc)};
}

template <ExactField F>
struct QuotientModule {
  FinModule<F> module;
  QuotientSpace<F> space;
  Matrix<F> projection;  // dim Q x dim M
};

template <ExactField F>
QuotientModule<F> quotient_module(const FinModule<F>& m, const Subspace<F>& w) {
  if (!is_submodule(m, w)) throw ValidationError("quotient_module: subspace is not a submodule");
  QuotientSpace<F> q(w);
  std::vector<Matrix<F>> act;
  for (const auto& a : m.actions()) act.push_back(q.induced(a));
  auto p = q.projection_matrix();
  return {FinModule<F>::trusted(m.algebra(), m.side(), q.dim(), std::move(act)), std::move(q), std::move(p)};
}

/// Module with commuting left and right structures on the same space.
template <ExactField F>
struct Bimodule {
  FinModule<F> left;
  FinModule<F> right;

  static Bimodule make(FinModule<F> l, FinModule<F> r) {
    if (l.side() != Side::left || r.side() != Side::right || l.dim() != r.dim())
      throw ValidationError("Bimodule: need a left and a right structure on one space");
    for (const auto& a : l.generator_actions())
      for (const auto& b : r.generator_actions())
        if (!(a * b == b * a)) throw ValidationError("Bimodule: left and right actions do not commute");
    return {std::move(l), std::move(r)};
  }

  std::size_t dim() const { return left.dim(); }
};

/// A as an A-A bimodule.
template <ExactField F>
Bimodule<F> regular_bimodule(const AlgebraPtr<F>& a) {
  return {regular_module(a, Side::left), regular_module(a, Side::right)};
}

/// Annihilated part {x : x . I = 0} of a right module (or {x : I . x = 0}
/// of a left module), with its inclusion.
template <ExactField F>
SubmoduleResult<F> annihilator_submodule(const FinModule<F>& n, const Ideal<F>& ideal) {
  if (!same_algebra(ideal.parent(), n.algebra())) throw ValidationError("annihilator_submodule: algebra mismatch");
  const F& k = n.field();
  std::vector<Matrix<F>> blocks;
  for (std::size_t r = 0; r < ideal.dim(); ++r) blocks.push_back(n.act(ideal.span().basis().row(r)));
  auto stacked = vstack(k, n.dim(), blocks);
  auto w = Subspace<F>::from_matrix(kernel(stacked));
  return submodule(n, w);
}

}  // namespace protower

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "protower/systems/systems.hpp"

namespace protower {

enum class FunctorTag { restrict_discrete, extend_discrete, coextend_discrete, restrict_system, contraextend, coextend_system };

inline const std::vector<FunctorTag>& all_functor_tags() {
  static const std::vector<FunctorTag> tags{FunctorTag::restrict_discrete, FunctorTag::extend_discrete,
                                            FunctorTag::coextend_discrete, FunctorTag::restrict_system,
                                            FunctorTag::contraextend,      FunctorTag::coextend_system};
  return tags;
}

inline std::string to_string(FunctorTag t) {
  switch (t) {
    case FunctorTag::restrict_discrete: return "restrict_discrete";
    case FunctorTag::extend_discrete: return "extend_discrete";
    case FunctorTag::coextend_discrete: return "coextend_discrete";
    case FunctorTag::restrict_system: return "restrict_system";
    case FunctorTag::contraextend: return "contraextend";
    default: return "coextend_system";
  }
}

inline std::optional<FunctorTag> parse_functor_tag(const std::string& s) {
  for (auto t : all_functor_tags())
    if (to_string(t) == s) return t;
  return std::nullopt;
}

/// Matrices indexed by level, entry n - 1 for level n.
template <ExactField F>
using LevelMaps = std::vector<Matrix<F>>;

// ---- discrete modules ----------------------------------------------------

/// Pullback of a right S_m-module along f_m.
template <ExactField F>
DiscreteModule<F> restrict_discrete(const TowerMorphism<F>& f, const DiscreteModule<F>& n) {
  check_same_tower(n.tower(), f.target(), "restrict_discrete");
  return DiscreteModule<F>::make(f.source(), n.level(), restrict_module(f.map(n.level()), n.module()));
}

/// M (x)_{R_m} S_m.  Refused unless f is strongly right taut.
template <ExactField F>
DiscreteModule<F> extend_discrete(const TowerMorphism<F>& f, const DiscreteModule<F>& m) {
  check_same_tower(m.tower(), f.source(), "extend_discrete");
  auto taut = is_strongly_right_taut(f);
  if (!taut.holds)
    throw PreconditionError("extend_discrete: morphism is not strongly right taut at level " +
                                std::to_string(*taut.failing_level) + " (" + taut.detail + ")",
                            *taut.failing_level);
  const std::size_t lv = m.level();
  auto t = tensor_over(m.module(), target_as_left_module(f, lv));
  return DiscreteModule<F>::make(f.target(), lv, t.with_right_action(regular_module(f.target().level(lv), Side::right)));
}

/// Hom_{R_m}(S_m, M) with (phi . s)(x) = phi(s x).
template <ExactField F>
DiscreteModule<F> coextend_discrete(const TowerMorphism<F>& f, const DiscreteModule<F>& m) {
  check_same_tower(m.tower(), f.source(), "coextend_discrete");
  const std::size_t lv = m.level();
  const auto& s = f.target().level(lv);
  auto hom = hom_module(target_as_right_module(f, lv), m.module());
  auto mod = hom_outer_action(hom, s, Side::right,
                              [&](std::size_t i, const Matrix<F>& phi) { return phi * s->left_basis(i); });
  return DiscreteModule<F>::make(f.target(), lv, std::move(mod));
}

// ---- systems -------------------------------------------------------------

/// Levels Q_n read as R_n-modules through f_n.  Throws SystemAxiomError
/// naming the level when the result is not a system.
template <ExactField F>
LeftSystem<F> restrict_system(const TowerMorphism<F>& f, const LeftSystem<F>& q) {
  check_same_tower(q.tower(), f.target(), "restrict_system");
  std::vector<FinModule<F>> levels;
  for (std::size_t n = 1; n <= f.depth(); ++n) levels.push_back(restrict_module(f.map(n), q.level(n)));
  if (auto d = detail::system_defect(f.source(), levels, q.transitions())) throw SystemAxiomError("restrict_system", *d);
  return LeftSystem<F>::trusted(f.source(), std::move(levels), q.transitions());
}

template <ExactField F>
struct Contraextension {
  LeftSystem<F> system;
  std::vector<TensorProduct<F>> tensors;  // S_n (x)_{R_n} P_n
};

/// S_n (x)_{R_n} P_n with transitions t^S (x) tau.
template <ExactField F>
Contraextension<F> contraextend(const TowerMorphism<F>& f, const LeftSystem<F>& p) {
  check_same_tower(p.tower(), f.source(), "contraextend");
  std::vector<TensorProduct<F>> tensors;
  std::vector<FinModule<F>> levels;
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    tensors.push_back(tensor_over(target_as_right_module(f, n), p.level(n)));
    levels.push_back(tensors.back().with_left_action(regular_module(f.target().level(n), Side::left)));
  }
  std::vector<Matrix<F>> trans;
  for (std::size_t n = 1; n < f.depth(); ++n)
    trans.push_back(tensors[n].induced(f.target().transition(n).matrix(), p.transition(n), tensors[n - 1]));
  auto sys = LeftSystem<F>::make(f.target(), std::move(levels), std::move(trans));
  return {std::move(sys), std::move(tensors)};
}

/// f^#(g) for a levelwise system map g: P -> P'.
template <ExactField F>
LevelMaps<F> contraextend_map(const Contraextension<F>& src, const Contraextension<F>& tgt, const LevelMaps<F>& g) {
  LevelMaps<F> out;
  for (std::size_t n = 0; n < g.size(); ++n) {
    const auto& ts = src.tensors[n];
    auto id = Matrix<F>::identity(ts.left_factor().field(), ts.left_factor().dim());
    out.push_back(ts.induced(id, g[n], tgt.tensors[n]));
  }
  return out;
}

/// p -> 1 (x) p, from P to f_# f^# P.
template <ExactField F>
LevelMaps<F> contraextension_unit(const TowerMorphism<F>& f, const LeftSystem<F>& p, const Contraextension<F>& ext) {
  LevelMaps<F> out;
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    const auto& t = ext.tensors[n - 1];
    const auto one = f.target().level(n)->unit();
    const std::size_t dp = p.level(n).dim();
    Matrix<F> eta(f.field(), t.dim(), dp);
    for (std::size_t j = 0; j < dp; ++j) {
      Vec<F> pure(one.size() * dp, f.field().zero());
      for (std::size_t i = 0; i < one.size(); ++i) pure[i * dp + j] = one[i];
      eta.set_column(j, t.projection().apply(pure));
    }
    out.push_back(std::move(eta));
  }
  return out;
}

/// s (x) q -> s q, from f^# f_# Q to Q; `ext` must be contraextend(f, f_# Q).
template <ExactField F>
LevelMaps<F> contraextension_counit(const TowerMorphism<F>& f, const LeftSystem<F>& q, const Contraextension<F>& ext) {
  LevelMaps<F> out;
  for (std::size_t n = 1; n <= f.depth(); ++n) {
    const auto& t = ext.tensors[n - 1];
    const auto& qn = q.level(n);
    const std::size_t ds = f.target().level(n)->dim(), dq = qn.dim();
    Matrix<F> on_pairs(f.field(), dq, ds * dq);
    for (std::size_t i = 0; i < ds; ++i)
      for (std::size_t j = 0; j < dq; ++j) on_pairs.set_column(i * dq + j, qn.action(i).column(j));
    out.push_back(t.descend(on_pairs));
  }
  return out;
}

template <ExactField F>
struct Coextension {
  LeftSystem<F> source;
  LeftSystem<F> system;
  HomSpace<F> top_hom;            // Hom_{R_d}(S_d, P_d)
  std::vector<HomSpace<F>> homs;  // Hom_{R_n}(S_n, P_n)
  // Set when the levelwise Hom spaces with phi -> tau phi sigma do not
  // themselves form a system; the levels of `system` are then the
  // reductions of the top.
  std::optional<SystemDefect> levelwise_defect;
};

namespace detail {
template <ExactField F>
FinModule<F> coextension_module(const HomSpace<F>& h, const AlgebraPtr<F>& s) {
  // (s . phi)(x) = phi(x s)
  return hom_outer_action(h, s, Side::left, [&](std::size_t i, const Matrix<F>& phi) { return phi * s->right_basis(i); });
}

template <ExactField F>
std::optional<SystemDefect> levelwise_coextension_defect(const TowerMorphism<F>& f, const LeftSystem<F>& p,
                                                         const std::vector<HomSpace<F>>& homs) {
  std::vector<FinModule<F>> levels;
  for (std::size_t n = 1; n <= f.depth(); ++n) levels.push_back(coextension_module(homs[n - 1], f.target().level(n)));
  std::vector<Matrix<F>> trans;
  for (std::size_t n = 1; n < f.depth(); ++n) {
    const auto& ts = f.target().transition(n).matrix();
    auto section = *right_inverse(ts);
    auto ker = kernel(ts);
    Matrix<F> m(f.field(), homs[n - 1].dim(), homs[n].dim());
    for (std::size_t j = 0; j < homs[n].dim(); ++j) {
      auto tphi = p.transition(n) * homs[n].basis()[j];
      for (std::size_t r = 0; r < ker.rows(); ++r)
        if (!is_zero_vec(f.field(), tphi.apply(ker.row(r))))
          return SystemDefect{n, 0, 0, "tau phi does not vanish on ker(S_" + std::to_string(n + 1) + " -> S_" +
                                           std::to_string(n) + ")"};
      auto coords = homs[n - 1].coordinates(tphi * section);
      if (!coords) return SystemDefect{n, 0, 0, "reduced map is not R-linear"};
      m.set_column(j, *coords);
    }
    trans.push_back(std::move(m));
  }
  return system_defect(f.target(), levels, trans);
}
}  // namespace detail

/// f^natural P.  The top level is Hom_{R_d}(S_d, P_d) with
/// (s . phi)(x) = phi(x s); lower levels are its reductions.  Refused with
/// a level-indexed SystemAxiomError unless f is strongly right taut, since
/// otherwise S is not an R-system through f.
template <ExactField F>
Coextension<F> coextend_system(const TowerMorphism<F>& f, const LeftSystem<F>& p) {
  check_same_tower(p.tower(), f.source(), "coextend_system");
  auto taut = is_strongly_right_taut(f);
  if (!taut.holds)
    throw SystemAxiomError("coextend_system", SystemDefect{*taut.failing_level, taut.kernel_dim, taut.cokernel_dim,
                                                           "S is not an R-system through f: " + taut.detail});
  const std::size_t d = f.depth();
  std::vector<HomSpace<F>> homs;
  for (std::size_t n = 1; n <= d; ++n) homs.push_back(hom_module(target_as_left_module(f, n), p.level(n)));
  auto top = homs.back();
  auto sys = make_left_system(f.target(), detail::coextension_module(top, f.target().top()));
  auto defect = detail::levelwise_coextension_defect(f, p, homs);
  return {p, std::move(sys), std::move(top), std::move(homs), std::move(defect)};
}

namespace detail {
template <ExactField F>
LevelMaps<F> from_top(const LeftSystem<F>& a, const LeftSystem<F>& b, const Matrix<F>& top) {
  LevelMaps<F> out;
  for (std::size_t n = 1; n <= a.depth(); ++n) out.push_back(level_component(a, b, top, n));
  return out;
}
}  // namespace detail

/// f^natural(g): phi -> g phi.
template <ExactField F>
LevelMaps<F> coextend_map(const Coextension<F>& src, const Coextension<F>& tgt, const LevelMaps<F>& g) {
  const auto& hs = src.top_hom;
  Matrix<F> m(g.back().field(), tgt.top_hom.dim(), hs.dim());
  for (std::size_t j = 0; j < hs.dim(); ++j) m.set_column(j, *tgt.top_hom.coordinates(g.back() * hs.basis()[j]));
  return detail::from_top(src.system, tgt.system, m);
}

/// phi -> phi(x) from f_# f^natural P to P, x in S_d.
template <ExactField F>
LevelMaps<F> coextension_evaluation(const Coextension<F>& c, const Vec<F>& x) {
  const auto& h = c.top_hom;
  Matrix<F> m(h.target().field(), h.target().dim(), h.dim());
  for (std::size_t j = 0; j < h.dim(); ++j) m.set_column(j, h.basis()[j].apply(x));
  return detail::from_top(c.system, c.source, m);
}

/// Counit phi -> phi(1).
template <ExactField F>
LevelMaps<F> coextension_counit(const TowerMorphism<F>& f, const Coextension<F>& c) {
  return coextension_evaluation(c, f.target().top()->unit());
}

/// Evaluation at f_d(1).
template <ExactField F>
LevelMaps<F> coextension_eval_at_image_of_one(const TowerMorphism<F>& f, const Coextension<F>& c) {
  return coextension_evaluation(c, f.map(f.depth()).apply(f.source().top()->unit()));
}

/// q -> (x -> x q), from Q to f^natural f_# Q; `c` must be
/// coextend_system(f, f_# Q).
template <ExactField F>
LevelMaps<F> coextension_unit(const TowerMorphism<F>& f, const LeftSystem<F>& q, const Coextension<F>& c) {
  const auto& qd = q.top();
  const std::size_t ds = f.target().top()->dim();
  Matrix<F> m(f.field(), c.top_hom.dim(), qd.dim());
  for (std::size_t j = 0; j < qd.dim(); ++j) {
    Matrix<F> phi(f.field(), qd.dim(), ds);
    for (std::size_t i = 0; i < ds; ++i) phi.set_column(i, qd.action(i).column(j));
    m.set_column(j, *c.top_hom.coordinates(phi));
  }
  return detail::from_top(q, c.system, m);
}

}  // namespace protower

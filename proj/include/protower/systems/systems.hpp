#pragma once

#include <optional>
#include <string>
#include <vector>

#include "protower/finmod/flatness.hpp"
#include "protower/finmod/hom.hpp"
#include "protower/finmod/tensor.hpp"
#include "protower/tower/predicates.hpp"

namespace protower {

/// A finite right R_m-module, read as a discrete module over the limit ring.
template <ExactField F>
class DiscreteModule {
 public:
  static DiscreteModule make(RingTower<F> tower, std::size_t level, FinModule<F> module) {
    tower.check_level(level);
    if (module.side() != Side::right) throw ValidationError("DiscreteModule: need a right module");
    if (!same_algebra(module.algebra(), tower.level(level)))
      throw ValidationError("DiscreteModule: module is not over R_" + std::to_string(level));
    return DiscreteModule(std::move(tower), level, std::move(module));
  }

  const RingTower<F>& tower() const { return tower_; }
  std::size_t level() const { return level_; }
  const FinModule<F>& module() const { return module_; }
  std::size_t dim() const { return module_.dim(); }

  /// The same module over R_{m'} through R_{m'} -> R_m.
  DiscreteModule relevel(std::size_t m) const {
    if (m < level_) throw ValidationError("relevel: cannot move to a lower level");
    return make(tower_, m, restrict_module(tower_.projection(level_, m), module_));
  }

 private:
  DiscreteModule(RingTower<F> t, std::size_t level, FinModule<F> m)
      : tower_(std::move(t)), level_(level), module_(std::move(m)) {}

  RingTower<F> tower_;
  std::size_t level_;
  FinModule<F> module_;
};

/// Where and how a candidate system violates P_n = R_n (x)_{R_{n+1}} P_{n+1}.
struct SystemDefect {
  std::size_t level = 0;
  std::size_t kernel_dim = 0;
  std::size_t cokernel_dim = 0;
  std::string reason;
};

/// A candidate system failing the system axiom.
class SystemAxiomError : public ValidationError {
 public:
  SystemAxiomError(const std::string& where, SystemDefect d)
      : ValidationError(where + ": system axiom fails at level " + std::to_string(d.level), d.reason),
        defect_(std::move(d)) {}

  const SystemDefect& defect() const { return defect_; }

 private:
  SystemDefect defect_;
};

namespace detail {
template <ExactField F>
std::optional<SystemDefect> system_defect(const RingTower<F>& tower, const std::vector<FinModule<F>>& levels,
                                          const std::vector<Matrix<F>>& trans) {
  const std::size_t d = tower.depth();
  if (levels.size() != d || trans.size() + 1 != d) return SystemDefect{0, 0, 0, "wrong number of levels"};
  for (std::size_t n = 1; n <= d; ++n) {
    const auto& p = levels[n - 1];
    if (p.side() != Side::left || !same_algebra(p.algebra(), tower.level(n)))
      return SystemDefect{n, 0, 0, "P_" + std::to_string(n) + " is not a left R_" + std::to_string(n) + "-module"};
  }
  for (std::size_t n = 1; n < d; ++n) {
    const auto& pn = levels[n - 1];
    const auto& pn1 = levels[n];
    const auto& tau = trans[n - 1];
    const auto& t = tower.transition(n);
    if (tau.rows() != pn.dim() || tau.cols() != pn1.dim())
      return SystemDefect{n, 0, 0, "transition " + std::to_string(n) + " has the wrong shape"};
    for (const auto& g : tower.level(n + 1)->generators())
      if (!(pn.act(t.apply(g)) * tau == tau * pn1.act(g)))
        return SystemDefect{n, 0, 0, "transition " + std::to_string(n) + " is not R_" + std::to_string(n + 1) + "-linear"};
    // sigma_n: R_n (x) P_{n+1} -> P_n, r (x) p -> r tau(p)
    auto rn = restrict_module(t, regular_module(tower.level(n), Side::right));
    auto ten = tensor_over(rn, pn1);
    Matrix<F> on_pairs(tower.field(), pn.dim(), rn.dim() * pn1.dim());
    for (std::size_t i = 0; i < rn.dim(); ++i)
      for (std::size_t j = 0; j < pn1.dim(); ++j) on_pairs.set_column(i * pn1.dim() + j, pn.action(i).apply(tau.column(j)));
    const std::size_t r = rank(ten.descend(on_pairs));
    if (r != ten.dim() || r != pn.dim())
      return SystemDefect{n, ten.dim() - r, pn.dim() - r,
                          "sigma_" + std::to_string(n) + ": R_" + std::to_string(n) + " (x) P_" + std::to_string(n + 1) +
                              " (dim " + std::to_string(ten.dim()) + ") -> P_" + std::to_string(n) + " (dim " +
                              std::to_string(pn.dim()) + ") is not bijective"};
  }
  return std::nullopt;
}
}  // namespace detail

/// Left modules P_n over R_n with R_{n+1}-linear tau_n: P_{n+1} -> P_n
/// inducing R_n (x)_{R_{n+1}} P_{n+1} = P_n.  A truncated separated left
/// contramodule; it is determined by its top level.
template <ExactField F>
class LeftSystem {
 public:
  static LeftSystem make(RingTower<F> tower, std::vector<FinModule<F>> levels, std::vector<Matrix<F>> trans) {
    if (auto d = detail::system_defect(tower, levels, trans)) throw SystemAxiomError("LeftSystem", *d);
    return LeftSystem(std::move(tower), std::move(levels), std::move(trans));
  }
  static LeftSystem trusted(RingTower<F> tower, std::vector<FinModule<F>> levels, std::vector<Matrix<F>> trans) {
    return LeftSystem(std::move(tower), std::move(levels), std::move(trans));
  }

  const RingTower<F>& tower() const { return tower_; }
  std::size_t depth() const { return tower_.depth(); }
  const FinModule<F>& level(std::size_t n) const { return levels_.at(n - 1); }
  const FinModule<F>& top() const { return levels_.back(); }
  const std::vector<FinModule<F>>& levels() const { return levels_; }
  /// tau_n: P_{n+1} -> P_n
  const Matrix<F>& transition(std::size_t n) const { return trans_.at(n - 1); }
  const std::vector<Matrix<F>>& transitions() const { return trans_; }

  /// P_top -> P_n, composite of transitions.
  Matrix<F> reduction(std::size_t n) const {
    auto m = Matrix<F>::identity(tower_.field(), top().dim());
    for (std::size_t j = depth() - 1; j >= n; --j) m = transition(j) * m;
    return m;
  }

  std::vector<std::size_t> dims() const {
    std::vector<std::size_t> out;
    for (const auto& p : levels_) out.push_back(p.dim());
    return out;
  }

 private:
  LeftSystem(RingTower<F> t, std::vector<FinModule<F>> levels, std::vector<Matrix<F>> trans)
      : tower_(std::move(t)), levels_(std::move(levels)), trans_(std::move(trans)) {}

  RingTower<F> tower_;
  std::vector<FinModule<F>> levels_;
  std::vector<Matrix<F>> trans_;
};

template <ExactField F>
std::optional<SystemDefect> system_defect(const LeftSystem<F>& p) {
  return detail::system_defect(p.tower(), p.levels(), p.transitions());
}

/// P_n = P_d / K_{n,d} P_d, with the induced projections as transitions.
template <ExactField F>
LeftSystem<F> make_left_system(const RingTower<F>& tower, const FinModule<F>& top) {
  const std::size_t d = tower.depth();
  if (top.side() != Side::left || !same_algebra(top.algebra(), tower.top()))
    throw ValidationError("make_left_system: top must be a left R_d-module");
  const F& k = tower.field();
  std::vector<QuotientSpace<F>> quots;
  std::vector<FinModule<F>> levels;
  for (std::size_t n = 1; n <= d; ++n) {
    const auto& kb = tower.accumulated_kernel(n).span().basis();
    std::vector<Vec<F>> gens;
    for (std::size_t r = 0; r < kb.rows(); ++r) {
      auto act = top.act(kb.row(r));
      for (std::size_t j = 0; j < top.dim(); ++j) gens.push_back(act.column(j));
    }
    QuotientSpace<F> q(Subspace<F>::span(k, top.dim(), gens));
    // R_n acts through any lift to R_d
    auto lift = *right_inverse(tower.projection(n).matrix());
    std::vector<Matrix<F>> act;
    for (std::size_t i = 0; i < tower.level(n)->dim(); ++i) act.push_back(q.induced(top.act(lift.column(i))));
    levels.push_back(FinModule<F>::trusted(tower.level(n), Side::left, q.dim(), std::move(act)));
    quots.push_back(std::move(q));
  }
  std::vector<Matrix<F>> trans;
  for (std::size_t n = 1; n < d; ++n) trans.push_back(quots[n - 1].projection_matrix() * quots[n].lift_matrix());
  return LeftSystem<F>::trusted(tower, std::move(levels), std::move(trans));
}

/// R_n^rank at every level.
template <ExactField F>
LeftSystem<F> free_system(const RingTower<F>& tower, std::size_t rank) {
  std::vector<FinModule<F>> levels;
  std::vector<Matrix<F>> trans;
  for (std::size_t n = 1; n <= tower.depth(); ++n) {
    levels.push_back(free_module(tower.level(n), Side::left, rank));
    if (n > 1) {
      auto id = Matrix<F>::identity(tower.field(), rank);
      trans.push_back(kronecker(id, tower.transition(n - 1).matrix()));
    }
  }
  return LeftSystem<F>::trusted(tower, std::move(levels), std::move(trans));
}

template <ExactField F>
LeftSystem<F> zero_system(const RingTower<F>& tower) {
  return free_system(tower, 0);
}

/// Separated reflection.  Truncated systems are always separated, so this
/// is the identity.
template <ExactField F>
LeftSystem<F> separated_reflection(const LeftSystem<F>& p) {
  return p;
}

/// Kernel of P -> lim P_n.  Always zero at finite depth.
template <ExactField F>
LeftSystem<F> nonseparated_part(const LeftSystem<F>& p) {
  return zero_system(p.tower());
}

template <ExactField F>
void check_same_tower(const RingTower<F>& a, const RingTower<F>& b, const std::string& where) {
  if (!a.same_structure(b)) throw ValidationError(where + ": objects live over different towers");
}

/// Hom_{R_d}(P_d, Q_d): the depth-d term of the limit defining system Hom.
template <ExactField F>
HomSpace<F> system_hom(const LeftSystem<F>& p, const LeftSystem<F>& q) {
  check_same_tower(p.tower(), q.tower(), "system_hom");
  return hom_module(p.top(), q.top());
}

/// Level-n component g_n forced by a top-level map g: P_d -> Q_d.
template <ExactField F>
Matrix<F> level_component(const LeftSystem<F>& p, const LeftSystem<F>& q, const Matrix<F>& top_map, std::size_t n) {
  auto rp = p.reduction(n);
  auto s = *right_inverse(rp);
  return q.reduction(n) * top_map * s;
}

/// N (x)_{R_m} P_m at N's level m.
template <ExactField F>
TensorProduct<F> contratensor(const DiscreteModule<F>& n, const LeftSystem<F>& p) {
  check_same_tower(n.tower(), p.tower(), "contratensor");
  return tensor_over(n.module(), p.level(n.level()));
}

/// Every P_n flat.
template <ExactField F>
LevelVerdict is_flat_system(const LeftSystem<F>& p) {
  LevelVerdict v;
  v.certified_depth = p.depth();
  for (std::size_t n = 1; n <= p.depth(); ++n) {
    if (is_flat(p.level(n)).flat) continue;
    v.holds = false;
    v.failing_level = n;
    v.detail = "P_" + std::to_string(n) + " is not flat";
    return v;
  }
  return v;
}

}  // namespace protower

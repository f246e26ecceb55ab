#pragma once

#include <optional>
#include <string>
#include <vector>

#include "protower/finalg/algebra.hpp"

namespace protower {

/// Declared, never computed.  Gates the descent operations in verify.
struct HypothesisFlags {
  bool forgetful_fully_faithful = false;

  bool operator==(const HypothesisFlags&) const = default;
};

/// A_1 <- A_2 <- ... <- A_d with surjective transitions t_n: A_{n+1} -> A_n.
/// Levels are numbered from 1.  The limit ring of the infinite tower is
/// only ever seen through this truncation.
template <ExactField F>
class RingTower {
 public:
  static RingTower make(std::vector<AlgebraPtr<F>> levels, std::vector<AlgMorphism<F>> transitions,
                        HypothesisFlags flags = {}, std::string builder_tag = {}) {
    if (levels.empty()) throw ValidationError("RingTower: depth must be at least 1");
    if (transitions.size() + 1 != levels.size())
      throw ValidationError("RingTower: need depth - 1 transitions, got " + std::to_string(transitions.size()));
    for (std::size_t n = 1; n < levels.size(); ++n) {
      const auto& t = transitions[n - 1];
      const std::string tag = "transition " + std::to_string(n);
      if (!same_algebra(t.source(), levels[n]) || !same_algebra(t.target(), levels[n - 1]))
        throw ValidationError("RingTower: " + tag + " does not map A_" + std::to_string(n + 1) + " to A_" +
                              std::to_string(n));
      if (levels[n]->field().characteristic() != levels[0]->field().characteristic())
        throw ValidationError("RingTower: levels over different fields");
      if (!t.is_surjective()) throw ValidationError("RingTower: " + tag + " is not surjective");
    }
    return RingTower(std::move(levels), std::move(transitions), flags, std::move(builder_tag));
  }

  std::size_t depth() const { return levels_.size(); }
  const F& field() const { return levels_.front()->field(); }
  const AlgebraPtr<F>& level(std::size_t n) const { return levels_.at(n - 1); }
  const AlgebraPtr<F>& top() const { return levels_.back(); }
  const std::vector<AlgebraPtr<F>>& levels() const { return levels_; }
  /// t_n: A_{n+1} -> A_n, 1 <= n < d
  const AlgMorphism<F>& transition(std::size_t n) const { return transitions_.at(n - 1); }
  const std::vector<AlgMorphism<F>>& transitions() const { return transitions_; }

  /// A_n -> A_m for m <= n.
  AlgMorphism<F> projection(std::size_t m, std::size_t n) const {
    check_level(n);
    if (m < 1 || m > n) throw ValidationError("RingTower: projection needs 1 <= m <= n");
    auto p = AlgMorphism<F>::identity(level(n));
    for (std::size_t j = n - 1; j >= m; --j) p = compose(transition(j), p);
    return p;
  }
  /// A_d -> A_m
  const AlgMorphism<F>& projection(std::size_t m) const { return top_projections_.at(m - 1); }

  /// K_n = ker(t_n), an ideal of A_{n+1}.
  Ideal<F> kernel_ideal(std::size_t n) const { return transition(n).kernel(); }
  /// K_{m,d} = ker(A_d -> A_m)
  const Ideal<F>& accumulated_kernel(std::size_t m) const { return accumulated_.at(m - 1); }

  const HypothesisFlags& flags() const { return flags_; }
  const std::string& builder_tag() const { return builder_tag_; }
  RingTower with_flags(HypothesisFlags f) const {
    RingTower t = *this;
    t.flags_ = f;
    return t;
  }
  RingTower with_builder_tag(std::string tag) const {
    RingTower t = *this;
    t.builder_tag_ = std::move(tag);
    return t;
  }

  void check_level(std::size_t n) const {
    if (n < 1 || n > depth())
      throw ValidationError("level " + std::to_string(n) + " outside 1.." + std::to_string(depth()));
  }

  bool same_structure(const RingTower& o) const {
    if (depth() != o.depth()) return false;
    for (std::size_t n = 1; n <= depth(); ++n)
      if (!same_algebra(level(n), o.level(n))) return false;
    for (std::size_t n = 1; n < depth(); ++n)
      if (!(transition(n).matrix() == o.transition(n).matrix())) return false;
    return true;
  }

 private:
  RingTower(std::vector<AlgebraPtr<F>> levels, std::vector<AlgMorphism<F>> transitions, HypothesisFlags flags,
            std::string tag)
      : levels_(std::move(levels)), transitions_(std::move(transitions)), flags_(flags), builder_tag_(std::move(tag)) {
    const std::size_t d = levels_.size();
    top_projections_.reserve(d);
    std::vector<AlgMorphism<F>> down;
    down.push_back(AlgMorphism<F>::identity(levels_.back()));
    for (std::size_t m = d - 1; m >= 1; --m) down.push_back(compose(transitions_[m - 1], down.back()));
    for (std::size_t m = 1; m <= d; ++m) top_projections_.push_back(down[d - m]);
    for (std::size_t m = 1; m <= d; ++m) {
      accumulated_.push_back(top_projections_[m - 1].kernel());
      if (auto w = detail::closure_witness(*levels_.back(), accumulated_.back().span(), true, true))
        throw ValidationError("RingTower: accumulated kernel is not two-sided", *w);
    }
    // K_{m,d} must shrink as m grows, ending at 0
    for (std::size_t m = 1; m < d; ++m)
      if (!(accumulated_[m].span() + accumulated_[m - 1].span() == accumulated_[m - 1].span()))
        throw ValidationError("RingTower: accumulated kernels are not nested");
  }

  std::vector<AlgebraPtr<F>> levels_;
  std::vector<AlgMorphism<F>> transitions_;
  std::vector<AlgMorphism<F>> top_projections_;
  std::vector<Ideal<F>> accumulated_;
  HypothesisFlags flags_;
  std::string builder_tag_;
};

/// f_n: R_n -> S_n with f_n t^R_n = t^S_n f_{n+1}.
template <ExactField F>
class TowerMorphism {
 public:
  static TowerMorphism make(RingTower<F> source, RingTower<F> target, std::vector<AlgMorphism<F>> maps,
                            std::string builder_tag = {}) {
    const std::size_t d = source.depth();
    if (target.depth() != d)
      throw ValidationError("TowerMorphism: depths differ (" + std::to_string(d) + " vs " +
                            std::to_string(target.depth()) + ")");
    if (maps.size() != d) throw ValidationError("TowerMorphism: need one map per level");
    for (std::size_t n = 1; n <= d; ++n) {
      const auto& f = maps[n - 1];
      if (!same_algebra(f.source(), source.level(n)) || !same_algebra(f.target(), target.level(n)))
        throw ValidationError("TowerMorphism: map at level " + std::to_string(n) + " has wrong endpoints");
    }
    for (std::size_t n = 1; n < d; ++n) {
      auto lhs = maps[n - 1].matrix() * source.transition(n).matrix();
      auto rhs = target.transition(n).matrix() * maps[n].matrix();
      if (!(lhs == rhs))
        throw ValidationError("TowerMorphism: square at level " + std::to_string(n) + " does not commute");
    }
    return TowerMorphism(std::move(source), std::move(target), std::move(maps), std::move(builder_tag));
  }

  static TowerMorphism identity(const RingTower<F>& t) {
    std::vector<AlgMorphism<F>> maps;
    for (const auto& a : t.levels()) maps.push_back(AlgMorphism<F>::identity(a));
    return TowerMorphism(t, t, std::move(maps), "identity");
  }

  std::size_t depth() const { return source_.depth(); }
  const F& field() const { return source_.field(); }
  const RingTower<F>& source() const { return source_; }
  const RingTower<F>& target() const { return target_; }
  const AlgMorphism<F>& map(std::size_t n) const { return maps_.at(n - 1); }
  const std::vector<AlgMorphism<F>>& maps() const { return maps_; }
  const std::string& builder_tag() const { return builder_tag_; }

  TowerMorphism with_source_flags(HypothesisFlags flags) const {
    TowerMorphism m = *this;
    m.source_ = source_.with_flags(flags);
    return m;
  }

 private:
  TowerMorphism(RingTower<F> s, RingTower<F> t, std::vector<AlgMorphism<F>> maps, std::string tag)
      : source_(std::move(s)), target_(std::move(t)), maps_(std::move(maps)), builder_tag_(std::move(tag)) {}

  RingTower<F> source_, target_;
  std::vector<AlgMorphism<F>> maps_;
  std::string builder_tag_;
};

/// g after f, levelwise.
template <ExactField F>
TowerMorphism<F> compose(const TowerMorphism<F>& g, const TowerMorphism<F>& f) {
  if (!f.target().same_structure(g.source())) throw ValidationError("compose: towers do not match");
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 1; n <= f.depth(); ++n)
    maps.push_back(AlgMorphism<F>::make(f.source().level(n), g.target().level(n), g.map(n).matrix() * f.map(n).matrix()));
  return TowerMorphism<F>::make(f.source(), g.target(), std::move(maps));
}

}  // namespace protower

#pragma once

#include <cstddef>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "protower/finalg/errors.hpp"
#include "protower/finalg/field.hpp"
#include "protower/finalg/matrix.hpp"

namespace protower {

/// A generating set of an algebra together with, for every basis element,
/// its expansion as a linear combination of words in the generators.
/// Word 0 is always the empty word (the unit).
template <ExactField F>
struct GeneratorPresentation {
  std::vector<Vec<F>> generators;
  std::vector<std::vector<std::size_t>> words;
  // expansion(w, k): coefficient of word w in basis element e_k
  Matrix<F> expansion;
};

/// Finite-dimensional associative unital algebra given by structure
/// constants: e_i * e_j = sum_k c(i, j, k) e_k.
template <ExactField F>
class FinAlgebra {
 public:
  using value_type = typename F::value_type;

  /// Validates associativity, the unit laws, and a declared commutativity
  /// flag; throws ValidationError naming the first offending basis triple.
  static std::shared_ptr<const FinAlgebra> make(F k, std::size_t dim, std::vector<value_type> constants,
                                                Vec<F> unit, std::vector<std::string> labels = {},
                                                bool declared_commutative = false, std::string name = {}) {
    if (dim == 0) throw ValidationError("FinAlgebra: dimension must be positive");
    if (constants.size() != dim * dim * dim)
      throw ValidationError("FinAlgebra: expected dim^3 structure constants");
    if (unit.size() != dim) throw ValidationError("FinAlgebra: unit has wrong length");
    if (labels.empty())
      for (std::size_t i = 0; i < dim; ++i) labels.push_back("e" + std::to_string(i));
    if (labels.size() != dim) throw ValidationError("FinAlgebra: wrong number of basis labels");
    std::shared_ptr<FinAlgebra> a(new FinAlgebra(std::move(k), dim, std::move(constants), std::move(unit),
                                                 std::move(labels), std::move(name)));
    if (auto w = a->associativity_witness()) throw ValidationError("FinAlgebra: not associative", *w);
    if (auto w = a->unit_witness()) throw ValidationError("FinAlgebra: unit law fails", *w);
    a->commutative_ = a->compute_commutative();
    if (declared_commutative && !a->commutative_)
      throw ValidationError("FinAlgebra: declared commutative but structure constants are not");
    a->presentation_ = a->compute_presentation();
    return a;
  }

  const F& field() const { return field_; }
  std::size_t dim() const { return dim_; }
  const Vec<F>& unit() const { return unit_; }
  const std::vector<std::string>& labels() const { return labels_; }
  const std::string& name() const { return name_; }
  bool is_commutative() const { return commutative_; }

  const value_type& constant(std::size_t i, std::size_t j, std::size_t k) const {
    return c_[(i * dim_ + j) * dim_ + k];
  }
  const std::vector<value_type>& constants() const { return c_; }

  Vec<F> basis(std::size_t i) const { return unit_vec(field_, dim_, i); }

  Vec<F> multiply(const Vec<F>& a, const Vec<F>& b) const {
    Vec<F> out(dim_, field_.zero());
    for (std::size_t i = 0; i < dim_; ++i) {
      if (field_.is_zero(a[i])) continue;
      for (std::size_t j = 0; j < dim_; ++j) {
        if (field_.is_zero(b[j])) continue;
        auto ab = field_.mul(a[i], b[j]);
        for (std::size_t k = 0; k < dim_; ++k) {
          const auto& c = constant(i, j, k);
          if (!field_.is_zero(c)) out[k] = field_.add(out[k], field_.mul(ab, c));
        }
      }
    }
    return out;
  }

  /// x -> e_i x
  const Matrix<F>& left_basis(std::size_t i) const { return left_.at(i); }
  /// x -> x e_i
  const Matrix<F>& right_basis(std::size_t i) const { return right_.at(i); }

  Matrix<F> left_multiplication(const Vec<F>& a) const { return combine(left_, a); }
  Matrix<F> right_multiplication(const Vec<F>& a) const { return combine(right_, a); }

  const GeneratorPresentation<F>& presentation() const { return presentation_; }
  const std::vector<Vec<F>>& generators() const { return presentation_.generators; }

  /// Structural equality (same field, constants, unit); labels are ignored.
  bool same_structure(const FinAlgebra& other) const {
    if (!(field_ == other.field_) || dim_ != other.dim_) return false;
    if (!equal_vec(field_, unit_, other.unit_)) return false;
    for (std::size_t i = 0; i < c_.size(); ++i)
      if (!field_.equal(c_[i], other.c_[i])) return false;
    return true;
  }

  /// Number of basis triples (i, j, k) with (e_i e_j) e_k != e_i (e_j e_k).
  std::size_t associativity_defects() const {
    std::size_t defects = 0;
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!equal_vec(field_, multiply(multiply(basis(i), basis(j)), basis(k)),
                         multiply(basis(i), multiply(basis(j), basis(k)))))
            ++defects;
    return defects;
  }

 private:
  FinAlgebra(F k, std::size_t dim, std::vector<value_type> c, Vec<F> unit, std::vector<std::string> labels,
             std::string name)
      : field_(std::move(k)), dim_(dim), c_(std::move(c)), unit_(std::move(unit)),
        labels_(std::move(labels)), name_(std::move(name)) {
    for (std::size_t i = 0; i < dim_; ++i) {
      Matrix<F> l(field_, dim_, dim_), r(field_, dim_, dim_);
      for (std::size_t j = 0; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k) {
          l(k, j) = constant(i, j, k);
          r(k, j) = constant(j, i, k);
        }
      left_.push_back(std::move(l));
      right_.push_back(std::move(r));
    }
  }

  Matrix<F> combine(const std::vector<Matrix<F>>& mats, const Vec<F>& a) const {
    Matrix<F> m(field_, dim_, dim_);
    for (std::size_t i = 0; i < dim_; ++i) m.add_scaled(a.at(i), mats[i]);
    return m;
  }

  std::optional<std::string> associativity_witness() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = 0; j < dim_; ++j) {
        auto ij = multiply(basis(i), basis(j));
        for (std::size_t k = 0; k < dim_; ++k)
          if (!equal_vec(field_, multiply(ij, basis(k)), multiply(basis(i), multiply(basis(j), basis(k)))))
            return "(e" + std::to_string(i) + " e" + std::to_string(j) + ") e" + std::to_string(k);
      }
    return std::nullopt;
  }

  std::optional<std::string> unit_witness() const {
    for (std::size_t i = 0; i < dim_; ++i) {
      if (!equal_vec(field_, multiply(unit_, basis(i)), basis(i))) return "u e" + std::to_string(i);
      if (!equal_vec(field_, multiply(basis(i), unit_), basis(i))) return "e" + std::to_string(i) + " u";
    }
    return std::nullopt;
  }

  bool compute_commutative() const {
    for (std::size_t i = 0; i < dim_; ++i)
      for (std::size_t j = i + 1; j < dim_; ++j)
        for (std::size_t k = 0; k < dim_; ++k)
          if (!field_.equal(constant(i, j, k), constant(j, i, k))) return false;
    return true;
  }

  // Closure of the span of words in `gens`, recording the words used.
  struct Closure {
    std::vector<std::vector<std::size_t>> words;
    std::vector<Vec<F>> vectors;
    Subspace<F> span;
  };

  Closure close_words(const std::vector<Vec<F>>& gens) const {
    Closure cl;
    cl.span = Subspace<F>(field_, dim_);
    auto push = [&](std::vector<std::size_t> w, Vec<F> v) {
      if (cl.span.contains(v)) return false;
      cl.span = cl.span + Subspace<F>::span(field_, dim_, {v});
      cl.words.push_back(std::move(w));
      cl.vectors.push_back(std::move(v));
      return true;
    };
    push({}, unit_);
    for (std::size_t idx = 0; idx < cl.vectors.size(); ++idx)
      for (std::size_t g = 0; g < gens.size(); ++g) {
        auto w = cl.words[idx];
        w.push_back(g);
        push(std::move(w), multiply(cl.vectors[idx], gens[g]));
        if (cl.span.dim() == dim_) return cl;
      }
    return cl;
  }

  // Candidate generators: every element when the algebra is small enough to
  // enumerate, otherwise the basis.
  std::vector<Vec<F>> generator_candidates() const {
    std::vector<Vec<F>> out;
    const auto p = field_.characteristic();
    std::size_t total = 1;
    bool enumerable = p != 0;
    for (std::size_t i = 0; enumerable && i < dim_; ++i) {
      total *= p;
      if (total > 256) enumerable = false;
    }
    if (!enumerable) {
      for (std::size_t i = 0; i < dim_; ++i) out.push_back(basis(i));
      return out;
    }
    for (std::size_t code = 1; code < total; ++code) {
      Vec<F> v(dim_, field_.zero());
      std::size_t c = code;
      for (std::size_t i = 0; i < dim_; ++i) {
        v[i] = field_.from_int(static_cast<std::int64_t>(c % p));
        c /= p;
      }
      out.push_back(std::move(v));
    }
    return out;
  }

  GeneratorPresentation<F> compute_presentation() const {
    std::vector<Vec<F>> gens;
    auto candidates = generator_candidates();
    auto cl = close_words(gens);
    while (cl.span.dim() < dim_) {
      std::size_t best = 0, best_dim = 0;
      for (std::size_t c = 0; c < candidates.size(); ++c) {
        if (cl.span.contains(candidates[c])) continue;
        auto trial = gens;
        trial.push_back(candidates[c]);
        auto d = close_words(trial).span.dim();
        if (d > best_dim) {
          best_dim = d;
          best = c;
          if (d == dim_) break;
        }
      }
      gens.push_back(candidates[best]);
      cl = close_words(gens);
    }
    auto words_matrix = Matrix<F>::from_columns(field_, dim_, cl.vectors);
    auto inv = inverse(words_matrix);
    if (!inv) throw ValidationError("FinAlgebra: internal error building generator presentation");
    return {std::move(gens), std::move(cl.words), std::move(*inv)};
  }

  F field_;
  std::size_t dim_;
  std::vector<value_type> c_;
  Vec<F> unit_;
  std::vector<std::string> labels_;
  std::string name_;
  bool commutative_ = false;
  std::vector<Matrix<F>> left_, right_;
  GeneratorPresentation<F> presentation_;
};

template <ExactField F>
using AlgebraPtr = std::shared_ptr<const FinAlgebra<F>>;

template <ExactField F>
bool same_algebra(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b) {
  return a == b || (a && b && a->same_structure(*b));
}

enum class Sidedness { left, right, two_sided };

inline std::string to_string(Sidedness s) {
  switch (s) {
    case Sidedness::left: return "left";
    case Sidedness::right: return "right";
    default: return "two_sided";
  }
}

namespace detail {
// First product a*x (left) or x*a (right) leaving the subspace, as text.
template <ExactField F>
std::optional<std::string> closure_witness(const FinAlgebra<F>& a, const Subspace<F>& w, bool left, bool right) {
  for (std::size_t r = 0; r < w.dim(); ++r) {
    auto x = w.basis().row(r);
    for (std::size_t i = 0; i < a.dim(); ++i) {
      if (left && !w.contains(a.multiply(a.basis(i), x)))
        return "e" + std::to_string(i) + " * v" + std::to_string(r) + " leaves the ideal";
      if (right && !w.contains(a.multiply(x, a.basis(i))))
        return "v" + std::to_string(r) + " * e" + std::to_string(i) + " leaves the ideal";
    }
  }
  return std::nullopt;
}
}  // namespace detail

/// A left, right or two-sided ideal, stored as its echelon-form span.
template <ExactField F>
class Ideal {
 public:
  static Ideal make(AlgebraPtr<F> parent, Subspace<F> span, Sidedness side) {
    if (span.ambient() != parent->dim()) throw ValidationError("Ideal: ambient dimension mismatch");
    bool l = side != Sidedness::right, r = side != Sidedness::left;
    if (auto w = detail::closure_witness(*parent, span, l, r))
      throw ValidationError("Ideal: not closed under multiplication", *w);
    return Ideal(std::move(parent), std::move(span), side);
  }

  /// Smallest ideal of the given side containing `vectors`.
  static Ideal generated(AlgebraPtr<F> parent, const std::vector<Vec<F>>& vectors, Sidedness side) {
    const auto& a = *parent;
    std::vector<Vec<F>> rows;
    for (const auto& v : vectors) {
      for (std::size_t i = 0; i < a.dim(); ++i) {
        if (side == Sidedness::left) rows.push_back(a.multiply(a.basis(i), v));
        if (side == Sidedness::right) rows.push_back(a.multiply(v, a.basis(i)));
        if (side == Sidedness::two_sided) {
          auto iv = a.multiply(a.basis(i), v);
          for (std::size_t j = 0; j < a.dim(); ++j) rows.push_back(a.multiply(iv, a.basis(j)));
        }
      }
    }
    auto span = Subspace<F>::span(a.field(), a.dim(), rows);
    return Ideal(std::move(parent), std::move(span), side);
  }

  static Ideal zero(AlgebraPtr<F> parent) {
    Subspace<F> s(parent->field(), parent->dim());
    return Ideal(std::move(parent), std::move(s), Sidedness::two_sided);
  }

  const AlgebraPtr<F>& parent() const { return parent_; }
  const Subspace<F>& span() const { return span_; }
  Sidedness sidedness() const { return side_; }
  std::size_t dim() const { return span_.dim(); }

  bool operator==(const Ideal& other) const { return span_ == other.span_; }

 private:
  Ideal(AlgebraPtr<F> parent, Subspace<F> span, Sidedness side)
      : parent_(std::move(parent)), span_(std::move(span)), side_(side) {}

  AlgebraPtr<F> parent_;
  Subspace<F> span_;
  Sidedness side_;
};

/// Unital algebra homomorphism.  Column i of the matrix holds the image of
/// the i-th source basis element in target coordinates.
template <ExactField F>
class AlgMorphism {
 public:
  static AlgMorphism make(AlgebraPtr<F> source, AlgebraPtr<F> target, Matrix<F> matrix) {
    if (matrix.rows() != target->dim() || matrix.cols() != source->dim())
      throw ValidationError("AlgMorphism: matrix shape does not match source/target dimensions");
    AlgMorphism f(std::move(source), std::move(target), std::move(matrix));
    if (auto w = f.defect()) throw ValidationError("AlgMorphism: not a unital algebra map", *w);
    return f;
  }

  static AlgMorphism identity(const AlgebraPtr<F>& a) {
    return AlgMorphism(a, a, Matrix<F>::identity(a->field(), a->dim()));
  }

  const AlgebraPtr<F>& source() const { return source_; }
  const AlgebraPtr<F>& target() const { return target_; }
  const Matrix<F>& matrix() const { return matrix_; }

  Vec<F> apply(const Vec<F>& x) const { return matrix_.apply(x); }
  Vec<F> image_of_basis(std::size_t i) const { return matrix_.column(i); }

  bool is_surjective() const { return rank(matrix_) == target_->dim(); }

  Ideal<F> kernel() const {
    auto k = protower::kernel(matrix_);
    return Ideal<F>::make(source_, Subspace<F>::from_matrix(k), Sidedness::two_sided);
  }

  Subspace<F> image() const { return Subspace<F>::from_matrix(matrix_.transpose()); }

 private:
  AlgMorphism(AlgebraPtr<F> source, AlgebraPtr<F> target, Matrix<F> matrix)
      : source_(std::move(source)), target_(std::move(target)), matrix_(std::move(matrix)) {}

  std::optional<std::string> defect() const {
    const auto& s = *source_;
    const auto& t = *target_;
    const auto& k = s.field();
    if (!equal_vec(k, apply(s.unit()), t.unit())) return "unit not preserved";
    for (std::size_t i = 0; i < s.dim(); ++i)
      for (std::size_t j = 0; j < s.dim(); ++j)
        if (!equal_vec(k, apply(s.multiply(s.basis(i), s.basis(j))),
                       t.multiply(image_of_basis(i), image_of_basis(j))))
          return "f(e" + std::to_string(i) + " e" + std::to_string(j) + ") != f(e" + std::to_string(i) +
                 ") f(e" + std::to_string(j) + ")";
    return std::nullopt;
  }

  AlgebraPtr<F> source_, target_;
  Matrix<F> matrix_;
};

/// g after f
template <ExactField F>
AlgMorphism<F> compose(const AlgMorphism<F>& g, const AlgMorphism<F>& f) {
  if (!same_algebra(f.target(), g.source())) throw ValidationError("compose: algebras do not match");
  return AlgMorphism<F>::make(f.source(), g.target(), g.matrix() * f.matrix());
}

template <ExactField F>
struct QuotientAlgebra {
  AlgebraPtr<F> algebra;
  AlgMorphism<F> projection;
};

/// A/I together with the projection A -> A/I.  The ideal must be two-sided
/// whatever its declared sidedness; otherwise the offending product is
/// reported.
template <ExactField F>
QuotientAlgebra<F> quotient_algebra(const Ideal<F>& ideal, std::string name = {}) {
  const auto& a = *ideal.parent();
  const F& k = a.field();
  if (auto w = detail::closure_witness(a, ideal.span(), true, true))
    throw ValidationError("quotient_algebra: ideal is not two-sided", *w);
  QuotientSpace<F> q(ideal.span());
  const std::size_t d = q.dim();
  if (d == 0) throw ValidationError("quotient_algebra: quotient by the whole algebra is the zero ring");
  std::vector<typename F::value_type> c(d * d * d, k.zero());
  for (std::size_t i = 0; i < d; ++i)
    for (std::size_t j = 0; j < d; ++j) {
      auto prod = q.project(a.multiply(q.lift(unit_vec(k, d, i)), q.lift(unit_vec(k, d, j))));
      for (std::size_t l = 0; l < d; ++l) c[(i * d + j) * d + l] = prod[l];
    }
  std::vector<std::string> labels;
  for (auto col : q.free_columns()) labels.push_back(a.labels()[col]);
  auto quot = FinAlgebra<F>::make(k, d, std::move(c), q.project(a.unit()), std::move(labels), false,
                                  std::move(name));
  auto proj = AlgMorphism<F>::make(ideal.parent(), quot, q.projection_matrix());
  return {quot, proj};
}

}  // namespace protower

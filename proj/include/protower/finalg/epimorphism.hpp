#pragma once

#include <optional>
#include <string>
#include <vector>

#include "protower/finalg/algebra.hpp"

namespace protower {

/// S (x)_R S for a ring map f: R -> S, as a quotient of S (x)_k S (pair
/// (i, j) at index i * dim S + j), with the multiplication map to S.
template <ExactField F>
struct RingTensor {
  QuotientSpace<F> space;
  Matrix<F> multiplication;  // dim S x dim(S (x)_R S)

  std::size_t dim() const { return space.dim(); }
};

template <ExactField F>
RingTensor<F> balanced_tensor_ring(const AlgMorphism<F>& f) {
  const auto& s = *f.target();
  const auto& r = *f.source();
  const F& k = s.field();
  const std::size_t n = s.dim();
  // s f(g) (x) t - s (x) f(g) t for algebra generators g of R
  std::vector<Vec<F>> relations;
  for (const auto& g : r.generators()) {
    const auto fg = f.apply(g);
    const auto right = s.right_multiplication(fg);  // x -> x f(g)
    const auto left = s.left_multiplication(fg);    // x -> f(g) x
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) {
        Vec<F> rel(n * n, k.zero());
        for (std::size_t a = 0; a < n; ++a) rel[a * n + j] = k.add(rel[a * n + j], right(a, i));
        for (std::size_t b = 0; b < n; ++b) rel[i * n + b] = k.sub(rel[i * n + b], left(b, j));
        relations.push_back(std::move(rel));
      }
  }
  QuotientSpace<F> q(Subspace<F>::span(k, n * n, relations));
  Matrix<F> mu_full(k, n, n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) mu_full.set_column(i * n + j, s.multiply(s.basis(i), s.basis(j)));
  return {q, mu_full * q.lift_matrix()};
}

template <ExactField F>
struct EpimorphismVerdict {
  bool epimorphism = false;
  std::size_t tensor_dim = 0;
  std::size_t target_dim = 0;
  std::size_t multiplication_rank = 0;
  // nonzero element of ker(S (x)_R S -> S), in S (x)_k S coordinates
  std::optional<Vec<F>> witness;
  std::string witness_text;
};

namespace detail {
template <ExactField F>
std::string tensor_text(const FinAlgebra<F>& s, const Vec<F>& v) {
  const F& k = s.field();
  std::string out;
  for (std::size_t i = 0; i < s.dim(); ++i)
    for (std::size_t j = 0; j < s.dim(); ++j) {
      const auto& c = v[i * s.dim() + j];
      if (k.is_zero(c)) continue;
      if (!out.empty()) out += " + ";
      if (!k.equal(c, k.one())) out += k.to_string(c) + "*";
      out += s.labels()[i] + "(x)" + s.labels()[j];
    }
  return out.empty() ? "0" : out;
}
}  // namespace detail

/// f is a ring epimorphism iff S (x)_R S -> S is injective.  On failure the
/// witness is s (x) 1 - 1 (x) s for the first basis element s where these
/// differ, falling back to an arbitrary kernel vector.
template <ExactField F>
EpimorphismVerdict<F> is_ring_epimorphism(const AlgMorphism<F>& f) {
  const auto& s = *f.target();
  const F& k = s.field();
  const std::size_t n = s.dim();
  auto t = balanced_tensor_ring(f);
  EpimorphismVerdict<F> v;
  v.tensor_dim = t.dim();
  v.target_dim = n;
  v.multiplication_rank = rank(t.multiplication);
  v.epimorphism = v.multiplication_rank == v.tensor_dim;
  if (v.epimorphism) return v;
  const auto one = s.unit();
  for (std::size_t b = 0; b < n; ++b) {
    Vec<F> w(n * n, k.zero());
    for (std::size_t i = 0; i < n; ++i) {
      w[b * n + i] = k.add(w[b * n + i], one[i]);
      w[i * n + b] = k.sub(w[i * n + b], one[i]);
    }
    if (!is_zero_vec(k, t.space.project(w))) {
      v.witness = w;
      break;
    }
  }
  if (!v.witness) {
    auto ker = kernel(t.multiplication);
    v.witness = t.space.lift(ker.row(0));
  }
  v.witness_text = detail::tensor_text(s, *v.witness);
  return v;
}

}  // namespace protower

#pragma once

#include <cstddef>
#include <string>
#include <vector>

#include "protower/finalg/algebra.hpp"

// Structure-constant builders for the standard families, and the algebra
// maps between them used by the tower builders.

namespace protower {

template <ExactField F>
AlgebraPtr<F> field_algebra(const F& k) {
  return FinAlgebra<F>::make(k, 1, {k.one()}, {k.one()}, {"1"}, true, "k");
}

/// k[t]/(t^n), basis 1, t, ..., t^(n-1).
template <ExactField F>
AlgebraPtr<F> truncated_polynomial(const F& k, std::size_t n, const std::string& var = "t") {
  std::vector<typename F::value_type> c(n * n * n, k.zero());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? var : var + "^" + std::to_string(i)));
    for (std::size_t j = 0; i + j < n; ++j) c[(i * n + j) * n + i + j] = k.one();
  }
  return FinAlgebra<F>::make(k, n, std::move(c), unit_vec(k, n, 0), std::move(labels), true,
                             "k[" + var + "]/(" + var + "^" + std::to_string(n) + ")");
}

/// k[x]/(g) for monic g = x^n + lower[n-1] x^(n-1) + ... + lower[0].
template <ExactField F>
AlgebraPtr<F> polynomial_quotient(const F& k, const Vec<F>& lower, const std::string& name = {}) {
  const std::size_t n = lower.size();
  // x^m reduced mod g, for m < 2n - 1
  std::vector<Vec<F>> powers;
  for (std::size_t m = 0; m < n; ++m) powers.push_back(unit_vec(k, n, m));
  for (std::size_t m = n; m + 1 < 2 * n; ++m) {
    const auto& prev = powers.back();  // x^(m-1)
    Vec<F> next(n, k.zero());
    for (std::size_t i = 0; i + 1 < n; ++i) next[i + 1] = prev[i];
    const auto top = prev[n - 1];
    for (std::size_t i = 0; i < n; ++i) next[i] = k.sub(next[i], k.mul(top, lower[i]));
    powers.push_back(std::move(next));
  }
  std::vector<typename F::value_type> c(n * n * n, k.zero());
  std::vector<std::string> labels;
  for (std::size_t i = 0; i < n; ++i) {
    labels.push_back(i == 0 ? "1" : (i == 1 ? "x" : "x^" + std::to_string(i)));
    for (std::size_t j = 0; j < n; ++j)
      for (std::size_t l = 0; l < n; ++l) c[(i * n + j) * n + l] = powers[i + j][l];
  }
  return FinAlgebra<F>::make(k, n, std::move(c), unit_vec(k, n, 0), std::move(labels), true, name);
}

/// A x B with basis (a_i, 0) followed by (0, b_j).
template <ExactField F>
AlgebraPtr<F> product_algebra(const AlgebraPtr<F>& a, const AlgebraPtr<F>& b) {
  const F& k = a->field();
  const std::size_t da = a->dim(), db = b->dim(), n = da + db;
  std::vector<typename F::value_type> c(n * n * n, k.zero());
  for (std::size_t i = 0; i < da; ++i)
    for (std::size_t j = 0; j < da; ++j)
      for (std::size_t l = 0; l < da; ++l) c[(i * n + j) * n + l] = a->constant(i, j, l);
  for (std::size_t i = 0; i < db; ++i)
    for (std::size_t j = 0; j < db; ++j)
      for (std::size_t l = 0; l < db; ++l) c[((da + i) * n + da + j) * n + da + l] = b->constant(i, j, l);
  Vec<F> unit = a->unit();
  unit.insert(unit.end(), b->unit().begin(), b->unit().end());
  std::vector<std::string> labels;
  for (const auto& l : a->labels()) labels.push_back("(" + l + ",0)");
  for (const auto& l : b->labels()) labels.push_back("(0," + l + ")");
  return FinAlgebra<F>::make(k, n, std::move(c), std::move(unit), std::move(labels), false,
                             a->name() + " x " + b->name());
}

namespace detail {

// Matrix positions (r, s) used by M_n(A) (all) or T_n(A) (r <= s).
inline std::vector<std::pair<std::size_t, std::size_t>> matrix_positions(std::size_t n, bool triangular) {
  std::vector<std::pair<std::size_t, std::size_t>> pos;
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t s = triangular ? r : 0; s < n; ++s) pos.emplace_back(r, s);
  return pos;
}

template <ExactField F>
AlgebraPtr<F> matrix_like(const AlgebraPtr<F>& a, std::size_t n, bool triangular) {
  const F& k = a->field();
  const auto pos = matrix_positions(n, triangular);
  const std::size_t da = a->dim(), dim = pos.size() * da;
  auto index_of = [&](std::size_t r, std::size_t s) {
    for (std::size_t p = 0; p < pos.size(); ++p)
      if (pos[p].first == r && pos[p].second == s) return p;
    return pos.size();
  };
  std::vector<typename F::value_type> c(dim * dim * dim, k.zero());
  for (std::size_t p = 0; p < pos.size(); ++p)
    for (std::size_t q = 0; q < pos.size(); ++q) {
      if (pos[p].second != pos[q].first) continue;
      const std::size_t target = index_of(pos[p].first, pos[q].second);
      for (std::size_t i = 0; i < da; ++i)
        for (std::size_t j = 0; j < da; ++j)
          for (std::size_t l = 0; l < da; ++l)
            c[((p * da + i) * dim + q * da + j) * dim + target * da + l] = a->constant(i, j, l);
    }
  Vec<F> unit(dim, k.zero());
  for (std::size_t r = 0; r < n; ++r) {
    const std::size_t p = index_of(r, r);
    for (std::size_t i = 0; i < da; ++i) unit[p * da + i] = a->unit()[i];
  }
  std::vector<std::string> labels;
  for (const auto& [r, s] : pos)
    for (const auto& l : a->labels()) labels.push_back("E" + std::to_string(r + 1) + std::to_string(s + 1) + "*" + l);
  std::string name = (triangular ? "T" : "M") + std::to_string(n) + "(" + a->name() + ")";
  return FinAlgebra<F>::make(k, dim, std::move(c), std::move(unit), std::move(labels), false, std::move(name));
}

}  // namespace detail

/// M_n(A), basis E_rs * a_i ordered by (r, s) then i.
template <ExactField F>
AlgebraPtr<F> matrix_algebra(const AlgebraPtr<F>& a, std::size_t n) {
  return detail::matrix_like(a, n, false);
}

/// Upper triangular n x n matrices over A, basis E_rs * a_i with r <= s.
template <ExactField F>
AlgebraPtr<F> upper_triangular(const AlgebraPtr<F>& a, std::size_t n) {
  return detail::matrix_like(a, n, true);
}

// ---- maps ----------------------------------------------------------------

template <ExactField F>
AlgMorphism<F> unit_map(const AlgebraPtr<F>& k_alg, const AlgebraPtr<F>& a) {
  Matrix<F> m(a->field(), a->dim(), 1);
  m.set_column(0, a->unit());
  return AlgMorphism<F>::make(k_alg, a, std::move(m));
}

/// Projection A x B -> A (first) or -> B.
template <ExactField F>
AlgMorphism<F> product_projection(const AlgebraPtr<F>& prod, const AlgebraPtr<F>& factor, bool first,
                                  std::size_t first_dim) {
  Matrix<F> m(prod->field(), factor->dim(), prod->dim());
  const std::size_t offset = first ? 0 : first_dim;
  for (std::size_t i = 0; i < factor->dim(); ++i) m(i, offset + i) = prod->field().one();
  return AlgMorphism<F>::make(prod, factor, std::move(m));
}

/// f x g : A x B -> A' x B'
template <ExactField F>
AlgMorphism<F> product_of_maps(const AlgMorphism<F>& f, const AlgMorphism<F>& g, const AlgebraPtr<F>& src,
                               const AlgebraPtr<F>& tgt) {
  Matrix<F> m(src->field(), tgt->dim(), src->dim());
  const auto& fm = f.matrix();
  const auto& gm = g.matrix();
  for (std::size_t i = 0; i < fm.rows(); ++i)
    for (std::size_t j = 0; j < fm.cols(); ++j) m(i, j) = fm(i, j);
  for (std::size_t i = 0; i < gm.rows(); ++i)
    for (std::size_t j = 0; j < gm.cols(); ++j) m(fm.rows() + i, fm.cols() + j) = gm(i, j);
  return AlgMorphism<F>::make(src, tgt, std::move(m));
}

/// A -> A x A, a -> (a, a)
template <ExactField F>
AlgMorphism<F> diagonal_map(const AlgebraPtr<F>& a, const AlgebraPtr<F>& prod) {
  Matrix<F> m(a->field(), prod->dim(), a->dim());
  for (std::size_t i = 0; i < a->dim(); ++i) {
    m(i, i) = a->field().one();
    m(a->dim() + i, i) = a->field().one();
  }
  return AlgMorphism<F>::make(a, prod, std::move(m));
}

/// Map out of a power-basis algebra (k[t]/(t^n) or k[x]/(g)) sending the
/// generator to `image`.
template <ExactField F>
AlgMorphism<F> power_basis_map(const AlgebraPtr<F>& src, const AlgebraPtr<F>& tgt, const Vec<F>& image) {
  std::vector<Vec<F>> cols;
  Vec<F> p = tgt->unit();
  for (std::size_t i = 0; i < src->dim(); ++i) {
    cols.push_back(p);
    p = tgt->multiply(p, image);
  }
  return AlgMorphism<F>::make(src, tgt, Matrix<F>::from_columns(src->field(), tgt->dim(), cols));
}

/// k[t]/(t^n) -> k[t]/(t^m), t -> t (requires m <= n).
template <ExactField F>
AlgMorphism<F> truncation_map(const AlgebraPtr<F>& src, const AlgebraPtr<F>& tgt) {
  const auto& k = src->field();
  return power_basis_map(src, tgt, tgt->dim() > 1 ? unit_vec(k, tgt->dim(), 1) : zero_vec(k, tgt->dim()));
}

/// Applies f: A -> B entrywise, M_n(A) -> M_n(B) or T_n(A) -> T_n(B).
template <ExactField F>
AlgMorphism<F> entrywise_map(const AlgMorphism<F>& f, std::size_t n, bool triangular, const AlgebraPtr<F>& src,
                             const AlgebraPtr<F>& tgt) {
  const auto npos = detail::matrix_positions(n, triangular).size();
  const std::size_t da = f.source()->dim(), db = f.target()->dim();
  Matrix<F> m(src->field(), tgt->dim(), src->dim());
  for (std::size_t p = 0; p < npos; ++p)
    for (std::size_t i = 0; i < db; ++i)
      for (std::size_t j = 0; j < da; ++j) m(p * db + i, p * da + j) = f.matrix()(i, j);
  return AlgMorphism<F>::make(src, tgt, std::move(m));
}

/// T_n(A) -> M_n(A)
template <ExactField F>
AlgMorphism<F> triangular_inclusion(const AlgebraPtr<F>& tri, const AlgebraPtr<F>& full, std::size_t n,
                                    std::size_t base_dim) {
  const auto tpos = detail::matrix_positions(n, true);
  Matrix<F> m(tri->field(), full->dim(), tri->dim());
  for (std::size_t p = 0; p < tpos.size(); ++p) {
    const std::size_t q = tpos[p].first * n + tpos[p].second;
    for (std::size_t i = 0; i < base_dim; ++i) m(q * base_dim + i, p * base_dim + i) = tri->field().one();
  }
  return AlgMorphism<F>::make(tri, full, std::move(m));
}

/// T_2(A) -> A reading off the diagonal entry `corner` (0 or 1).
template <ExactField F>
AlgMorphism<F> triangular_corner(const AlgebraPtr<F>& tri, const AlgebraPtr<F>& base, std::size_t corner) {
  // positions of T_2: (0,0), (0,1), (1,1)
  const std::size_t p = corner == 0 ? 0 : 2;
  const std::size_t d = base->dim();
  Matrix<F> m(tri->field(), d, tri->dim());
  for (std::size_t i = 0; i < d; ++i) m(i, p * d + i) = tri->field().one();
  return AlgMorphism<F>::make(tri, base, std::move(m));
}

}  // namespace protower

#pragma once

// Brute-force reference computations over F_2, used only by tests.  Every
// routine here enumerates candidates directly and never calls the linear
// solvers it is used to check.

#include <cstdint>
#include <optional>
#include <vector>

#include "protower/protower.hpp"

namespace protower::oracle {

using K2 = PrimeField;

// Column-major bit encoding of a rows x cols matrix over F_2.
inline Matrix<K2> decode_matrix(const K2& k, std::size_t rows, std::size_t cols, std::uint64_t code) {
  Matrix<K2> m(k, rows, cols);
  for (std::size_t j = 0; j < cols; ++j)
    for (std::size_t i = 0; i < rows; ++i) m(i, j) = (code >> (j * rows + i)) & 1u;
  return m;
}

inline bool intertwines_all(const FinModule<K2>& m, const FinModule<K2>& n, const Matrix<K2>& f) {
  for (std::size_t i = 0; i < m.actions().size(); ++i)
    if (!(n.action(i) * f == f * m.action(i))) return false;
  return true;
}

/// Number of module maps M -> N, by enumerating every linear map.
inline std::uint64_t count_module_maps(const FinModule<K2>& m, const FinModule<K2>& n) {
  const std::size_t bits = m.dim() * n.dim();
  std::uint64_t count = 0;
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code)
    if (intertwines_all(m, n, decode_matrix(m.field(), n.dim(), m.dim(), code))) ++count;
  return count;
}

/// Does M (left or right) embed as a summand of A^dim M split by the cover
/// on its own basis?  Enumerates every linear sigma: M -> A^m.
inline bool projective_by_enumeration(const FinModule<K2>& m) {
  const auto& a = m.algebra();
  const std::size_t dm = m.dim(), da = a->dim();
  if (dm == 0) return true;
  auto cover = free_module(a, m.side(), dm);
  // pi(e_{i,r}) = rho(e_r) x_i
  Matrix<K2> pi(m.field(), dm, dm * da);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t r = 0; r < da; ++r) pi.set_column(i * da + r, m.action(r).column(i));
  const std::size_t bits = dm * dm * da;
  const auto id = Matrix<K2>::identity(m.field(), dm);
  for (std::uint64_t code = 0; code < (std::uint64_t{1} << bits); ++code) {
    auto sigma = decode_matrix(m.field(), dm * da, dm, code);
    if (pi * sigma == id && intertwines_all(m, cover, sigma)) return true;
  }
  return false;
}

/// dim of M (x)_A N using relations from every basis element of A and a
/// rank count by elimination over bit rows.
inline std::size_t tensor_dim_by_relations(const FinModule<K2>& m, const FinModule<K2>& n) {
  const std::size_t dm = m.dim(), dn = n.dim(), total = dm * dn;
  std::vector<std::vector<std::uint8_t>> rows;
  for (std::size_t e = 0; e < m.actions().size(); ++e)
    for (std::size_t i = 0; i < dm; ++i)
      for (std::size_t j = 0; j < dn; ++j) {
        std::vector<std::uint8_t> rel(total, 0);
        for (std::size_t a = 0; a < dm; ++a) rel[a * dn + j] ^= m.action(e)(a, i) & 1u;
        for (std::size_t b = 0; b < dn; ++b) rel[i * dn + b] ^= n.action(e)(b, j) & 1u;
        rows.push_back(rel);
      }
  std::size_t rank = 0;
  for (std::size_t c = 0; c < total && rank < rows.size(); ++c) {
    std::size_t p = rank;
    while (p < rows.size() && !rows[p][c]) ++p;
    if (p == rows.size()) continue;
    std::swap(rows[p], rows[rank]);
    for (std::size_t r = 0; r < rows.size(); ++r)
      if (r != rank && rows[r][c])
        for (std::size_t x = 0; x < total; ++x) rows[r][x] ^= rows[rank][x];
    ++rank;
  }
  return total - rank;
}

// Polynomials over F_2 of degree <= 8 as bit masks.  Minimal valuation of a
// nonzero q_0 over every (q_0, ..., q_{L-1}) clearing denominators, found
// by enumeration with pruning level by level.
struct Brute {
  std::size_t levels, degree;
  std::vector<std::uint32_t> q;
  std::optional<std::size_t> best;

  // negative part of sum_m x^(-2^m) q_{n-m} vanishes
  bool level_ok(std::size_t n) const {
    const std::int64_t top = std::int64_t{1} << n;
    for (std::int64_t e = 1; e <= top; ++e) {
      unsigned bit = 0;
      for (std::size_t m = 0; m <= n; ++m) {
        const std::int64_t i = (std::int64_t{1} << m) - e;
        if (i >= 0 && i <= static_cast<std::int64_t>(degree)) bit ^= (q[n - m] >> i) & 1u;
      }
      if (bit) return false;
    }
    return true;
  }

  void search(std::size_t n) {
    if (n == levels) {
      std::size_t v = 0;
      while (!((q[0] >> v) & 1u)) ++v;
      if (!best || v < *best) best = v;
      return;
    }
    for (std::uint32_t c = n == 0 ? 1 : 0; c < (1u << (degree + 1)); ++c) {
      q[n] = c;
      if (level_ok(n)) search(n + 1);
    }
  }
};

inline std::optional<std::size_t> series_min_valuation(std::size_t levels, std::size_t degree) {
  Brute b{levels, degree, std::vector<std::uint32_t>(levels, 0), std::nullopt};
  b.search(0);
  return b.best;
}

}  // namespace protower::oracle

#pragma once

#include <optional>
#include <vector>

#include "protower/finmod/hom.hpp"

namespace protower {

template <ExactField F>
struct FlatnessVerdict {
  bool flat = false;
  // sigma: M -> A^m with pi sigma = id, as a (m * dim A) x m matrix
  std::optional<Matrix<F>> splitting;
  // y with y C = 0 and y b != 0 for the splitting system C c = b
  std::optional<Vec<F>> certificate;
  std::size_t unknowns = 0;
  std::size_t equations = 0;
};

/// Finitely generated modules over a finite-dimensional algebra are flat
/// iff projective.  With pi: A^m -> M the cover on the module's own basis,
/// M is projective iff pi sigma = id has a solution sigma in
/// Hom_A(M, A)^m; the solve produces either sigma or a certificate.
template <ExactField F>
FlatnessVerdict<F> is_flat(const FinModule<F>& m) {
  const F& k = m.field();
  const auto& a = m.algebra();
  const std::size_t dm = m.dim(), da = a->dim();
  FlatnessVerdict<F> v;
  if (dm == 0) {
    v.flat = true;
    v.splitting = Matrix<F>(k, 0, 0);
    return v;
  }
  auto hom = hom_module(m, regular_module(a, m.side()));
  const std::size_t h = hom.dim();
  // unknown c(i, j) at index i * h + j: sigma_i = sum_j c(i, j) H_j
  // column x of pi sigma = sum_{i,j} c(i,j) rho(H_j(x)) e_i
  v.unknowns = dm * h;
  v.equations = dm * dm;
  Matrix<F> sys(k, dm * dm, dm * h);
  for (std::size_t j = 0; j < h; ++j) {
    const auto& hj = hom.basis()[j];
    for (std::size_t x = 0; x < dm; ++x) {
      const auto act = m.act(hj.column(x));
      for (std::size_t i = 0; i < dm; ++i)
        for (std::size_t r = 0; r < dm; ++r) sys(r * dm + x, i * h + j) = act(r, i);
    }
  }
  const Vec<F> rhs = Matrix<F>::identity(k, dm).flat();
  auto sol = solve(sys, rhs);
  if (!sol) {
    v.certificate = infeasibility_certificate(sys, rhs);
    return v;
  }
  v.flat = true;
  Matrix<F> sigma(k, dm * da, dm);
  for (std::size_t i = 0; i < dm; ++i)
    for (std::size_t j = 0; j < h; ++j) {
      const auto& c = (*sol)[i * h + j];
      if (k.is_zero(c)) continue;
      const auto& hj = hom.basis()[j];
      for (std::size_t r = 0; r < da; ++r)
        for (std::size_t x = 0; x < dm; ++x)
          sigma(i * da + r, x) = k.add(sigma(i * da + r, x), k.mul(c, hj(r, x)));
    }
  v.splitting = std::move(sigma);
  return v;
}

}  // namespace protower

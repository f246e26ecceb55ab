#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "protower/finmod/module.hpp"

namespace protower {

/// Seeded source of random test objects.  Only raw mt19937_64 output is
/// used (no std distributions), so sequences are identical across
/// standard libraries.
class Sampler {
 public:
  explicit Sampler(std::uint64_t seed) : rng_(seed) {}

  std::uint64_t next() { return rng_(); }
  std::size_t below(std::size_t n) { return n == 0 ? 0 : static_cast<std::size_t>(rng_() % n); }
  bool coin() { return (rng_() & 1u) != 0; }

  PrimeField::value_type element(const PrimeField& k) { return static_cast<std::uint32_t>(rng_() % k.modulus()); }
  RationalField::value_type element(const RationalField& q) {
    return q.from_int(static_cast<std::int64_t>(rng_() % 5) - 2);
  }

  template <ExactField F>
  Vec<F> vector(const F& k, std::size_t n) {
    Vec<F> v;
    v.reserve(n);
    for (std::size_t i = 0; i < n; ++i) v.push_back(element(k));
    return v;
  }

 private:
  std::mt19937_64 rng_;
};

/// A^rank modulo the submodule generated by `relations` random vectors.
template <ExactField F>
FinModule<F> random_quotient_module(const AlgebraPtr<F>& a, Side side, std::size_t rank, std::size_t relations,
                                    Sampler& rng) {
  auto free = free_module(a, side, rank);
  std::vector<Vec<F>> gens;
  for (std::size_t i = 0; i < relations; ++i) gens.push_back(rng.vector(a->field(), free.dim()));
  return quotient_module(free, generated_submodule(free, gens)).module;
}

/// A random cyclic-or-bicyclic module: rank 1 or 2, 0 to 2 relations.
template <ExactField F>
FinModule<F> random_module(const AlgebraPtr<F>& a, Side side, Sampler& rng, std::size_t max_rank = 2) {
  const std::size_t rank = 1 + rng.below(max_rank);
  const std::size_t relations = rng.below(3);
  return random_quotient_module(a, side, rank, relations, rng);
}

}  // namespace protower

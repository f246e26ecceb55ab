#pragma once

#include <cstdint>
#include <map>
#include <string>
#include <vector>

#include "protower/tower/builders.hpp"

namespace protower {

/// A named morphism family instantiated at a depth.
struct MorphismSpec {
  std::string family;
  std::size_t depth = 1;
  std::map<std::string, std::int64_t> params;

  std::int64_t param(const std::string& key, std::int64_t fallback) const {
    auto it = params.find(key);
    return it == params.end() ? fallback : it->second;
  }
  bool operator==(const MorphismSpec&) const = default;
};

struct ExpectedClasses {
  bool strongly_taut = false;
  bool proflat = false;
  bool proepi = false;
  bool operator==(const ExpectedClasses&) const = default;
};

inline const std::vector<std::string>& morphism_families() {
  static const std::vector<std::string> names{"identity",
                                              "product_projection",
                                              "levelwise_quotient",
                                              "half_speed",
                                              "unit_inclusion",
                                              "product_unit",
                                              "diagonal",
                                              "field_extension",
                                              "idempotent_projection",
                                              "triangular_identity",
                                              "triangular_inclusion",
                                              "triangular_corner_left",
                                              "triangular_corner_right"};
  return names;
}

/// Predicate values worked out by hand for each family.  Tests compare
/// them against the computed predicates and brute-force oracles.
inline ExpectedClasses expected_classes(const MorphismSpec& s) {
  const std::size_t d = s.depth;
  const auto& f = s.family;
  if (f == "levelwise_quotient") {
    const auto cap = static_cast<std::size_t>(s.param("cap", 1));
    return {true, cap >= d, true};
  }
  if (f == "half_speed") return {d <= 2, d == 1, true};
  if (f == "unit_inclusion") return {d == 1, d == 1, d == 1};
  if (f == "product_unit" || f == "diagonal" || f == "field_extension") return {true, true, false};
  if (f == "triangular_corner_right") return {true, false, true};
  return {true, true, true};
}

/// Largest depth keeping every algebra of the family at dimension <= max_dim.
inline std::size_t max_depth_for(const std::string& f, std::size_t max_dim) {
  if (f == "identity" || f == "levelwise_quotient" || f == "half_speed" || f == "unit_inclusion") return max_dim;
  if (f == "product_projection") return max_dim - 1;
  if (f == "product_unit") return max_dim - 2;
  if (f == "triangular_identity") return max_dim / 3;
  return 64;  // constant towers
}

template <ExactField F>
TowerMorphism<F> build_morphism(const F& k, const MorphismSpec& s) {
  const std::size_t d = s.depth;
  if (d < 1) throw ValidationError("build_morphism: depth must be at least 1");
  const auto& f = s.family;
  auto base = field_algebra(k);
  TowerMorphism<F> out = [&]() -> TowerMorphism<F> {
    if (f == "identity") return TowerMorphism<F>::identity(truncated_polynomial_tower(k, d));
    if (f == "product_projection") return product_projection_morphism(truncated_polynomial_tower(k, d), base);
    if (f == "levelwise_quotient") {
      const auto cap = s.param("cap", 1);
      if (cap < 1) throw ValidationError("levelwise_quotient: cap must be at least 1");
      return levelwise_quotient_morphism(k, d, static_cast<std::size_t>(cap));
    }
    if (f == "half_speed") return half_speed_morphism(k, d);
    if (f == "unit_inclusion") return unit_inclusion_morphism(truncated_polynomial_tower(k, d));
    if (f == "product_unit")
      return product_factor_morphism(truncated_polynomial_tower(k, d), unit_map(base, truncated_polynomial(k, 2, "u")));
    if (f == "diagonal") return constant_morphism(diagonal_map(base, product_algebra(base, base)), d);
    if (f == "field_extension") {
      // x^2 + x + 1; a field for p = 2 (F_4) and over Q
      auto ext = polynomial_quotient(k, Vec<F>{k.one(), k.one()}, "ext");
      return constant_morphism(unit_map(base, ext), d);
    }
    if (f == "idempotent_projection") {
      auto a = polynomial_quotient(k, Vec<F>{k.zero(), k.neg(k.one())}, "idem");  // x^2 = x
      return constant_morphism(power_basis_map(a, base, base->unit()), d);
    }
    if (f == "triangular_identity")
      return TowerMorphism<F>::identity(upper_triangular_tower(truncated_polynomial_tower(k, d)));
    auto tri = upper_triangular(base, 2);
    if (f == "triangular_inclusion") return constant_morphism(triangular_inclusion(tri, matrix_algebra(base, 2), 2, 1), d);
    if (f == "triangular_corner_left") return constant_morphism(triangular_corner(tri, base, 0), d);
    if (f == "triangular_corner_right") return constant_morphism(triangular_corner(tri, base, 1), d);
    throw ValidationError("unknown morphism family '" + f + "'");
  }();
  // every catalog source is k[[t]]-adic or discrete, where contramodules
  // over the limit embed fully faithfully into modules
  return out.with_source_flags({.forgetful_fully_faithful = true});
}

}  // namespace protower

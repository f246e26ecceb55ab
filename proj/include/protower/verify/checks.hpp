#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "protower/functors/functors.hpp"
#include "protower/verify/report.hpp"
#include "protower/verify/sampling.hpp"

namespace protower {

namespace detail {

inline std::string sample_name(const std::string& check, std::size_t i) { return check + "[" + std::to_string(i) + "]"; }

template <ExactField F>
bool all_identity(const LevelMaps<F>& maps) {
  for (const auto& m : maps)
    if (!(m == Matrix<F>::identity(m.field(), m.rows()))) return false;
  return true;
}

template <ExactField F>
std::int64_t identity_levels(const LevelMaps<F>& maps) {
  std::int64_t n = 0;
  for (const auto& m : maps) n += m.rows() == m.cols() && m == Matrix<F>::identity(m.field(), m.rows());
  return n;
}

/// S_m (x)_{R_m} S_m as a right S_m-module through the right factor.  It
/// has S_m as a summand, with complement zero exactly when f_m is a ring
/// epimorphism.
template <ExactField F>
FinModule<F> tensor_square_right(const TowerMorphism<F>& f, std::size_t m) {
  const auto& s = f.target().level(m);
  return tensor_over(target_as_right_module(f, m), target_as_left_module(f, m))
      .with_right_action(regular_module(s, Side::right));
}

/// The same through the left factor, as a left S_m-module.
template <ExactField F>
FinModule<F> tensor_square_left(const TowerMorphism<F>& f, std::size_t m) {
  const auto& s = f.target().level(m);
  return tensor_over(target_as_right_module(f, m), target_as_left_module(f, m))
      .with_left_action(regular_module(s, Side::left));
}

template <ExactField F>
LeftSystem<F> random_system(const RingTower<F>& t, Sampler& rng) {
  return make_left_system(t, random_module(t.top(), Side::left, rng));
}

}  // namespace detail

/// Restriction of discrete modules along f is fully faithful on a sample:
/// dim Hom_{S_m}(M, N) = dim Hom_{R_m}(M, N) for sampled right S_m-modules.
/// The first sample at each level is M = S_m, N = S_m (x)_{R_m} S_m, which
/// refutes full faithfulness whenever f_m is not an epimorphism.
template <ExactField F>
VerificationReport check_ff_discrete(const TowerMorphism<F>& f, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  rep.predicates = predicate_values(f);
  const bool taut = rep.predicates->strongly_taut;
  const bool proepi = rep.predicates->proepi;
  Sampler rng(seed);
  const std::size_t d = f.depth();
  bool ff = true;
  std::string witness;
  for (std::size_t i = 0; i < samples; ++i) {
    std::size_t m;
    FinModule<F> a, b;
    if (i < d) {
      m = i + 1;
      a = regular_module(f.target().level(m), Side::right);
      b = detail::tensor_square_right(f, m);
    } else {
      m = 1 + rng.below(d);
      a = random_module(f.target().level(m), Side::right, rng);
      b = random_module(f.target().level(m), Side::right, rng);
    }
    const auto hs = static_cast<std::int64_t>(hom_module(a, b).dim());
    const auto hr =
        static_cast<std::int64_t>(hom_module(restrict_module(f.map(m), a), restrict_module(f.map(m), b)).dim());
    const bool equal = hs == hr;
    if (!equal && ff) {
      ff = false;
      witness = "level " + std::to_string(m) + ": " + std::to_string(hr - hs) + " R-linear maps beyond the S-linear ones";
    }
    rep.add({detail::sample_name("ff_discrete.hom_dims", i), "dim Hom_S = dim Hom_R", hs, hr,
             equal ? Outcome::pass : Outcome::reported, "level " + std::to_string(m)});
  }
  // f_m is an epimorphism iff restriction along it is fully faithful, at
  // every level separately, so the cross-check stands without tautness.
  const bool agree = ff == proepi;
  CheckRecord v{"ff_discrete.verdict", "fully faithful on sample == proepimorphism", ff, proepi,
                agree ? (ff ? Outcome::pass : Outcome::negative_control) : Outcome::contradiction,
                ff ? "fully faithful on sample" : witness};
  if (!taut) v.detail += "; hypothesis not met: not strongly right taut";
  rep.add(v);
  if (!agree) rep.witnesses.push_back("ff_discrete: " + (ff ? std::string("no witness found") : witness));
  return rep;
}

/// Restriction of systems along f is fully faithful on a sample:
/// dim Hom_S(P, Q) = dim Hom_R(f_# P, f_# Q).  Refused unless f is strongly
/// right taut.
template <ExactField F>
VerificationReport check_ff_separated(const TowerMorphism<F>& f, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  rep.predicates = predicate_values(f);
  if (!rep.predicates->strongly_taut) {
    rep.add({"ff_separated", "requires strongly right taut", 0, 1, Outcome::refused,
             "not strongly right taut at level " + std::to_string(*rep.predicates->taut_failing_level)});
    return rep;
  }
  const bool proepi = rep.predicates->proepi;
  const bool proflat = rep.predicates->proflat;
  Sampler rng(seed);
  bool ff = true;
  std::size_t flat_pairs = 0, flat_equal = 0;
  std::string witness;
  for (std::size_t i = 0; i < samples; ++i) {
    LeftSystem<F> p = i == 0 ? free_system(f.target(), 1) : detail::random_system(f.target(), rng);
    LeftSystem<F> q = i == 0 ? make_left_system(f.target(), detail::tensor_square_left(f, f.depth()))
                             : detail::random_system(f.target(), rng);
    const auto hs = static_cast<std::int64_t>(system_hom(p, q).dim());
    const auto hr = static_cast<std::int64_t>(system_hom(restrict_system(f, p), restrict_system(f, q)).dim());
    const bool equal = hs == hr;
    const bool flat = is_flat_system(p).holds && is_flat_system(q).holds;
    flat_pairs += flat;
    flat_equal += flat && equal;
    if (!equal && ff) {
      ff = false;
      witness = std::to_string(hr - hs) + " R-linear system maps beyond the S-linear ones (sample " +
                std::to_string(i) + ")";
    }
    rep.add({detail::sample_name("ff_separated.hom_dims", i), "dim Hom_S = dim Hom_R", hs, hr,
             equal ? Outcome::pass : Outcome::reported, flat ? "flat pair" : ""});
  }
  const bool agree = ff == proepi;
  rep.add({"ff_separated.verdict", "fully faithful on sample == proepimorphism", ff, proepi,
           agree ? (ff ? Outcome::pass : Outcome::negative_control) : Outcome::contradiction,
           ff ? "fully faithful on sample" : witness});
  if (!agree) rep.witnesses.push_back("ff_separated: " + (ff ? std::string("no witness found") : witness));
  if (proflat && proepi) {
    rep.expect("ff_separated.flat_subcategory", "flat pairs with equal Hom dims = flat pairs",
               static_cast<std::int64_t>(flat_equal), static_cast<std::int64_t>(flat_pairs), flat_equal == flat_pairs);
  }
  return rep;
}

/// The four adjunctions, their triangle identities and the counit formula
/// on sampled objects.  Without strong tautness the functors needing it
/// must refuse, which is recorded as a negative control.
template <ExactField F>
VerificationReport check_adjunction_suite(const TowerMorphism<F>& f, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  rep.predicates = predicate_values(f);
  const bool taut = rep.predicates->strongly_taut;
  const std::size_t d = f.depth();
  Sampler rng(seed);
  auto as_int = [](std::size_t x) { return static_cast<std::int64_t>(x); };
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t m = 1 + rng.below(d);
    auto dm = DiscreteModule<F>::make(f.source(), m, random_module(f.source().level(m), Side::right, rng));
    auto dn = DiscreteModule<F>::make(f.target(), m, random_module(f.target().level(m), Side::right, rng));
    auto p = detail::random_system(f.source(), rng);
    auto q = detail::random_system(f.target(), rng);
    auto rn = restrict_discrete(f, dn);

    // (i) extension -| restriction, discrete
    if (taut) {
      auto ext = extend_discrete(f, dm);
      rep.expect(detail::sample_name("adjunction.extend_restrict", i), "dim Hom_S(f^* M, N) = dim Hom_R(M, f_* N)",
                 as_int(hom_module(ext.module(), dn.module()).dim()), as_int(hom_module(dm.module(), rn.module()).dim()),
                 hom_module(ext.module(), dn.module()).dim() == hom_module(dm.module(), rn.module()).dim());
    } else {
      bool refused = false;
      try {
        extend_discrete(f, dm);
      } catch (const PreconditionError&) {
        refused = true;
      }
      rep.add({detail::sample_name("adjunction.extend_restrict", i), "refuses without tautness", refused, 1,
               refused ? Outcome::negative_control : Outcome::contradiction, ""});
    }

    // (ii) restriction -| coextension, discrete
    {
      auto co = coextend_discrete(f, dm);
      const auto l = hom_module(rn.module(), dm.module()).dim();
      const auto r = hom_module(dn.module(), co.module()).dim();
      if (taut) {
        rep.expect(detail::sample_name("adjunction.restrict_coextend_discrete", i),
                   "dim Hom_R(f_* N, M) = dim Hom_S(N, f^! M)", as_int(l), as_int(r), l == r);
      } else {
        rep.add({detail::sample_name("adjunction.restrict_coextend_discrete", i),
                 "dim Hom_R(f_* N, M) vs dim Hom_S(N, f^! M)", as_int(l), as_int(r), Outcome::reported,
                 "not strongly right taut; levelwise Hom reported only"});
      }
    }

    if (!taut) {
      bool refused_r = false, refused_c = false;
      try {
        restrict_system(f, q);
      } catch (const SystemAxiomError&) {
        refused_r = true;
      }
      try {
        coextend_system(f, p);
      } catch (const SystemAxiomError&) {
        refused_c = true;
      }
      // A particular Q may still restrict to a system; coextension must
      // always refuse.
      rep.add({detail::sample_name("adjunction.restrict_system", i), "refusal observed", refused_r, 1,
               refused_r ? Outcome::negative_control : Outcome::reported, ""});
      rep.add({detail::sample_name("adjunction.coextend_system", i), "refuses without tautness", refused_c, 1,
               refused_c ? Outcome::negative_control : Outcome::contradiction, ""});
      continue;
    }

    // (iii) contraextension -| restriction, systems
    auto rq = restrict_system(f, q);
    auto ext = contraextend(f, p);
    {
      const auto l = system_hom(ext.system, q).dim();
      const auto r = system_hom(p, rq).dim();
      rep.expect(detail::sample_name("adjunction.contraextend_restrict", i),
                 "dim Hom_S(f^# P, Q) = dim Hom_R(P, f_# Q)", as_int(l), as_int(r), l == r);
      auto eta = contraextension_unit(f, p, ext);
      auto ext2 = contraextend(f, restrict_system(f, ext.system));
      auto t1 = contraextension_counit(f, ext.system, ext2);
      auto lifted = contraextend_map(ext, ext2, eta);
      LevelMaps<F> c1;
      for (std::size_t n = 0; n < d; ++n) c1.push_back(t1[n] * lifted[n]);
      rep.expect(detail::sample_name("triangle.contraextend_left", i), "eps_{f^# P} f^#(eta_P) = id",
                 detail::identity_levels(c1), as_int(d), detail::all_identity(c1));
      auto extq = contraextend(f, rq);
      auto eps_q = contraextension_counit(f, q, extq);
      auto eta_rq = contraextension_unit(f, rq, extq);
      LevelMaps<F> c2;
      for (std::size_t n = 0; n < d; ++n) c2.push_back(eps_q[n] * eta_rq[n]);
      rep.expect(detail::sample_name("triangle.contraextend_right", i), "f_#(eps_Q) eta_{f_# Q} = id",
                 detail::identity_levels(c2), as_int(d), detail::all_identity(c2));
    }

    // (iv) restriction -| coextension, systems
    {
      auto c = coextend_system(f, p);
      const auto l = system_hom(rq, p).dim();
      const auto r = system_hom(q, c.system).dim();
      rep.expect(detail::sample_name("adjunction.restrict_coextend", i), "dim Hom_R(f_# Q, P) = dim Hom_S(Q, f^! P)",
                 as_int(l), as_int(r), l == r);
      auto eps = coextension_counit(f, c);
      const bool same = eps == coextension_eval_at_image_of_one(f, c);
      rep.expect(detail::sample_name("counit.evaluation_at_image_of_one", i), "eps_P = ev_{f(1)}", same, 1, same);
      auto c2 = coextend_system(f, restrict_system(f, c.system));
      auto eta_c = coextension_unit(f, c.system, c2);
      auto lifted = coextend_map(c2, c, eps);
      LevelMaps<F> t1;
      for (std::size_t n = 0; n < d; ++n) t1.push_back(lifted[n] * eta_c[n]);
      rep.expect(detail::sample_name("triangle.coextend_left", i), "f^!(eps_P) eta_{f^! P} = id",
                 detail::identity_levels(t1), as_int(d), detail::all_identity(t1));
      auto cq = coextend_system(f, rq);
      auto eta_q = coextension_unit(f, q, cq);
      auto eps_rq = coextension_counit(f, cq);
      LevelMaps<F> t2;
      for (std::size_t n = 0; n < d; ++n) t2.push_back(eps_rq[n] * eta_q[n]);
      rep.expect(detail::sample_name("triangle.coextend_right", i), "eps_{f_# Q} f_#(eta_Q) = id",
                 detail::identity_levels(t2), as_int(d), detail::all_identity(t2));
    }
  }
  return rep;
}

/// dim f_*(N) (x)_R P = dim N (x)_S f^# P on sampled pairs.
template <ExactField F>
VerificationReport check_contratensor_identity(const TowerMorphism<F>& f, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  Sampler rng(seed);
  for (std::size_t i = 0; i < samples; ++i) {
    const std::size_t m = 1 + rng.below(f.depth());
    auto n = DiscreteModule<F>::make(f.target(), m, random_module(f.target().level(m), Side::right, rng));
    auto p = detail::random_system(f.source(), rng);
    const auto l = contratensor(restrict_discrete(f, n), p).dim();
    const auto r = contratensor(n, contraextend(f, p).system).dim();
    rep.expect(detail::sample_name("contratensor.base_change", i), "dim f_* N (x)_R P = dim N (x)_S f^# P",
               static_cast<std::int64_t>(l), static_cast<std::int64_t>(r), l == r, "level " + std::to_string(m));
  }
  return rep;
}

/// Restriction preserves flatness of sampled flat S-systems iff f is left
/// proflat.  The first sample is the free system of rank 1, whose
/// restriction is S itself.
template <ExactField F>
VerificationReport check_flat_preservation(const TowerMorphism<F>& f, std::size_t samples, std::uint64_t seed) {
  VerificationReport rep;
  rep.seed = seed;
  rep.predicates = predicate_values(f);
  if (!rep.predicates->strongly_taut) {
    rep.add({"flat_preservation", "requires strongly right taut", 0, 1, Outcome::refused,
             "not strongly right taut at level " + std::to_string(*rep.predicates->taut_failing_level)});
    return rep;
  }
  const bool proflat = rep.predicates->proflat;
  Sampler rng(seed);
  std::vector<LeftSystem<F>> flat;
  flat.push_back(free_system(f.target(), 1));
  if (samples > 1) flat.push_back(zero_system(f.target()));
  for (std::size_t attempt = 0; flat.size() < samples && attempt < 10 * samples; ++attempt) {
    auto cand = detail::random_system(f.target(), rng);
    if (is_flat_system(cand).holds) flat.push_back(std::move(cand));
  }
  if (flat.size() < samples)
    for (std::size_t r = 2; flat.size() < samples; ++r) flat.push_back(free_system(f.target(), 1 + r % 2));
  while (flat.size() > samples) flat.pop_back();
  bool preserved = true;
  std::string witness;
  for (std::size_t i = 0; i < flat.size(); ++i) {
    auto v = is_flat_system(restrict_system(f, flat[i]));
    if (!v.holds && preserved) {
      preserved = false;
      witness = "sample " + std::to_string(i) + ": " + v.detail + " over R";
    }
    rep.add({detail::sample_name("flat_preservation.sample", i), "restriction flat", v.holds, 1,
             v.holds ? Outcome::pass : (proflat ? Outcome::contradiction : Outcome::reported), v.detail});
    if (!v.holds && proflat) rep.witnesses.push_back("flat_preservation: " + witness);
  }
  const bool agree = preserved == proflat;
  rep.add({"flat_preservation.verdict", "preserves flatness on sample == left proflat", preserved, proflat,
           agree ? (preserved ? Outcome::pass : Outcome::negative_control) : Outcome::contradiction,
           preserved ? "all restrictions flat" : witness});
  if (!agree && preserved) rep.witnesses.push_back("flat_preservation: no non-flat restriction found");
  return rep;
}

}  // namespace protower

#pragma once

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>
#include <string>
#include <vector>

#include "protower/io/json.hpp"
#include "protower/verify/checks.hpp"
#include "protower/verify/descent.hpp"

namespace protower::io {

inline const std::vector<std::string>& check_names() {
  static const std::vector<std::string> names{"predicates",        "ff_discrete", "ff_separated",
                                              "adjunction",        "contratensor", "flat_preservation",
                                              "descent",           "descent_criterion"};
  return names;
}

struct Scenario {
  std::string id;
  std::uint32_t characteristic = 2;
  json morphism;  // builder form or explicit towers, refs already resolved
  std::vector<std::string> checks;
  std::uint64_t seed = 1;
  std::size_t samples = 20;
  std::optional<std::size_t> depth;
  std::optional<ExpectedClasses> expected;
};

inline std::string read_file(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  if (!in) throw ParseError("cannot read " + p.string());
  std::ostringstream s;
  s << in.rdbuf();
  return s.str();
}

inline void write_file(const std::filesystem::path& p, const std::string& text) {
  if (p.has_parent_path()) std::filesystem::create_directories(p.parent_path());
  std::ofstream out(p, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + p.string());
  out << text;
}

inline json to_json(const ExpectedClasses& e) {
  return {{"strongly_taut", e.strongly_taut}, {"proflat", e.proflat}, {"proepi", e.proepi}};
}

inline json to_json(const Scenario& s) {
  json j{{"id", s.id},         {"field", {{"char", s.characteristic}}}, {"morphism", s.morphism},
         {"checks", s.checks}, {"seed", s.seed},                        {"samples", s.samples}};
  if (s.depth) j["depth"] = *s.depth;
  if (s.expected) j["expected"] = to_json(*s.expected);
  return j;
}

/// Parses a scenario document.  A morphism {"ref": path} is loaded relative
/// to `base`.  Field and depth must agree with the morphism.
inline Scenario scenario_from_json(const json& j, const std::filesystem::path& base = {}) {
  Scenario s;
  s.id = get<std::string>(j, "id");
  s.characteristic = field_char(at(j, "field"));
  s.morphism = at(j, "morphism");
  if (s.morphism.contains("ref")) {
    const auto path = base / get<std::string>(s.morphism, "ref");
    s.morphism = parse_text(read_file(path), path.string());
  }
  if (s.morphism.contains("field") && field_char(at(s.morphism, "field")) != s.characteristic)
    throw ParseError("scenario " + s.id + ": morphism field differs from scenario field");
  s.checks = get<std::vector<std::string>>(j, "checks");
  for (const auto& c : s.checks)
    if (std::find(check_names().begin(), check_names().end(), c) == check_names().end())
      throw ParseError("scenario " + s.id + ": unknown check '" + c + "'");
  if (j.contains("seed")) s.seed = get<std::uint64_t>(j, "seed");
  if (j.contains("samples")) s.samples = get<std::size_t>(j, "samples");
  if (j.contains("depth")) s.depth = get<std::size_t>(j, "depth");
  if (s.depth && s.morphism.contains("builder")) {
    auto& b = s.morphism["builder"];
    if (!b.contains("depth")) b["depth"] = *s.depth;
    if (get<std::size_t>(b, "depth") != *s.depth) throw ParseError("scenario " + s.id + ": depth differs from builder");
  }
  if (j.contains("expected")) {
    const auto& e = at(j, "expected");
    s.expected = ExpectedClasses{get<bool>(e, "strongly_taut"), get<bool>(e, "proflat"), get<bool>(e, "proepi")};
  }
  return s;
}

namespace detail {

template <ExactField F>
VerificationReport run_check(const std::string& name, const TowerMorphism<F>& f, const Scenario& s) {
  if (name == "ff_discrete") return check_ff_discrete(f, s.samples, s.seed);
  if (name == "ff_separated") return check_ff_separated(f, s.samples, s.seed);
  if (name == "adjunction") return check_adjunction_suite(f, s.samples, s.seed);
  if (name == "contratensor") return check_contratensor_identity(f, s.samples, s.seed);
  if (name == "flat_preservation") return check_flat_preservation(f, s.samples, s.seed);
  if (name == "descent") return check_descent_round_trip(f, s.samples, s.seed);
  if (name == "descent_criterion") {
    if constexpr (std::is_same_v<F, PrimeField>) {
      return check_descent_criterion(f, 3);
    } else {
      VerificationReport rep;
      rep.add({"descent_criterion", "enumeration of S-actions", 0, 1, Outcome::refused,
               "exhaustive enumeration needs a finite field"});
      return rep;
    }
  }
  VerificationReport rep;
  const auto p = predicate_values(f);
  rep.predicates = p;
  if (s.expected) {
    rep.expect("predicates.strongly_taut", "computed = expected", p.strongly_taut, s.expected->strongly_taut,
               p.strongly_taut == s.expected->strongly_taut);
    rep.expect("predicates.proflat", "computed = expected", p.proflat, s.expected->proflat,
               p.proflat == s.expected->proflat);
    rep.expect("predicates.proepi", "computed = expected", p.proepi, s.expected->proepi,
               p.proepi == s.expected->proepi);
  }
  return rep;
}

}  // namespace detail

/// Builds the morphism and runs every declared check in order.
template <ExactField F>
VerificationReport run_scenario_with(const F& k, const Scenario& s) {
  TowerMorphism<F> f = [&] {
    try {
      return morphism_from_json(k, s.morphism);
    } catch (const ValidationError& e) {
      throw ParseError("scenario " + s.id + ": " + e.what());
    }
  }();
  if (s.depth && f.depth() != *s.depth) throw ParseError("scenario " + s.id + ": depth differs from morphism");
  VerificationReport rep;
  rep.scenario_id = s.id;
  rep.seed = s.seed;
  rep.predicates = predicate_values(f);
  for (const auto& c : s.checks) rep.merge(detail::run_check(c, f, s));
  return rep;
}

inline VerificationReport run_scenario(const Scenario& s) {
  return with_field(s.characteristic, [&](const auto& k) { return run_scenario_with(k, s); });
}

struct ScenarioRun {
  std::optional<VerificationReport> report;
  int exit_code = 0;
  std::string error;
};

/// Loads and runs a scenario file.  Exit 1 on unreadable or invalid input.
inline ScenarioRun run_scenario_file(const std::filesystem::path& path, std::optional<std::uint64_t> seed = {},
                                     std::optional<std::size_t> samples = {}) {
  ScenarioRun out;
  try {
    auto s = scenario_from_json(parse_text(read_file(path), path.string()), path.parent_path());
    if (seed) s.seed = *seed;
    if (samples) s.samples = *samples;
    out.report = run_scenario(s);
    out.exit_code = out.report->exit_code();
  } catch (const ParseError& e) {
    out.exit_code = 1;
    out.error = e.what();
  }
  return out;
}

// ---- corpus --------------------------------------------------------------

struct CorpusSpec {
  std::vector<std::string> families;
  std::size_t count = 0;
  std::size_t max_dim = 6;
  std::size_t max_depth = 5;
  std::vector<std::uint32_t> chars{2, 2, 3, 5, 0};
  std::size_t samples = 20;

  /// Every commutative family, 40 instances.
  static CorpusSpec defaults(bool triangular = false) {
    CorpusSpec c;
    for (const auto& f : morphism_families())
      if (triangular || f.rfind("triangular", 0) != 0) c.families.push_back(f);
    c.count = 40;
    return c;
  }
};

/// Checks whose hypotheses are met by the expected classes; the rest only
/// add refusals.
inline std::vector<std::string> applicable_checks(const ExpectedClasses& e, std::uint32_t ch) {
  std::vector<std::string> out{"predicates", "ff_discrete", "adjunction", "contratensor"};
  if (e.strongly_taut) {
    out.emplace_back("ff_separated");
    out.emplace_back("flat_preservation");
  }
  if (e.proflat && e.proepi) {
    out.emplace_back("descent");
    if (ch == 2) out.emplace_back("descent_criterion");
  }
  return out;
}

/// Families are assigned round robin; depth, field and parameters are
/// drawn from the seed.
inline std::vector<Scenario> corpus_specs(const CorpusSpec& spec, std::uint64_t seed) {
  std::vector<Scenario> out;
  if (spec.families.empty() || spec.chars.empty()) return out;
  Sampler rng(seed);
  for (std::size_t i = 0; i < spec.count; ++i) {
    const auto& fam = spec.families[i % spec.families.size()];
    const std::size_t hi = std::max<std::size_t>(1, std::min(spec.max_depth, max_depth_for(fam, spec.max_dim)));
    const std::size_t lo = std::min<std::size_t>(hi, fam == "half_speed" ? 3 : 2);
    MorphismSpec m{fam, lo + rng.below(hi - lo + 1), {}};
    if (fam == "levelwise_quotient") m.params["cap"] = static_cast<std::int64_t>(1 + rng.below(m.depth));
    Scenario s;
    s.characteristic = spec.chars[rng.below(spec.chars.size())];
    char buf[16];
    std::snprintf(buf, sizeof buf, "%03zu", i);
    s.id = std::string(buf) + "_" + fam;
    s.morphism = {{"builder", to_json(m)}};
    s.seed = rng.next() % 1000000;
    s.samples = spec.samples;
    s.depth = m.depth;
    s.expected = expected_classes(m);
    s.checks = applicable_checks(*s.expected, s.characteristic);
    out.push_back(std::move(s));
  }
  return out;
}

/// 64-bit FNV-1a.
inline std::uint64_t fnv1a(const std::string& bytes) {
  std::uint64_t h = 0xcbf29ce484222325ull;
  for (unsigned char c : bytes) {
    h ^= c;
    h *= 0x100000001b3ull;
  }
  return h;
}

inline std::string hex64(std::uint64_t v) {
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(v));
  return buf;
}

/// Writes one scenario file per instance plus manifest.json with hashes.
/// Returns the written file names.
inline std::vector<std::string> generate_corpus(const CorpusSpec& spec, std::uint64_t seed,
                                                const std::filesystem::path& out_dir) {
  std::vector<std::string> names;
  json files = json::array();
  for (const auto& s : corpus_specs(spec, seed)) {
    const auto name = s.id + ".json";
    const auto text = dump(to_json(s));
    write_file(out_dir / name, text);
    files.push_back({{"file", name}, {"fnv1a", hex64(fnv1a(text))}});
    names.push_back(name);
  }
  write_file(out_dir / "manifest.json", dump({{"seed", seed}, {"count", names.size()}, {"files", files}}));
  return names;
}

}  // namespace protower::io

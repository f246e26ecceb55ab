#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "protower/tower/predicates.hpp"

namespace protower {

enum class Outcome {
  pass,
  contradiction,     // a theorem's conclusion failed on an instance meeting its hypothesis
  refused,           // precondition not met, check not run
  negative_control,  // hypothesis violated and the expected failure or refusal was observed
  reported,          // measured only; no theorem applies
};

inline std::string to_string(Outcome o) {
  switch (o) {
    case Outcome::pass: return "pass";
    case Outcome::contradiction: return "contradiction";
    case Outcome::refused: return "refused";
    case Outcome::negative_control: return "negative_control";
    default: return "reported";
  }
}

inline std::optional<Outcome> parse_outcome(const std::string& s) {
  for (auto o : {Outcome::pass, Outcome::contradiction, Outcome::refused, Outcome::negative_control, Outcome::reported})
    if (to_string(o) == s) return o;
  return std::nullopt;
}

struct CheckRecord {
  std::string name;
  std::string relation;
  std::int64_t left = 0;
  std::int64_t right = 0;
  Outcome outcome = Outcome::pass;
  std::string detail;

  bool operator==(const CheckRecord&) const = default;
};

struct PredicateValues {
  bool strongly_taut = false;
  bool proflat = false;
  bool proepi = false;
  std::size_t certified_depth = 0;
  std::optional<std::size_t> taut_failing_level;
  std::optional<std::size_t> proflat_failing_level;
  std::optional<std::size_t> proepi_failing_level;

  bool operator==(const PredicateValues&) const = default;
};

template <ExactField F>
PredicateValues predicate_values(const TowerMorphism<F>& f) {
  auto t = is_strongly_right_taut(f);
  auto l = is_left_proflat(f);
  auto e = is_proepimorphism(f);
  return {t.holds, l.holds, e.holds, f.depth(), t.failing_level, l.failing_level, e.failing_level};
}

struct VerificationReport {
  std::string scenario_id;
  std::uint64_t seed = 0;
  std::optional<PredicateValues> predicates;
  std::vector<CheckRecord> checks;
  std::vector<std::string> witnesses;

  /// Record a comparison that must hold.
  void expect(std::string name, std::string relation, std::int64_t left, std::int64_t right, bool ok,
              std::string detail = {}) {
    checks.push_back({std::move(name), std::move(relation), left, right, ok ? Outcome::pass : Outcome::contradiction,
                      std::move(detail)});
    if (!ok) witnesses.push_back(checks.back().name + ": " + std::to_string(left) + " vs " + std::to_string(right) +
                                 (checks.back().detail.empty() ? "" : " (" + checks.back().detail + ")"));
  }
  void add(CheckRecord r) { checks.push_back(std::move(r)); }
  void merge(const VerificationReport& o) {
    checks.insert(checks.end(), o.checks.begin(), o.checks.end());
    witnesses.insert(witnesses.end(), o.witnesses.begin(), o.witnesses.end());
    if (!predicates) predicates = o.predicates;
  }

  std::size_t count(Outcome o) const {
    std::size_t n = 0;
    for (const auto& c : checks) n += c.outcome == o;
    return n;
  }
  bool all_pass() const { return count(Outcome::contradiction) == 0 && count(Outcome::refused) == 0; }

  /// 0 all pass, 2 contradiction found, 3 precondition refusals only.
  int exit_code() const {
    if (count(Outcome::contradiction) > 0) return 2;
    if (count(Outcome::refused) > 0) return 3;
    return 0;
  }

  bool operator==(const VerificationReport&) const = default;
};

}  // namespace protower

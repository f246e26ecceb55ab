#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include <nlohmann/json.hpp>

#include "protower/functors/functors.hpp"
#include "protower/tower/catalog.hpp"
#include "protower/verify/report.hpp"

namespace protower::io {

using json = nlohmann::json;

/// Malformed or inconsistent input document.
class ParseError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

inline json parse_text(const std::string& text, const std::string& where = "input") {
  try {
    return json::parse(text);
  } catch (const json::parse_error& e) {
    throw ParseError(where + ": " + e.what());
  }
}

template <class T>
T get(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError("missing field '" + key + "'");
  try {
    return j.at(key).get<T>();
  } catch (const json::exception& e) {
    throw ParseError("field '" + key + "': " + e.what());
  }
}

inline const json& at(const json& j, const std::string& key) {
  if (!j.is_object() || !j.contains(key)) throw ParseError("missing field '" + key + "'");
  return j.at(key);
}

// ---- fields and matrices -------------------------------------------------

template <ExactField F>
json field_to_json(const F& k) {
  return {{"char", k.characteristic()}};
}

inline std::uint32_t field_char(const json& j) { return get<std::uint32_t>(j, "char"); }

/// Calls fn with the field named by a {"char": p} object; 0 is Q.
template <class Fn>
decltype(auto) with_field(std::uint32_t ch, Fn&& fn) {
  if (ch == 0) return fn(RationalField{});
  try {
    return fn(PrimeField{ch});
  } catch (const std::invalid_argument& e) {
    throw ParseError(e.what());
  }
}

template <ExactField F>
json vec_to_json(const F& k, const Vec<F>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back(k.to_string(x));
  return a;
}

template <ExactField F>
Vec<F> vec_from_json(const F& k, const json& j) {
  if (!j.is_array()) throw ParseError("expected an array of field elements");
  Vec<F> v;
  for (const auto& x : j) {
    if (!x.is_string()) throw ParseError("field elements are decimal strings");
    try {
      v.push_back(k.parse(x.get<std::string>()));
    } catch (const std::invalid_argument& e) {
      throw ParseError(e.what());
    }
  }
  return v;
}

template <ExactField F>
json to_json(const Matrix<F>& m) {
  json rows = json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) rows.push_back(vec_to_json(m.field(), m.row(i)));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", rows}};
}

template <ExactField F>
Matrix<F> matrix_from_json(const F& k, const json& j) {
  const auto r = get<std::size_t>(j, "rows");
  const auto c = get<std::size_t>(j, "cols");
  const auto& data = at(j, "data");
  if (!data.is_array() || data.size() != r) throw ParseError("matrix: expected " + std::to_string(r) + " rows");
  Matrix<F> m(k, r, c);
  for (std::size_t i = 0; i < r; ++i) {
    auto row = vec_from_json(k, data[i]);
    if (row.size() != c) throw ParseError("matrix: row " + std::to_string(i) + " has wrong length");
    for (std::size_t t = 0; t < c; ++t) m(i, t) = row[t];
  }
  return m;
}

// ---- algebras, towers, morphisms -----------------------------------------

template <ExactField F>
json to_json(const FinAlgebra<F>& a) {
  const auto& k = a.field();
  json c = json::array();
  for (const auto& x : a.constants()) c.push_back(k.to_string(x));
  return {{"name", a.name()}, {"dim", a.dim()}, {"labels", a.labels()}, {"unit", vec_to_json(k, a.unit())},
          {"constants", c}};
}

template <ExactField F>
AlgebraPtr<F> algebra_from_json(const F& k, const json& j) {
  const auto dim = get<std::size_t>(j, "dim");
  auto c = vec_from_json(k, at(j, "constants"));
  auto unit = vec_from_json(k, at(j, "unit"));
  std::vector<std::string> labels = j.contains("labels") ? get<std::vector<std::string>>(j, "labels")
                                                         : std::vector<std::string>{};
  std::string name = j.contains("name") ? get<std::string>(j, "name") : std::string{};
  return FinAlgebra<F>::make(k, dim, std::move(c), std::move(unit), std::move(labels), false, std::move(name));
}

template <ExactField F>
json to_json(const RingTower<F>& t) {
  json levels = json::array(), trans = json::array();
  for (const auto& a : t.levels()) levels.push_back(to_json(*a));
  for (const auto& m : t.transitions()) trans.push_back(to_json(m.matrix()));
  return {{"field", field_to_json(t.field())},
          {"levels", levels},
          {"transitions", trans},
          {"flags", {{"forgetful_fully_faithful", t.flags().forgetful_fully_faithful}}},
          {"builder_tag", t.builder_tag()}};
}

template <ExactField F>
RingTower<F> tower_from_json(const F& k, const json& j) {
  if (j.contains("field") && field_char(at(j, "field")) != k.characteristic())
    throw ParseError("tower: field does not match");
  std::vector<AlgebraPtr<F>> levels;
  for (const auto& a : at(j, "levels")) levels.push_back(algebra_from_json(k, a));
  const auto& tr = at(j, "transitions");
  if (!tr.is_array() || tr.size() + 1 != levels.size()) throw ParseError("tower: need depth - 1 transitions");
  std::vector<AlgMorphism<F>> trans;
  for (std::size_t n = 0; n < tr.size(); ++n)
    trans.push_back(AlgMorphism<F>::make(levels[n + 1], levels[n], matrix_from_json(k, tr[n])));
  HypothesisFlags flags;
  if (j.contains("flags")) flags.forgetful_fully_faithful = get<bool>(at(j, "flags"), "forgetful_fully_faithful");
  std::string tag = j.contains("builder_tag") ? get<std::string>(j, "builder_tag") : std::string{};
  return RingTower<F>::make(std::move(levels), std::move(trans), flags, std::move(tag));
}

inline json to_json(const MorphismSpec& s) {
  json params = json::object();
  for (const auto& [key, v] : s.params) params[key] = v;
  return {{"family", s.family}, {"depth", s.depth}, {"params", params}};
}

inline MorphismSpec spec_from_json(const json& j) {
  MorphismSpec s;
  s.family = get<std::string>(j, "family");
  s.depth = get<std::size_t>(j, "depth");
  if (j.contains("params")) s.params = get<std::map<std::string, std::int64_t>>(j, "params");
  return s;
}

template <ExactField F>
json to_json(const TowerMorphism<F>& f) {
  json maps = json::array();
  for (const auto& m : f.maps()) maps.push_back(to_json(m.matrix()));
  return {{"field", field_to_json(f.field())},
          {"source", to_json(f.source())},
          {"target", to_json(f.target())},
          {"maps", maps},
          {"builder_tag", f.builder_tag()}};
}

/// A morphism document: either explicit towers and maps, or
/// {"builder": MorphismSpec} for a catalog family.
template <ExactField F>
TowerMorphism<F> morphism_from_json(const F& k, const json& j) {
  if (j.contains("builder")) return build_morphism(k, spec_from_json(at(j, "builder")));
  auto src = tower_from_json(k, at(j, "source"));
  auto tgt = tower_from_json(k, at(j, "target"));
  const auto& ms = at(j, "maps");
  if (!ms.is_array() || ms.size() != src.depth()) throw ParseError("morphism: need one map per level");
  std::vector<AlgMorphism<F>> maps;
  for (std::size_t n = 0; n < ms.size(); ++n)
    maps.push_back(AlgMorphism<F>::make(src.level(n + 1), tgt.level(n + 1),
                                        matrix_from_json(k, ms[n])));
  std::string tag = j.contains("builder_tag") ? get<std::string>(j, "builder_tag") : std::string{};
  return TowerMorphism<F>::make(std::move(src), std::move(tgt), std::move(maps), std::move(tag));
}

// ---- modules and systems -------------------------------------------------

template <ExactField F>
json to_json(const FinModule<F>& m) {
  json acts = json::array();
  for (const auto& a : m.actions()) acts.push_back(to_json(a));
  return {{"side", to_string(m.side())}, {"dim", m.dim()}, {"actions", acts}};
}

template <ExactField F>
FinModule<F> module_from_json(const AlgebraPtr<F>& a, const json& j) {
  const auto side_s = get<std::string>(j, "side");
  if (side_s != "left" && side_s != "right") throw ParseError("module: side must be left or right");
  const Side side = side_s == "left" ? Side::left : Side::right;
  std::vector<Matrix<F>> acts;
  for (const auto& m : at(j, "actions")) acts.push_back(matrix_from_json(a->field(), m));
  return FinModule<F>::make(a, side, get<std::size_t>(j, "dim"), std::move(acts));
}

template <ExactField F>
json to_json(const DiscreteModule<F>& m) {
  return {{"kind", "discrete"}, {"level", m.level()}, {"module", to_json(m.module())}};
}

template <ExactField F>
DiscreteModule<F> discrete_from_json(const RingTower<F>& t, const json& j) {
  const auto lv = get<std::size_t>(j, "level");
  if (lv < 1 || lv > t.depth()) throw ParseError("discrete module: level out of range");
  return DiscreteModule<F>::make(t, lv, module_from_json(t.level(lv), at(j, "module")));
}

template <ExactField F>
json to_json(const LeftSystem<F>& p) {
  json levels = json::array(), trans = json::array();
  for (const auto& m : p.levels()) levels.push_back(to_json(m));
  for (const auto& t : p.transitions()) trans.push_back(to_json(t));
  return {{"kind", "system"}, {"levels", levels}, {"transitions", trans}};
}

/// Either explicit levels and transitions, or {"top": module} reduced
/// levelwise.
template <ExactField F>
LeftSystem<F> system_from_json(const RingTower<F>& t, const json& j) {
  if (j.contains("top")) return make_left_system(t, module_from_json(t.top(), at(j, "top")));
  const auto& lv = at(j, "levels");
  if (!lv.is_array() || lv.size() != t.depth()) throw ParseError("system: need one module per level");
  std::vector<FinModule<F>> levels;
  for (std::size_t n = 0; n < lv.size(); ++n) levels.push_back(module_from_json(t.level(n + 1), lv[n]));
  std::vector<Matrix<F>> trans;
  for (const auto& m : at(j, "transitions")) trans.push_back(matrix_from_json(t.field(), m));
  return LeftSystem<F>::make(t, std::move(levels), std::move(trans));
}

// ---- verdicts and reports ------------------------------------------------

inline json to_json(const LevelVerdict& v) {
  json j{{"holds", v.holds},
         {"certified_depth", v.certified_depth},
         {"caveat", v.caveat()},
         {"kernel_dim", v.kernel_dim},
         {"cokernel_dim", v.cokernel_dim},
         {"detail", v.detail}};
  j["failing_level"] = v.failing_level ? json(*v.failing_level) : json(nullptr);
  return j;
}

inline json optional_level(const std::optional<std::size_t>& v) { return v ? json(*v) : json(nullptr); }

inline std::optional<std::size_t> optional_level_from(const json& j) {
  if (j.is_null()) return std::nullopt;
  return j.get<std::size_t>();
}

inline json to_json(const PredicateValues& p) {
  return {{"strongly_taut", p.strongly_taut},
          {"proflat", p.proflat},
          {"proepi", p.proepi},
          {"certified_depth", p.certified_depth},
          {"taut_failing_level", optional_level(p.taut_failing_level)},
          {"proflat_failing_level", optional_level(p.proflat_failing_level)},
          {"proepi_failing_level", optional_level(p.proepi_failing_level)}};
}

inline PredicateValues predicates_from_json(const json& j) {
  PredicateValues p;
  p.strongly_taut = get<bool>(j, "strongly_taut");
  p.proflat = get<bool>(j, "proflat");
  p.proepi = get<bool>(j, "proepi");
  p.certified_depth = get<std::size_t>(j, "certified_depth");
  p.taut_failing_level = optional_level_from(at(j, "taut_failing_level"));
  p.proflat_failing_level = optional_level_from(at(j, "proflat_failing_level"));
  p.proepi_failing_level = optional_level_from(at(j, "proepi_failing_level"));
  return p;
}

inline json to_json(const CheckRecord& c) {
  return {{"name", c.name},   {"relation", c.relation},           {"left", c.left},
          {"right", c.right}, {"outcome", to_string(c.outcome)}, {"detail", c.detail},
          {"pass", c.outcome != Outcome::contradiction && c.outcome != Outcome::refused}};
}

inline CheckRecord check_from_json(const json& j) {
  auto o = parse_outcome(get<std::string>(j, "outcome"));
  if (!o) throw ParseError("unknown outcome");
  return {get<std::string>(j, "name"), get<std::string>(j, "relation"), get<std::int64_t>(j, "left"),
          get<std::int64_t>(j, "right"), *o, get<std::string>(j, "detail")};
}

inline json to_json(const VerificationReport& r) {
  json checks = json::array();
  for (const auto& c : r.checks) checks.push_back(to_json(c));
  json j{{"scenario", r.scenario_id},
         {"seed", r.seed},
         {"checks", checks},
         {"witnesses", r.witnesses},
         {"summary",
          {{"pass", r.count(Outcome::pass)},
           {"contradiction", r.count(Outcome::contradiction)},
           {"refused", r.count(Outcome::refused)},
           {"negative_control", r.count(Outcome::negative_control)},
           {"reported", r.count(Outcome::reported)},
           {"exit_code", r.exit_code()}}}};
  j["predicates"] = r.predicates ? to_json(*r.predicates) : json(nullptr);
  return j;
}

inline VerificationReport report_from_json(const json& j) {
  VerificationReport r;
  r.scenario_id = get<std::string>(j, "scenario");
  r.seed = get<std::uint64_t>(j, "seed");
  if (!at(j, "predicates").is_null()) r.predicates = predicates_from_json(at(j, "predicates"));
  for (const auto& c : at(j, "checks")) r.checks.push_back(check_from_json(c));
  r.witnesses = get<std::vector<std::string>>(j, "witnesses");
  return r;
}

/// Canonical text form: sorted keys, two-space indent, trailing newline.
inline std::string dump(const json& j) { return j.dump(2) + "\n"; }

}  // namespace protower::io

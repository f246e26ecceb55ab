#include <gtest/gtest.h>

#include <filesystem>
#include <set>

#include "protower/io/scenario.hpp"

using namespace protower;
using namespace protower::io;
namespace fs = std::filesystem;

namespace {

const fs::path source_dir{PROTOWER_SOURCE_DIR};

const CheckRecord* find(const VerificationReport& r, const std::string& name) {
  for (const auto& c : r.checks)
    if (c.name == name) return &c;
  return nullptr;
}

fs::path temp_dir(const std::string& name) {
  auto p = fs::temp_directory_path() / ("protower_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

TEST(Scenario, BundledScenariosPass) {
  for (const auto& e : fs::directory_iterator(source_dir / "scenarios")) {
    auto run = run_scenario_file(e.path());
    ASSERT_TRUE(run.report) << e.path() << ": " << run.error;
    EXPECT_EQ(run.exit_code, 0) << e.path();
  }
}

TEST(Scenario, UnitInclusionRecordsExpectedNegative) {
  auto run = run_scenario_file(source_dir / "scenarios" / "unit_inclusion.json");
  ASSERT_TRUE(run.report);
  EXPECT_EQ(run.exit_code, 0);
  const auto* v = find(*run.report, "ff_discrete.verdict");
  ASSERT_TRUE(v);
  EXPECT_EQ(v->outcome, Outcome::negative_control);
  EXPECT_FALSE(run.report->predicates->proepi);
}

TEST(Scenario, MalformedInputExitsOne) {
  auto run = run_scenario_file(source_dir / "tests" / "data" / "malformed.json");
  EXPECT_EQ(run.exit_code, 1);
  EXPECT_NE(run.error.find("line"), std::string::npos);
  EXPECT_EQ(run_scenario_file(source_dir / "tests" / "data" / "missing.json").exit_code, 1);
}

TEST(Scenario, CrossValidation) {
  const json base = parse_text(read_file(source_dir / "scenarios" / "product_projection.json"));
  auto bad_depth = base;
  bad_depth["depth"] = 4;
  EXPECT_THROW(scenario_from_json(bad_depth), ParseError);
  auto bad_check = base;
  bad_check["checks"].push_back("nonsense");
  EXPECT_THROW(scenario_from_json(bad_check), ParseError);
  auto ref = parse_text(read_file(source_dir / "tests" / "data" / "ref_scenario.json"));
  ref["field"]["char"] = 5;
  EXPECT_THROW(scenario_from_json(ref, source_dir / "tests" / "data"), ParseError);
  auto inline_depth = parse_text(read_file(source_dir / "tests" / "data" / "ref_scenario.json"));
  inline_depth["depth"] = 3;
  auto s = scenario_from_json(inline_depth, source_dir / "tests" / "data");
  EXPECT_THROW(run_scenario(s), ParseError);
}

TEST(Scenario, FileReference) {
  auto run = run_scenario_file(source_dir / "tests" / "data" / "ref_scenario.json");
  ASSERT_TRUE(run.report) << run.error;
  EXPECT_EQ(run.exit_code, 0);
  EXPECT_EQ(find(*run.report, "flat_preservation.verdict")->outcome, Outcome::negative_control);
}

TEST(Scenario, RoundTripAndDeterminism) {
  for (const auto& s : corpus_specs(CorpusSpec::defaults(true), 3)) {
    auto back = scenario_from_json(parse_text(dump(to_json(s))));
    EXPECT_EQ(dump(to_json(back)), dump(to_json(s)));
  }
  auto s = scenario_from_json(parse_text(read_file(source_dir / "scenarios" / "levelwise_quotient.json")));
  EXPECT_EQ(dump(to_json(run_scenario(s))), dump(to_json(run_scenario(s))));
}

TEST(Scenario, RefusalsExitThree) {
  auto s = scenario_from_json(parse_text(read_file(source_dir / "scenarios" / "half_speed.json")));
  s.checks = {"ff_separated"};
  auto rep = run_scenario(s);
  EXPECT_EQ(rep.exit_code(), 3);
  s.expected->proepi = false;
  s.checks = {"predicates", "ff_separated"};
  EXPECT_EQ(run_scenario(s).exit_code(), 2);
}

TEST(Corpus, EmptySpecIsEmpty) {
  EXPECT_TRUE(corpus_specs(CorpusSpec{}, 1).empty());
  auto dir = temp_dir("empty");
  EXPECT_TRUE(generate_corpus(CorpusSpec{}, 1, dir).empty());
  EXPECT_TRUE(fs::exists(dir / "manifest.json"));
}

TEST(Corpus, CoversEveryClass) {
  std::set<std::string> classes;
  for (const auto& s : corpus_specs(CorpusSpec::defaults(), 1)) {
    const auto& e = *s.expected;
    if (!e.strongly_taut) {
      classes.insert("non-taut");
    } else if (e.proflat && e.proepi) {
      classes.insert("proflat proepi");
    } else if (e.proepi) {
      classes.insert("taut non-proflat");
    } else if (e.proflat) {
      classes.insert("proflat non-proepi");
    }
    EXPECT_LE(*s.depth, 5u);
  }
  EXPECT_EQ(classes.size(), 4u);
}

TEST(Corpus, TriangularFamiliesOnRequest) {
  std::set<std::string> fams;
  for (const auto& s : corpus_specs(CorpusSpec::defaults(true), 1))
    fams.insert(s.morphism["builder"]["family"].get<std::string>());
  EXPECT_TRUE(fams.count("triangular_corner_left"));
  EXPECT_TRUE(fams.count("triangular_corner_right"));
  for (const auto& s : corpus_specs(CorpusSpec::defaults(false), 1))
    EXPECT_EQ(s.id.find("triangular"), std::string::npos);
  // left and right corner maps differ only in which side is flat
  PrimeField k2{2};
  auto l = predicate_values(build_morphism(k2, MorphismSpec{"triangular_corner_left", 2, {}}));
  auto r = predicate_values(build_morphism(k2, MorphismSpec{"triangular_corner_right", 2, {}}));
  EXPECT_TRUE(l.proflat);
  EXPECT_FALSE(r.proflat);
  EXPECT_EQ(l.proepi, r.proepi);
}

TEST(Corpus, RegenerationMatchesCommittedFiles) {
  auto dir = temp_dir("seed1");
  auto names = generate_corpus(CorpusSpec::defaults(), 1, dir);
  ASSERT_EQ(names.size(), 40u);
  names.push_back("manifest.json");
  for (const auto& n : names) EXPECT_EQ(read_file(dir / n), read_file(source_dir / "corpus" / "seed1" / n)) << n;
  auto manifest = parse_text(read_file(source_dir / "corpus" / "seed1" / "manifest.json"));
  for (const auto& f : manifest["files"])
    EXPECT_EQ(hex64(fnv1a(read_file(source_dir / "corpus" / "seed1" / f["file"].get<std::string>()))),
              f["fnv1a"].get<std::string>());
}

TEST(Corpus, CommittedScenariosPass) {
  for (const auto& e : fs::directory_iterator(source_dir / "corpus" / "seed1")) {
    if (e.path().filename() == "manifest.json") continue;
    auto run = run_scenario_file(e.path(), std::nullopt, 4);
    EXPECT_EQ(run.exit_code, 0) << e.path() << " " << run.error;
  }
}

TEST(Fnv, KnownValues) {
  EXPECT_EQ(fnv1a(""), 0xcbf29ce484222325ull);
  EXPECT_EQ(hex64(fnv1a("a")), "af63dc4c8601ec8c");
}

}  // namespace

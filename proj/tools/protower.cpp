#include <chrono>
#include <cstdio>
#include <filesystem>
#include <iostream>
#include <sstream>

#include <CLI11.hpp>

#include "protower/io/scenario.hpp"
#include "protower/protower.hpp"

using namespace protower;
using namespace protower::io;
namespace fs = std::filesystem;

namespace {

struct Globals {
  std::uint64_t seed = 1;
  std::size_t depth = 3;
  std::uint32_t characteristic = 2;
  bool seed_set = false;
};

void emit(const json& j, const std::string& out) {
  if (out.empty() || out == "-")
    std::cout << dump(j);
  else
    write_file(out, dump(j));
}

std::map<std::string, std::int64_t> parse_params(const std::vector<std::string>& kv) {
  std::map<std::string, std::int64_t> out;
  for (const auto& s : kv) {
    const auto eq = s.find('=');
    if (eq == std::string::npos) throw ParseError("--param expects key=value, got '" + s + "'");
    try {
      out[s.substr(0, eq)] = std::stoll(s.substr(eq + 1));
    } catch (const std::exception&) {
      throw ParseError("--param " + s + ": value is not an integer");
    }
  }
  return out;
}

// A morphism document from --morphism or --family; the field comes from the
// document when present, else from --char.
struct MorphismInput {
  std::string path, family;
  std::vector<std::string> params;

  std::pair<json, std::uint32_t> load(const Globals& g) const {
    json j;
    if (!path.empty()) {
      j = parse_text(read_file(path), path);
    } else if (!family.empty()) {
      j = {{"builder", to_json(MorphismSpec{family, g.depth, parse_params(params)})}};
    } else {
      throw ParseError("need --morphism or --family");
    }
    const std::uint32_t ch = j.contains("field") ? field_char(j["field"]) : g.characteristic;
    return {j, ch};
  }
};

void add_morphism_options(CLI::App* cmd, MorphismInput& in) {
  cmd->add_option("--morphism", in.path, "morphism JSON file");
  cmd->add_option("--family", in.family, "catalog family instead of a file");
  cmd->add_option("--param", in.params, "family parameter key=value");
}

template <ExactField F>
json tower_summary(const RingTower<F>& t) {
  json dims = json::array(), kernels = json::array();
  for (const auto& a : t.levels()) dims.push_back(a->dim());
  for (std::size_t n = 1; n < t.depth(); ++n) kernels.push_back(t.kernel_ideal(n).dim());
  return {{"valid", true},
          {"depth", t.depth()},
          {"dims", dims},
          {"transition_kernel_dims", kernels},
          {"flags", {{"forgetful_fully_faithful", t.flags().forgetful_fully_faithful}}},
          {"builder_tag", t.builder_tag()}};
}

int cmd_check_tower(const Globals& g, const std::string& path, const MorphismInput& in, const std::string& which,
                    const std::string& out) {
  json j;
  std::uint32_t ch = g.characteristic;
  bool from_morphism = path.empty();
  if (!from_morphism) {
    j = parse_text(read_file(path), path);
    if (j.contains("field")) ch = field_char(j["field"]);
    from_morphism = j.contains("builder") || j.contains("maps");
  } else {
    std::tie(j, ch) = in.load(g);
  }
  return with_field(ch, [&](const auto& k) {
    if (!from_morphism) {
      emit(tower_summary(tower_from_json(k, j)), out);
    } else {
      auto f = morphism_from_json(k, j);
      emit(tower_summary(which == "target" ? f.target() : f.source()), out);
    }
    return 0;
  });
}

int cmd_classify(const Globals& g, const MorphismInput& in, const std::string& out) {
  auto [j, ch] = in.load(g);
  return with_field(ch, [&](const auto& k) {
    auto f = morphism_from_json(k, j);
    json r{{"depth", f.depth()},
           {"field", field_to_json(k)},
           {"strongly_taut", to_json(is_strongly_right_taut(f))},
           {"proflat", to_json(is_left_proflat(f))},
           {"proepi", to_json(is_proepimorphism(f))},
           {"predicates", to_json(predicate_values(f))}};
    if (j.contains("builder")) r["expected"] = to_json(expected_classes(spec_from_json(j["builder"])));
    emit(r, out);
    return 0;
  });
}

int cmd_apply(const Globals& g, const MorphismInput& in, const std::string& functor, const std::string& object,
              const std::string& out) {
  auto tag = parse_functor_tag(functor);
  if (!tag) throw ParseError("unknown functor '" + functor + "'");
  auto [j, ch] = in.load(g);
  const auto obj = parse_text(read_file(object), object);
  return with_field(ch, [&](const auto& k) {
    auto f = morphism_from_json(k, j);
    switch (*tag) {
      case FunctorTag::restrict_discrete: emit(to_json(restrict_discrete(f, discrete_from_json(f.target(), obj))), out); break;
      case FunctorTag::extend_discrete: emit(to_json(extend_discrete(f, discrete_from_json(f.source(), obj))), out); break;
      case FunctorTag::coextend_discrete: emit(to_json(coextend_discrete(f, discrete_from_json(f.source(), obj))), out); break;
      case FunctorTag::restrict_system: emit(to_json(restrict_system(f, system_from_json(f.target(), obj))), out); break;
      case FunctorTag::contraextend: emit(to_json(contraextend(f, system_from_json(f.source(), obj)).system), out); break;
      case FunctorTag::coextend_system: emit(to_json(coextend_system(f, system_from_json(f.source(), obj)).system), out); break;
    }
    return 0;
  });
}

int combine_exit(int a, int b) {
  auto rank = [](int c) { return c == 2 ? 3 : c == 1 ? 2 : c == 3 ? 1 : 0; };
  return rank(b) > rank(a) ? b : a;
}

int cmd_verify(const Globals& g, const std::string& scenario, std::optional<std::size_t> samples, const std::string& out) {
  std::optional<std::uint64_t> seed;
  if (g.seed_set) seed = g.seed;
  std::vector<fs::path> files;
  const bool dir = fs::is_directory(scenario);
  if (dir) {
    for (const auto& e : fs::directory_iterator(scenario))
      if (e.path().extension() == ".json" && e.path().filename() != "manifest.json") files.push_back(e.path());
    std::sort(files.begin(), files.end());
  } else {
    files.push_back(scenario);
  }
  int code = 0;
  for (const auto& p : files) {
    auto run = run_scenario_file(p, seed, samples);
    if (!run.report) {
      std::cerr << p.string() << ": " << run.error << "\n";
    } else {
      const auto& r = *run.report;
      std::cerr << r.scenario_id << ": " << r.count(Outcome::pass) << " pass, " << r.count(Outcome::negative_control)
                << " negative control, " << r.count(Outcome::reported) << " reported, " << r.count(Outcome::refused)
                << " refused, " << r.count(Outcome::contradiction) << " contradiction\n";
      for (const auto& w : r.witnesses) std::cerr << "  " << w << "\n";
      if (dir && !out.empty())
        write_file(fs::path(out) / (r.scenario_id + ".report.json"), dump(to_json(r)));
      else
        emit(to_json(r), out);
    }
    code = combine_exit(code, run.exit_code);
  }
  return code;
}

std::pair<std::size_t, std::size_t> parse_range(const std::string& s) {
  try {
    const auto dots = s.find("..");
    if (dots == std::string::npos) {
      const auto v = std::stoul(s);
      return {v, v};
    }
    return {std::stoul(s.substr(0, dots)), std::stoul(s.substr(dots + 2))};
  } catch (const std::exception&) {
    throw ParseError("--levels expects N or A..B, got '" + s + "'");
  }
}

int cmd_serieslab(const Globals& g, const std::string& levels, std::size_t degree, const std::string& table) {
  const auto [lo, hi] = parse_range(levels);
  if (g.characteristic == 0) throw ParseError("serieslab works over F_p only");
  const PrimeField k{g.characteristic};
  std::ostringstream csv;
  csv << "L,v,lower_bound,equations,unknowns,elapsed_ms\n";
  for (std::size_t L = lo; L <= hi; ++L) {
    const auto t0 = std::chrono::steady_clock::now();
    const auto r = min_valuation_of_solution(L, degree, k);
    const auto ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - t0).count();
    char elapsed[32];
    std::snprintf(elapsed, sizeof elapsed, "%.3f", ms);
    csv << L << "," << (r.valuation ? std::to_string(*r.valuation) : "none") << ","
        << (L >= 2 ? std::to_string(std::size_t{1} << (L - 2)) : "1") << "," << r.equations << "," << r.unknowns
        << "," << elapsed << "\n";
  }
  if (table.empty() || table == "-")
    std::cout << csv.str();
  else
    write_file(table, csv.str());
  return 0;
}

CorpusSpec corpus_from_file(const std::string& path) {
  const auto j = parse_text(read_file(path), path);
  CorpusSpec c;
  if (j.contains("families")) c.families = get<std::vector<std::string>>(j, "families");
  for (const auto& f : c.families)
    if (std::find(morphism_families().begin(), morphism_families().end(), f) == morphism_families().end())
      throw ParseError("unknown family '" + f + "'");
  c.count = j.contains("count") ? get<std::size_t>(j, "count") : c.families.size();
  if (j.contains("max_dim")) c.max_dim = get<std::size_t>(j, "max_dim");
  if (j.contains("max_depth")) c.max_depth = get<std::size_t>(j, "max_depth");
  if (j.contains("chars")) c.chars = get<std::vector<std::uint32_t>>(j, "chars");
  if (j.contains("samples")) c.samples = get<std::size_t>(j, "samples");
  return c;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Towers of finite-dimensional algebras: predicates, functors and verification"};
  app.require_subcommand(1);
  app.fallthrough();
  Globals g;
  app.add_option("--seed", g.seed, "random seed")->each([&](const std::string&) { g.seed_set = true; });
  app.add_option("--depth", g.depth, "tower depth for --family");
  app.add_option("--char", g.characteristic, "field characteristic, 0 for Q");

  std::function<int()> run;

  auto* ct = app.add_subcommand("check-tower", "validate a tower and print its shape");
  std::string tower_path, which = "source", out;
  MorphismInput ct_in;
  ct->add_option("--tower", tower_path, "tower or morphism JSON file");
  add_morphism_options(ct, ct_in);
  ct->add_option("--side", which, "source or target tower of a morphism")->check(CLI::IsMember({"source", "target"}));
  ct->add_option("--out", out, "output file");
  ct->callback([&] { run = [&] { return cmd_check_tower(g, tower_path, ct_in, which, out); }; });

  auto* cm = app.add_subcommand("classify-morphism", "tautness, proflatness and proepimorphism verdicts");
  MorphismInput cm_in;
  add_morphism_options(cm, cm_in);
  cm->add_option("--out", out, "output file");
  cm->callback([&] { run = [&] { return cmd_classify(g, cm_in, out); }; });

  auto* ap = app.add_subcommand("apply", "apply a change-of-scalars functor to a module or system");
  MorphismInput ap_in;
  std::string functor, object;
  add_morphism_options(ap, ap_in);
  ap->add_option("--functor", functor, "restrict_discrete, extend_discrete, coextend_discrete, restrict_system, "
                                       "contraextend or coextend_system")
      ->required();
  ap->add_option("--object", object, "discrete module or system JSON file")->required();
  ap->add_option("--out", out, "output file");
  ap->callback([&] { run = [&] { return cmd_apply(g, ap_in, functor, object, out); }; });

  auto* vf = app.add_subcommand("verify", "run a scenario file or a directory of them");
  std::string scenario;
  std::optional<std::size_t> samples;
  vf->add_option("--scenario", scenario, "scenario JSON file or directory")->required();
  vf->add_option("--samples", samples, "samples per check");
  vf->add_option("--out", out, "report file, or directory when --scenario is one");
  vf->callback([&] { run = [&] { return cmd_verify(g, scenario, samples, out); }; });

  auto* sl = app.add_subcommand("serieslab", "minimal valuations v(L) for the obstruction series");
  std::string levels = "2..6", table;
  std::size_t degree = 64;
  sl->add_option("--levels", levels, "N or A..B");
  sl->add_option("--degree", degree, "x-degree bound D");
  sl->add_option("--table", table, "CSV output file");
  sl->callback([&] { run = [&] { return cmd_serieslab(g, levels, degree, table); }; });

  auto* gc = app.add_subcommand("gen-corpus", "write a seeded scenario corpus");
  std::string out_dir, spec_path;
  bool triangular = false;
  std::optional<std::size_t> count;
  gc->add_option("--out", out_dir, "output directory")->required();
  gc->add_option("--spec", spec_path, "corpus spec JSON; {} gives an empty corpus");
  gc->add_flag("--triangular", triangular, "include the upper-triangular families");
  gc->add_option("--count", count, "number of scenarios");
  gc->callback([&] {
    run = [&] {
      auto spec = spec_path.empty() ? CorpusSpec::defaults(triangular) : corpus_from_file(spec_path);
      if (count) spec.count = *count;
      if (app.count("--depth")) spec.max_depth = g.depth;
      const auto names = generate_corpus(spec, g.seed, out_dir);
      std::cerr << names.size() << " scenarios written to " << out_dir << "\n";
      return 0;
    };
  });

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e) == 0 ? 0 : 1;
  }
  try {
    return run();
  } catch (const ParseError& e) {
    std::cerr << "parse error: " << e.what() << "\n";
    return 1;
  } catch (const PreconditionError& e) {
    std::cerr << "precondition refused: " << e.what() << "\n";
    return 3;
  } catch (const SystemAxiomError& e) {
    std::cerr << "precondition refused: " << e.what() << "\n";
    return 3;
  } catch (const ValidationError& e) {
    std::cerr << "invalid input: " << e.what() << "\n";
    return 1;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

#pragma once

// Command-line front end. Exit codes: 0 success, 1 "no" answer of a decision
// query (--exists), 2 input or usage error.

#include <cstdint>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "fptenum/backdoor.hpp"
#include "fptenum/csp.hpp"
#include "fptenum/enumcore.hpp"
#include "fptenum/generators.hpp"
#include "fptenum/io.hpp"
#include "fptenum/maxones.hpp"
#include "fptenum/vertexcover.hpp"

namespace fptenum::cli {

inline constexpr int kExitOk = 0;
inline constexpr int kExitNo = 1;
inline constexpr int kExitInput = 2;

namespace detail {

// Error tied to an input file, reported as "error: FILE:LINE: message".
struct InputError {
  std::string text;
};

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw InputError{"error: " + path + ": cannot open file"};
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

template <class Parse>
auto load(const std::string& path, Parse parse) {
  auto text = read_file(path);
  try {
    return parse(text);
  } catch (const ParseError& e) {
    throw InputError{"error: " + path + ":" + std::to_string(e.line()) + ": " + e.message()};
  } catch (const PreconditionError& e) {
    throw InputError{"error: " + path + ": " + e.what()};
  }
}

template <class Range>
void print_set(std::ostream& out, const Range& items, std::size_t offset = 0) {
  bool first = true;
  for (auto v : items) {
    if (!first) out << ' ';
    out << (v + offset);
    first = false;
  }
  out << '\n';
}

inline OracleKind oracle_from_name(const std::string& name) {
  if (name == "brute") return OracleKind::bruteforce;
  if (name == "dualhorn") return OracleKind::dual_horn_propagation;
  if (name == "affine") return OracleKind::affine_gauss;
  if (name == "bb") return OracleKind::branch_and_bound;
  throw InputError{"error: unknown oracle '" + name + "'"};
}

inline const char* tristate_name(Tristate t) {
  switch (t) {
    case Tristate::yes: return "yes";
    case Tristate::no: return "no";
    case Tristate::unknown: return "unknown";
  }
  return "?";
}

inline void print_flags(std::ostream& out, const ClassFlags& f) {
  out << "zero_valid=" << f.zero_valid << " one_valid=" << f.one_valid << " horn=" << f.horn
      << " dual_horn=" << f.dual_horn << " bijunctive=" << f.bijunctive << " affine=" << f.affine
      << " complementive=" << f.complementive << " strongly_bijunctive=" << tristate_name(f.strongly_bijunctive);
}

template <class T>
int emit_stream(std::ostream& out, SolutionStream<T> stream, bool count_only, std::size_t offset = 0) {
  std::size_t count = 0;
  while (auto s = stream.next()) {
    ++count;
    if (!count_only) print_set(out, *s, offset);
  }
  if (count_only) out << count << '\n';
  return kExitOk;
}

struct ProfileOptions {
  std::string family;
  std::vector<std::size_t> sizes;
  std::size_t k = 3;
  std::uint64_t seed = 1;
  std::size_t repeat = 1;
  std::string json_path;
  std::string csv_dir;
};

// One generator-backed profiling run; among `repeat` runs the one with the
// smallest maximum gap is kept (scheduler noise only ever adds time).
inline DelayProfile profile_family_member(const ProfileOptions& opt, std::size_t n) {
  const std::uint64_t seed = opt.seed ^ (0x100000001b3ULL * n);
  auto once = [&]() -> DelayProfile {
    auto discard = [](auto&&) {};
    if (opt.family == "vc") {
      auto inst = make_vc_instance(gen::planted_sparse_graph(n, seed), opt.k);
      return profile_stream([](const VcInstance& x) { return enumerate_all_vcs(x.payload(), x.parameter()); }, inst,
                            discard);
    }
    if (opt.family == "maxones") {
      auto phi = gen::implication_chain_formula(n, seed);
      ParamInstance<GammaFormula> inst(phi, opt.k, n + phi.constraints().size());
      return profile_stream(
          [](const ParamInstance<GammaFormula>& x) {
            return enumerate_maxones(WeightOracle(OracleKind::dual_horn_propagation), x.payload(),
                                     static_cast<std::int64_t>(x.parameter()));
          },
          inst, discard);
    }
    if (opt.family == "backdoor") {
      auto phi = gen::planted_backdoor_cnf(n, seed);
      ParamInstance<CnfFormula> inst(phi, opt.k, n + phi.clauses().size());
      return profile_stream([](const ParamInstance<CnfFormula>& x) { return generate_sbds(x.payload(), x.parameter()); },
                            inst, discard);
    }
    throw InputError{"error: unknown profile family '" + opt.family + "' (expected vc, maxones or backdoor)"};
  };
  auto best = once();
  for (std::size_t r = 1; r < opt.repeat; ++r) {
    auto p = once();
    if (p.max_gap() < best.max_gap()) best = std::move(p);
  }
  return best;
}

inline int run_profile(const ProfileOptions& opt, std::ostream& out) {
  io::DelayGrowthReport report;
  nlohmann::json runs = nlohmann::json::array();
  for (auto n : opt.sizes) {
    DelayProfile p = [&] {
      try {
        return profile_family_member(opt, n);
      } catch (const PreconditionError& e) {
        throw InputError{std::string("error: ") + e.what()};
      }
    }();
    report.add({opt.family, n, opt.k, p.max_gap().count(), p.solution_count()});
    runs.push_back({{"n", n}, {"k", opt.k}, {"profile", io::to_json(p)}});
    out << opt.family << " n=" << n << " k=" << opt.k << " count=" << p.solution_count()
        << " precalc_ns=" << p.precalc().count() << " max_gap_ns=" << p.max_gap().count() << '\n';
    if (!opt.csv_dir.empty()) {
      std::filesystem::create_directories(opt.csv_dir);
      auto path = std::filesystem::path(opt.csv_dir) / (opt.family + "_n" + std::to_string(n) + ".csv");
      std::ofstream csv(path);
      if (!csv) throw InputError{"error: " + path.string() + ": cannot write file"};
      csv << io::to_csv(p);
    }
  }
  for (const auto& g : report.ratios())
    out << "growth " << g.family << " k=" << g.k << ' ' << g.n_small << "->" << g.n_large << " ratio=" << g.ratio
        << '\n';
  if (!opt.json_path.empty()) {
    nlohmann::json doc{{"family", opt.family}, {"k", opt.k}, {"seed", opt.seed}, {"runs", runs},
                       {"report", report.to_json()}};
    std::ofstream f(opt.json_path);
    if (!f) throw InputError{"error: " + opt.json_path + ": cannot write file"};
    f << doc.dump(2) << '\n';
  }
  return kExitOk;
}

}  // namespace detail

inline int run_cli(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  using namespace detail;
  CLI::App app{"Parameterized enumeration with bounded delay"};
  app.require_subcommand(1);

  std::string graph_path, formula_path, cnf_path, language_path, oracle_name = "auto";
  std::int64_t k = 0;
  bool count_only = false, exists = false;

  auto* vc = app.add_subcommand("vc", "all vertex covers of size <= k");
  vc->add_option("--graph", graph_path, "graph file ('p graph' format)")->required();
  vc->add_option("-k", k, "maximum cover size")->required()->check(CLI::NonNegativeNumber);
  vc->add_flag("--count", count_only, "print only the number of covers");
  vc->add_flag("--exists", exists, "decide whether a cover exists (exit 1 if not)");

  auto* mo = app.add_subcommand("maxones", "all models of weight >= k");
  mo->add_option("--formula", formula_path, "Gamma-formula file")->required();
  mo->add_option("-k", k, "minimum weight")->required();
  mo->add_option("--oracle", oracle_name, "auto|brute|dualhorn|affine|bb");
  mo->add_flag("--count", count_only, "print only the number of models");
  mo->add_flag("--exists", exists, "decide whether such a model exists (exit 1 if not)");

  auto* bd = app.add_subcommand("backdoor", "all strong Horn-backdoor sets of size exactly k");
  bd->add_option("--cnf", cnf_path, "DIMACS CNF file")->required();
  bd->add_option("-k", k, "backdoor size")->required()->check(CLI::NonNegativeNumber);
  bd->add_flag("--count", count_only, "print only the number of backdoor sets");
  bd->add_flag("--exists", exists, "decide whether such a set exists (exit 1 if not)");

  auto* cl = app.add_subcommand("classify", "closure properties of each relation of a language");
  cl->add_option("--language", language_path, "Gamma-formula file")->required();

  ProfileOptions popt;
  auto* pr = app.add_subcommand("profile", "delay profiles over a generated family");
  pr->add_option("family", popt.family, "vc|maxones|backdoor")->required();
  pr->add_option("--sizes", popt.sizes, "instance sizes")->required()->delimiter(',');
  pr->add_option("-k", popt.k, "parameter");
  pr->add_option("--seed", popt.seed, "64-bit generator seed");
  pr->add_option("--repeat", popt.repeat, "runs per size; the one with the smallest max gap is kept")
      ->check(CLI::PositiveNumber);
  pr->add_option("--json", popt.json_path, "write profiles and growth report as JSON");
  pr->add_option("--csv-dir", popt.csv_dir, "write one index,delay_ns CSV per size");

  std::string gen_kind;
  std::size_t gen_n = 10, gen_m = 10;
  std::uint64_t gen_seed = 1;
  double gen_p = 0.2;
  auto* gn = app.add_subcommand("generate", "print a seeded random instance");
  gn->add_option("kind", gen_kind, "graph|planted-graph|cnf|planted-cnf|dualhorn|affine|twoclause|chain")->required();
  gn->add_option("-n", gen_n, "vertices / variables");
  gn->add_option("-m", gen_m, "clauses (cnf)");
  gn->add_option("-p", gen_p, "edge probability (graph)");
  gn->add_option("--seed", gen_seed, "64-bit generator seed");

  std::vector<std::string> argv_store{"fptenum"};
  argv_store.insert(argv_store.end(), args.begin(), args.end());
  std::vector<char*> argv;
  for (auto& a : argv_store) argv.push_back(a.data());

  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::CallForHelp&) {
    out << app.help();
    return kExitOk;
  } catch (const CLI::ParseError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }

  try {
    if (*vc) {
      auto g = load(graph_path, io::parse_graph);
      auto stream = enumerate_all_vcs(g, static_cast<std::size_t>(k));
      if (exists) {
        bool any = stream.next().has_value();
        out << (any ? "yes" : "no") << '\n';
        return any ? kExitOk : kExitNo;
      }
      return emit_stream(out, std::move(stream), count_only);
    }
    if (*mo) {
      auto phi = load(formula_path, io::parse_gamma_formula);
      WeightOracle oracle = oracle_name == "auto" ? auto_select_oracle(phi) : WeightOracle(oracle_from_name(oracle_name));
      if (!oracle.applicable(phi))
        throw InputError{"error: " + formula_path + ": oracle '" + std::string(to_string(oracle.kind())) +
                         "' does not apply to this formula"};
      if (exists) {
        bool any = has_maxones(oracle, phi, k);
        out << (any ? "yes" : "no") << '\n';
        return any ? kExitOk : kExitNo;
      }
      return emit_stream(out, enumerate_maxones(oracle, phi, k), count_only);
    }
    if (*bd) {
      auto phi = load(cnf_path, io::parse_dimacs_cnf);
      if (exists) {
        bool any = exists_sbds(phi, static_cast<std::size_t>(k), all_variables(phi));
        out << (any ? "yes" : "no") << '\n';
        return any ? kExitOk : kExitNo;
      }
      return emit_stream(out, generate_sbds(phi, static_cast<std::size_t>(k)), count_only, 1);
    }
    if (*cl) {
      auto phi = load(language_path, io::parse_gamma_formula);
      for (const auto& [name, rel] : phi.language().relations()) {
        out << "relation " << name << " arity=" << rel->arity() << " tuples=" << rel->size() << ' ';
        print_flags(out, classify_relation(*rel));
        out << '\n';
      }
      auto flags = classify_language(phi.language());
      out << "language ";
      print_flags(out, flags);
      out << '\n';
      // Oracle for any formula over this language, not just the constraints in the file.
      auto kind = flags.dual_horn ? OracleKind::dual_horn_propagation
                  : flags.affine  ? OracleKind::affine_gauss
                                  : OracleKind::branch_and_bound;
      out << "oracle " << to_string(kind) << '\n';
      return kExitOk;
    }
    if (*pr) return run_profile(popt, out);
    if (*gn) {
      if (gen_kind == "graph") out << io::serialize_graph(gen::random_graph(gen_n, gen_p, gen_seed));
      else if (gen_kind == "planted-graph") out << io::serialize_graph(gen::planted_sparse_graph(gen_n, gen_seed));
      else if (gen_kind == "cnf") out << io::serialize_cnf(gen::random_cnf(gen_n, gen_m, 3, gen_seed));
      else if (gen_kind == "planted-cnf") out << io::serialize_cnf(gen::planted_backdoor_cnf(gen_n, gen_seed));
      else if (gen_kind == "dualhorn") out << io::serialize_gamma_formula(gen::random_dual_horn_formula(gen_n, gen_seed));
      else if (gen_kind == "affine") out << io::serialize_gamma_formula(gen::random_affine_formula(gen_n, gen_seed));
      else if (gen_kind == "twoclause") out << io::serialize_gamma_formula(gen::random_two_clause_formula(gen_n, gen_seed));
      else if (gen_kind == "chain") out << io::serialize_gamma_formula(gen::implication_chain_formula(gen_n, gen_seed));
      else throw InputError{"error: unknown generator '" + gen_kind + "'"};
      return kExitOk;
    }
  } catch (const InputError& e) {
    err << e.text << '\n';
    return kExitInput;
  } catch (const PreconditionError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  } catch (const GuardError& e) {
    err << "error: " << e.what() << '\n';
    return kExitInput;
  }
  return kExitInput;
}

}  // namespace fptenum::cli

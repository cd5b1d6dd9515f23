#pragma once

// Text formats: DIMACS CNF, "p graph" edge lists, Gamma-formula files, and
// JSON/CSV renderings of delay profiles.

#include <algorithm>
#include <charconv>
#include <cstddef>
#include <cstdint>
#include <map>
#include <sstream>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include <nlohmann/json.hpp>

#include "fptenum/backdoor.hpp"
#include "fptenum/csp.hpp"
#include "fptenum/enumcore.hpp"
#include "fptenum/errors.hpp"
#include "fptenum/vertexcover.hpp"

namespace fptenum::io {

namespace detail {

struct Line {
  std::size_t number;
  std::vector<std::string> tokens;
};

// Non-empty, non-comment lines split on whitespace. A line is a comment when
// its first token equals comment_token.
inline std::vector<Line> tokenize(std::string_view text, std::string_view comment_token) {
  std::vector<Line> out;
  std::size_t number = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    auto end = text.find('\n', pos);
    if (end == std::string_view::npos) end = text.size();
    ++number;
    std::istringstream in{std::string(text.substr(pos, end - pos))};
    Line line{number, {}};
    std::string tok;
    while (in >> tok) line.tokens.push_back(tok);
    if (!line.tokens.empty() && line.tokens.front() != comment_token &&
        !line.tokens.front().starts_with(comment_token))
      out.push_back(std::move(line));
    if (end == text.size()) break;
    pos = end + 1;
  }
  return out;
}

inline std::size_t last_line(std::string_view text) {
  auto lines = static_cast<std::size_t>(std::ranges::count(text, '\n'));
  return (text.empty() || text.back() == '\n') ? std::max<std::size_t>(lines, 1) : lines + 1;
}

template <class Int>
Int parse_int(const std::string& tok, std::size_t line, const char* what) {
  Int value{};
  auto [ptr, ec] = std::from_chars(tok.data(), tok.data() + tok.size(), value);
  if (ec != std::errc() || ptr != tok.data() + tok.size())
    throw ParseError(line, std::string("expected ") + what + ", got '" + tok + "'");
  return value;
}

}  // namespace detail

// DIMACS CNF. Clauses may span lines; each ends with 0. Duplicate literals
// are collapsed, tautological clauses rejected.
inline CnfFormula parse_dimacs_cnf(std::string_view text) {
  auto lines = detail::tokenize(text, "c");
  std::size_t n = 0, m = 0;
  bool have_header = false;
  std::vector<Clause> clauses;
  std::vector<Literal> current;
  std::size_t clause_line = 0;

  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t.front() == "p") {
      if (have_header) throw ParseError(line.number, "duplicate header");
      if (t.size() != 4 || t[1] != "cnf") throw ParseError(line.number, "malformed header, expected 'p cnf <vars> <clauses>'");
      n = detail::parse_int<std::size_t>(t[2], line.number, "variable count");
      m = detail::parse_int<std::size_t>(t[3], line.number, "clause count");
      have_header = true;
      continue;
    }
    if (t.front() == "%") break;  // SATLIB trailer
    if (!have_header) throw ParseError(line.number, "clause before 'p cnf' header");
    for (const auto& tok : t) {
      auto lit = detail::parse_int<long long>(tok, line.number, "literal");
      if (current.empty()) clause_line = line.number;
      if (lit == 0) {
        if (clauses.size() == m)
          throw ParseError(line.number, "more clauses than the " + std::to_string(m) + " declared");
        std::ranges::sort(current);
        auto dup = std::ranges::unique(current);
        current.erase(dup.begin(), dup.end());
        for (std::size_t i = 1; i < current.size(); ++i)
          if (current[i].var == current[i - 1].var)
            throw ParseError(clause_line, "tautological clause on variable " + std::to_string(current[i].var + 1));
        clauses.emplace_back(std::move(current));
        current.clear();
        continue;
      }
      auto var = static_cast<unsigned long long>(lit < 0 ? -lit : lit);
      if (var > n) throw ParseError(line.number, "literal " + tok + " out of range 1.." + std::to_string(n));
      current.push_back({static_cast<Var>(var - 1), lit > 0});
    }
  }
  if (!have_header) throw ParseError(detail::last_line(text), "missing 'p cnf' header");
  if (!current.empty()) throw ParseError(clause_line, "clause not terminated by 0");
  if (clauses.size() != m)
    throw ParseError(detail::last_line(text), "expected " + std::to_string(m) + " clauses, found " +
                                                  std::to_string(clauses.size()));
  return CnfFormula(n, std::move(clauses));
}

inline std::string serialize_cnf(const CnfFormula& phi) {
  std::ostringstream out;
  out << "p cnf " << phi.var_count() << ' ' << phi.clauses().size() << '\n';
  for (const auto& c : phi.clauses()) {
    for (const auto& l : c.literals()) out << (l.positive ? "" : "-") << (l.var + 1) << ' ';
    out << "0\n";
  }
  return out.str();
}

// "p graph <n> <m>" followed by m lines "e <u> <v>", 0-based.
inline Graph parse_graph(std::string_view text) {
  auto lines = detail::tokenize(text, "c");
  std::size_t n = 0, m = 0;
  bool have_header = false;
  std::vector<Edge> edges;
  std::map<Edge, std::size_t> seen;
  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t.front() == "p") {
      if (have_header) throw ParseError(line.number, "duplicate header");
      if (t.size() != 4 || t[1] != "graph")
        throw ParseError(line.number, "malformed header, expected 'p graph <vertices> <edges>'");
      n = detail::parse_int<std::size_t>(t[2], line.number, "vertex count");
      m = detail::parse_int<std::size_t>(t[3], line.number, "edge count");
      have_header = true;
    } else if (t.front() == "e") {
      if (!have_header) throw ParseError(line.number, "edge before 'p graph' header");
      if (t.size() != 3) throw ParseError(line.number, "malformed edge line, expected 'e <u> <v>'");
      auto u = detail::parse_int<Vertex>(t[1], line.number, "vertex");
      auto v = detail::parse_int<Vertex>(t[2], line.number, "vertex");
      if (u >= n || v >= n) throw ParseError(line.number, "vertex index out of range 0.." + std::to_string(n) + "-1");
      if (u == v) throw ParseError(line.number, "self-loop on vertex " + std::to_string(u));
      Edge e = std::minmax(u, v);
      if (auto it = seen.find(e); it != seen.end())
        throw ParseError(line.number, "duplicate edge, first given on line " + std::to_string(it->second));
      seen.emplace(e, line.number);
      if (edges.size() == m) throw ParseError(line.number, "more edges than the " + std::to_string(m) + " declared");
      edges.push_back(e);
    } else {
      throw ParseError(line.number, "unexpected line starting with '" + t.front() + "'");
    }
  }
  if (!have_header) throw ParseError(detail::last_line(text), "missing 'p graph' header");
  if (edges.size() != m)
    throw ParseError(detail::last_line(text),
                     "expected " + std::to_string(m) + " edges, found " + std::to_string(edges.size()));
  return Graph(n, std::move(edges));
}

inline std::string serialize_graph(const Graph& g) {
  std::ostringstream out;
  out << "p graph " << g.vertex_count() << ' ' << g.edge_count() << '\n';
  for (auto [u, v] : g.edges()) out << "e " << u << ' ' << v << '\n';
  return out.str();
}

// Gamma-formula file:
//   nvars 3
//   relation OR 2 { 01 10 11 }
//   constraint OR 0 1
// '#' starts a comment line. Relations must be defined before use.
inline GammaFormula parse_gamma_formula(std::string_view text) {
  std::string spaced;
  for (char ch : text) {
    if (ch == '{' || ch == '}') {
      spaced += ' ';
      spaced += ch;
      spaced += ' ';
    } else {
      spaced += ch;
    }
  }
  auto lines = detail::tokenize(spaced, "#");
  ConstraintLanguage lang;
  std::optional<std::size_t> nvars;
  std::vector<std::tuple<std::size_t, std::string, std::vector<std::size_t>>> pending;

  for (const auto& line : lines) {
    const auto& t = line.tokens;
    if (t.front() == "nvars") {
      if (nvars) throw ParseError(line.number, "duplicate nvars");
      if (t.size() != 2) throw ParseError(line.number, "expected 'nvars <count>'");
      nvars = detail::parse_int<std::size_t>(t[1], line.number, "variable count");
    } else if (t.front() == "relation") {
      if (t.size() < 5 || t[3] != "{" || t.back() != "}")
        throw ParseError(line.number, "expected 'relation <name> <arity> { <tuples> }'");
      const auto& name = t[1];
      auto arity = detail::parse_int<std::size_t>(t[2], line.number, "arity");
      if (arity == 0 || arity > kMaxArity)
        throw ParseError(line.number, "arity must be in 1.." + std::to_string(kMaxArity));
      std::vector<Tuple> tuples;
      for (std::size_t i = 4; i + 1 < t.size(); ++i) {
        if (t[i].size() != arity)
          throw ParseError(line.number, "tuple '" + t[i] + "' has width " + std::to_string(t[i].size()) +
                                            ", relation arity is " + std::to_string(arity));
        try {
          tuples.push_back(BooleanRelation::parse_tuple(arity, t[i]));
        } catch (const PreconditionError& e) {
          throw ParseError(line.number, e.what());
        }
      }
      if (lang.find(name)) throw ParseError(line.number, "relation '" + name + "' defined twice");
      lang.add(name, BooleanRelation(arity, std::move(tuples)));
    } else if (t.front() == "constraint") {
      if (t.size() < 2) throw ParseError(line.number, "expected 'constraint <name> <vars...>'");
      auto rel = lang.find(t[1]);
      if (!rel) throw ParseError(line.number, "unknown relation '" + t[1] + "'");
      if (t.size() - 2 != rel->arity())
        throw ParseError(line.number, "relation '" + t[1] + "' has arity " + std::to_string(rel->arity()) + ", got " +
                                          std::to_string(t.size() - 2) + " variables");
      std::vector<std::size_t> vars;
      for (std::size_t i = 2; i < t.size(); ++i) vars.push_back(detail::parse_int<std::size_t>(t[i], line.number, "variable"));
      pending.emplace_back(line.number, t[1], std::move(vars));
    } else {
      throw ParseError(line.number, "unexpected directive '" + t.front() + "'");
    }
  }
  std::size_t n = nvars.value_or(0);
  if (!nvars && !pending.empty()) throw ParseError(std::get<0>(pending.front()), "constraint without 'nvars' line");
  GammaFormula phi(std::move(lang), n);
  for (auto& [line, name, vars] : pending) {
    for (auto v : vars)
      if (v >= n) throw ParseError(line, "variable " + std::to_string(v) + " out of range 0.." + std::to_string(n) + "-1");
    phi.add_constraint(name, std::move(vars));
  }
  return phi;
}

inline std::string serialize_gamma_formula(const GammaFormula& phi) {
  std::ostringstream out;
  out << "nvars " << phi.var_count() << '\n';
  for (const auto& [name, rel] : phi.language().relations()) {
    out << "relation " << name << ' ' << rel->arity() << " {";
    for (auto t : rel->tuples()) out << ' ' << BooleanRelation::format_tuple(rel->arity(), t);
    out << " }\n";
  }
  for (const auto& c : phi.constraints()) {
    out << "constraint " << c.name;
    for (auto v : c.vars) out << ' ' << v;
    out << '\n';
  }
  return out.str();
}

inline nlohmann::json to_json(const DelayProfile& p) {
  nlohmann::json gaps = nlohmann::json::array();
  for (auto g : p.gaps()) gaps.push_back(g.count());
  return {{"precalc_ns", p.precalc().count()},
          {"gaps_ns", gaps},
          {"postcalc_ns", p.postcalc().count()},
          {"count", p.solution_count()}};
}

inline DelayProfile delay_profile_from_json(const nlohmann::json& j) {
  using ns = DelayProfile::duration;
  const auto count = j.at("count").get<std::size_t>();
  const auto& gaps = j.at("gaps_ns");
  std::vector<ns> delays{ns(j.at("precalc_ns").get<std::int64_t>())};
  if (count == 0) return DelayProfile(std::move(delays));
  if (gaps.size() != count - 1) throw PreconditionError("gaps_ns length does not match count");
  for (const auto& g : gaps) delays.emplace_back(g.get<std::int64_t>());
  delays.emplace_back(j.at("postcalc_ns").get<std::int64_t>());
  return DelayProfile(std::move(delays));
}

// index,delay_ns with index 0 the precalculation and index n the
// postcalculation time.
inline std::string to_csv(const DelayProfile& p) {
  std::ostringstream out;
  out << "index,delay_ns\n";
  auto d = p.delays();
  for (std::size_t i = 0; i < d.size(); ++i) out << i << ',' << d[i].count() << '\n';
  return out.str();
}

struct DelayRecord {
  std::string family;
  std::size_t n = 0;
  std::size_t k = 0;
  std::int64_t max_gap_ns = 0;
  std::size_t solution_count = 0;
};

struct GrowthRatio {
  std::string family;
  std::size_t k = 0;
  std::size_t n_small = 0;
  std::size_t n_large = 0;
  double ratio = 0;
};

// Max-gap growth between consecutive sizes of the same family and parameter.
class DelayGrowthReport {
 public:
  void add(DelayRecord r) { records_.push_back(std::move(r)); }
  const std::vector<DelayRecord>& records() const noexcept { return records_; }

  std::vector<GrowthRatio> ratios() const {
    std::map<std::pair<std::string, std::size_t>, std::vector<const DelayRecord*>> groups;
    for (const auto& r : records_) groups[{r.family, r.k}].push_back(&r);
    std::vector<GrowthRatio> out;
    for (auto& [key, rs] : groups) {
      std::ranges::sort(rs, {}, &DelayRecord::n);
      for (std::size_t i = 1; i < rs.size(); ++i) {
        // A zero gap (below clock resolution) counts as 1 ns.
        auto lo = std::max<std::int64_t>(rs[i - 1]->max_gap_ns, 1);
        auto hi = std::max<std::int64_t>(rs[i]->max_gap_ns, 1);
        out.push_back({key.first, key.second, rs[i - 1]->n, rs[i]->n, static_cast<double>(hi) / static_cast<double>(lo)});
      }
    }
    return out;
  }

  nlohmann::json to_json() const {
    nlohmann::json recs = nlohmann::json::array(), growth = nlohmann::json::array();
    for (const auto& r : records_)
      recs.push_back({{"family", r.family}, {"n", r.n}, {"k", r.k}, {"max_gap_ns", r.max_gap_ns},
                      {"count", r.solution_count}});
    for (const auto& g : ratios())
      growth.push_back({{"family", g.family}, {"k", g.k}, {"n1", g.n_small}, {"n2", g.n_large}, {"ratio", g.ratio}});
    return {{"records", recs}, {"growth", growth}};
  }

 private:
  std::vector<DelayRecord> records_;
};

}  // namespace fptenum::io

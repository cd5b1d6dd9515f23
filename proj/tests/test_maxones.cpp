#include <catch2/catch_amalgamated.hpp>

#include <bit>
#include <set>
#include <vector>

#include "fptenum/generators.hpp"
#include "fptenum/maxones.hpp"
#include "oracles.hpp"

using namespace fptenum;

namespace {

GammaFormula formula(std::size_t n, std::vector<std::pair<std::string, std::vector<std::size_t>>> cs) {
  ConstraintLanguage lang;
  lang.add("OR", BooleanRelation::from_strings(2, {"01", "10", "11"}));
  lang.add("IMP", BooleanRelation::from_strings(2, {"00", "01", "11"}));
  lang.add("XOR", BooleanRelation::from_strings(2, {"01", "10"}));
  lang.add("ZERO", BooleanRelation::from_strings(1, {"0"}));
  GammaFormula phi(std::move(lang), n);
  for (auto& [name, vars] : cs) phi.add_constraint(name, vars);
  return phi;
}

std::set<Model> expected_models(const GammaFormula& phi, std::int64_t k) {
  std::set<Model> out;
  for (auto m : oracle::models(phi)) {
    if (std::popcount(m) < k) continue;
    Model s;
    for (std::size_t i = 0; i < phi.var_count(); ++i)
      if ((m >> i) & 1U) s.push_back(i);
    out.insert(s);
  }
  return out;
}

const WeightOracle kBrute{OracleKind::bruteforce};
const WeightOracle kDualHorn{OracleKind::dual_horn_propagation};
const WeightOracle kAffine{OracleKind::affine_gauss};
const WeightOracle kBranch{OracleKind::branch_and_bound};

}  // namespace

TEST_CASE("max_weight_dual_horn worked examples", "[maxones][dualhorn]") {
  CHECK(max_weight_dual_horn(formula(2, {{"OR", {0, 1}}, {"IMP", {0, 1}}})) == std::optional<std::size_t>(2));
  CHECK(max_weight_dual_horn(formula(1, {{"ZERO", {0}}})) == std::optional<std::size_t>(0));
  CHECK_FALSE(max_weight_dual_horn(formula(2, {{"OR", {0, 1}}, {"ZERO", {0}}, {"ZERO", {1}}})));
  CHECK(max_weight_dual_horn(formula(3, {})) == std::optional<std::size_t>(3));
  CHECK_THROWS_AS(max_weight_dual_horn(formula(2, {{"XOR", {0, 1}}})), PreconditionError);
}

TEST_CASE("has_maxones worked examples", "[maxones]") {
  auto x = formula(2, {{"XOR", {0, 1}}});
  CHECK(has_maxones(kAffine, x, 1));
  CHECK_FALSE(has_maxones(kAffine, x, 2));
  CHECK(has_maxones(kBranch, x, 0));
  CHECK(has_maxones(kBrute, x, -3));

  auto unsat = substitute(formula(1, {{"XOR", {0, 0}}}), 0, true);
  REQUIRE(unsat.unsatisfiable());
  for (const auto& o : {kBrute, kDualHorn, kAffine, kBranch}) CHECK_FALSE(o.decide(unsat, 0));

  CHECK_THROWS_AS(has_maxones(kDualHorn, x, 1), PreconditionError);
  CHECK_THROWS_AS(has_maxones(kAffine, formula(2, {{"OR", {0, 1}}}), 1), PreconditionError);
}

TEST_CASE("affine oracle guards the number of free variables", "[maxones][affine]") {
  auto phi = formula(30, {});
  CHECK_THROWS_AS(kAffine.decide(phi, 29), GuardError);
  CHECK(kAffine.decide(formula(22, {}), 22));
}

TEST_CASE("oracles agree with brute force", "[maxones][oracle]") {
  for (std::uint64_t seed = 0; seed < 150; ++seed) {
    std::size_t n = 1 + seed % 12;
    auto dh = gen::random_dual_horn_formula(n, seed);
    auto af = gen::random_affine_formula(n, seed);
    auto tc = gen::random_two_clause_formula(n, seed);
    REQUIRE(kDualHorn.applicable(dh));
    REQUIRE(kAffine.applicable(af));
    auto mdh = oracle::max_weight(dh);
    auto maf = oracle::max_weight(af);
    auto mtc = oracle::max_weight(tc);
    if (mdh >= 0) REQUIRE(max_weight_dual_horn(dh) == std::optional<std::size_t>(static_cast<std::size_t>(mdh)));
    else REQUIRE_FALSE(max_weight_dual_horn(dh));
    for (std::int64_t w = 0; w <= static_cast<std::int64_t>(n); ++w) {
      REQUIRE(kDualHorn.decide(dh, w) == (mdh >= w));
      REQUIRE(kAffine.decide(af, w) == (maf >= w));
      REQUIRE(kBranch.decide(tc, w) == (mtc >= w));
      REQUIRE(kBrute.decide(tc, w) == (mtc >= w));
    }
  }
}

TEST_CASE("enumerate_maxones worked examples", "[maxones][enumerate]") {
  SECTION("x0 or x1, k = 1: true-first, highest variable first") {
    auto got = enumerate_maxones(kDualHorn, formula(2, {{"OR", {0, 1}}}), 1).collect();
    CHECK(got == std::vector<Model>{{0, 1}, {1}, {0}});
  }
  SECTION("empty formula, n = 2, k = 0 yields all four models") {
    auto got = enumerate_maxones(kDualHorn, formula(2, {}), 0).collect();
    CHECK(got == std::vector<Model>{{0, 1}, {1}, {0}, {}});
  }
  SECTION("k above n gives nothing") {
    CHECK(enumerate_maxones(kDualHorn, formula(2, {{"OR", {0, 1}}}), 3).collect().empty());
  }
  SECTION("negative k behaves like zero") {
    CHECK(enumerate_maxones(kBrute, formula(1, {}), -2).collect().size() == 2);
  }
  SECTION("inapplicable oracle is rejected up front") {
    CHECK_THROWS_AS(enumerate_maxones(kAffine, formula(2, {{"OR", {0, 1}}}), 1), PreconditionError);
  }
}

TEST_CASE("enumerate_maxones matches filtered brute force; no dead branches", "[maxones][enumerate][oracle]") {
  for (std::uint64_t seed = 0; seed < 60; ++seed) {
    std::size_t n = 1 + seed % 10;
    struct Case {
      GammaFormula phi;
      WeightOracle oracle;
    };
    std::vector<Case> cases{{gen::random_dual_horn_formula(n, seed), kDualHorn},
                            {gen::random_affine_formula(n, seed), kAffine},
                            {gen::random_two_clause_formula(n, seed), kBranch}};
    for (auto& c : cases) {
      for (std::int64_t k = 0; k <= static_cast<std::int64_t>(n); ++k) {
        auto trace = std::make_shared<SearchTrace>();
        auto got = enumerate_maxones(c.oracle, c.phi, k, trace).collect();
        std::set<Model> as_set(got.begin(), got.end());
        REQUIRE(as_set.size() == got.size());
        REQUIRE(as_set == expected_models(c.phi, k));
        REQUIRE(trace->dead_branches() == 0);
      }
    }
  }
}

TEST_CASE("auto oracle selection prefers the specialised procedures", "[maxones]") {
  CHECK(auto_select_oracle(formula(2, {{"OR", {0, 1}}})).kind() == OracleKind::dual_horn_propagation);
  CHECK(auto_select_oracle(formula(2, {{"XOR", {0, 1}}})).kind() == OracleKind::affine_gauss);
  CHECK(auto_select_oracle(formula(2, {{"XOR", {0, 1}}, {"OR", {0, 1}}})).kind() == OracleKind::branch_and_bound);
}

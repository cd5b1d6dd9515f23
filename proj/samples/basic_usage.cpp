#include <iostream>

#include "fptenum/fptenum.hpp"

using namespace fptenum;

int main() {
  Graph star(6, {{0, 1}, {0, 2}, {0, 3}, {0, 4}, {0, 5}});
  std::cout << "vertex covers of size <= 2:\n";
  for (const auto& cover : enumerate_all_vcs(star, 2)) {
    for (auto v : cover) std::cout << v << ' ';
    std::cout << '\n';
  }

  ConstraintLanguage lang;
  lang.add("OR", BooleanRelation::from_strings(2, {"01", "10", "11"}));
  GammaFormula phi(std::move(lang), 3);
  phi.add_constraint("OR", {0, 1});
  auto oracle = auto_select_oracle(phi);
  std::cout << "models of weight >= 2 (oracle " << to_string(oracle.kind()) << "):\n";
  for (const auto& m : enumerate_maxones(oracle, phi, 2)) {
    for (auto v : m) std::cout << 'x' << v << ' ';
    std::cout << '\n';
  }

  CnfFormula cnf(3, {Clause({{0, true}, {1, true}, {2, false}})});
  auto run = run_with_profile([](const ParamInstance<CnfFormula>& x) { return generate_sbds(x.payload(), x.parameter()); },
                              ParamInstance<CnfFormula>(cnf, 1, 4));
  std::cout << run.solutions.size() << " Horn backdoors of size 1, max gap " << run.profile.max_gap().count()
            << " ns\n";
}

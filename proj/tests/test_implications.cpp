#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>

#include "propdec/implications.hpp"
#include "propdec/io.hpp"

using namespace propdec;

namespace {

// Independent reachability oracle: boolean-matrix transitive closure over the
// same edge set, against which the worklist search is checked.
std::vector<std::pair<int, Decision>> closure_reach(const OutcomeImplicationGraph& g, int issue,
                                                    Decision d) {
  const int v = g.vertex_count();
  std::vector<std::vector<char>> adj(v, std::vector<char>(v, 0));
  for (int a = 0; a < v; ++a)
    for (int b : g.out_edges[a]) adj[a][b] = 1;
  for (int k = 0; k < v; ++k)
    for (int a = 0; a < v; ++a)
      if (adj[a][k])
        for (int b = 0; b < v; ++b)
          if (adj[k][b]) adj[a][b] = 1;
  std::vector<std::pair<int, Decision>> reach;
  const int source = g.vertex(issue, d);
  for (int b = 0; b < v; ++b)
    if (b != source && adj[source][b]) reach.push_back(g.pair_of(b));
  return reach;
}

}  // namespace

TEST_CASE("fixed decisions by column scan") {
  auto fixed = fixed_decisions({{1, 1, 0, 0}, {1, 1, 1, 0}});
  CHECK(fixed == std::vector<std::pair<int, Decision>>{{0, 1}, {1, 1}, {3, 0}});
  CHECK(fixed_decisions({{1, 0}, {0, 1}}).empty());
  CHECK(fixed_decisions({{1, 0}}).size() == 2);  // singleton fixes everything
  CHECK_THROWS_AS(fixed_decisions({}), std::invalid_argument);
}

TEST_CASE("NFD property") {
  CHECK(has_nfd(make_fixture("prop6-m8").constraint));
  CHECK_FALSE(has_nfd({{0, 1}, {0, 0}}));  // first issue fixed to 0
  CHECK_FALSE(has_nfd({{1, 0}}));
}

TEST_CASE("implication equivalence by enumeration") {
  Instance good = make_fixture("exm-graph");  // constraint built as the satisfying set
  EquivalenceReport report = verify_implication_equivalence(good);
  CHECK(report.equivalent);

  Instance unruly = make_fixture("example-1");
  CHECK_THROWS_AS(verify_implication_equivalence(unruly), std::invalid_argument);

  Instance mismatch = make_fixture("example-1");  // C = {(1,0),(0,1)}
  mismatch.implications = {{0, 1, 1, 0}};         // a1=1 -> a2=0
  mismatch.has_implications = true;
  report = verify_implication_equivalence(mismatch);
  CHECK_FALSE(report.equivalent);
  // (0,0) and (1,1)... only (0,0) and (1,1)? (1,1) falsifies the rule, so the
  // one-sided lists are: satisfying-but-infeasible (0,0); feasible rows both
  // satisfy the rule, so nothing sits on the constraint-only side.
  CHECK(report.only_implications == std::vector<Assignment>{{0, 0}});
  CHECK(report.only_constraint.empty());

  Instance capped = make_fixture("exm-graph");
  CHECK_THROWS_AS(verify_implication_equivalence(capped, 8), CapExceeded);
}

TEST_CASE("graph construction on the worked four-issue example") {
  Instance instance = make_fixture("exm-graph");
  OutcomeImplicationGraph g = build_graph(instance, Outcome{0, 0, 0, 0});
  // edges (a1,1)->(a2,1), (a1,1)->(a3,1), (a2,1)->(a4,1) and nothing else
  CHECK(g.out_edges[g.vertex(0, 1)] == std::vector<int>{g.vertex(1, 1), g.vertex(2, 1)});
  CHECK(g.out_edges[g.vertex(1, 1)] == std::vector<int>{g.vertex(3, 1)});
  int edge_count = 0;
  for (const auto& edges : g.out_edges) edge_count += (int)edges.size();
  CHECK(edge_count == 3);

  auto reach = reachable(g, 0, 1);
  CHECK(reach == std::vector<std::pair<int, Decision>>{{1, 1}, {2, 1}, {3, 1}});
  CHECK(reach.size() == 3);
  CHECK(reachable(g, 2, 1).empty());      // isolated vertex
  CHECK(reachable(g, 1, 1).size() == 1);  // (a2,1) -> (a4,1) only
}

TEST_CASE("rule 2 contrapositive edges on binary issues") {
  Instance instance;
  instance.issue_names = {"a1", "a2"};
  instance.domains = {{"0", "1"}, {"0", "1"}};
  instance.ballots = {{0, 0}};
  instance.constraint = {{1, 0}, {0, 0}, {0, 1}, {1, 1}};
  instance.implications = {{0, 1, 1, 1}};  // (a1,1) -> (a2,1)
  instance = validated(std::move(instance));

  OutcomeImplicationGraph g = build_graph(instance, Outcome{1, 0});
  // rule 1 fires (w2 != 1), rule 2 fires (w1 == 1): (a2,0) -> (a1,0)
  CHECK(g.out_edges[g.vertex(0, 1)] == std::vector<int>{g.vertex(1, 1)});
  CHECK(g.out_edges[g.vertex(1, 0)] == std::vector<int>{g.vertex(0, 0)});
}

TEST_CASE("partial anchors: rule 1 fires on undecided, rule 2 does not") {
  Instance instance = make_fixture("exm-graph");
  PartialOutcome partial = PartialOutcome::all_undecided(4);
  OutcomeImplicationGraph g = build_graph(instance, partial);
  CHECK(reachable(g, 0, 1).size() == 3);  // all three rules fire as rule 1

  partial.decisions[0] = 1;  // decided antecedent triggers rule 2
  g = build_graph(instance, partial);
  CHECK(g.out_edges[g.vertex(1, 0)] == std::vector<int>{g.vertex(0, 0)});
  CHECK(g.out_edges[g.vertex(2, 0)] == std::vector<int>{g.vertex(0, 0)});
}

TEST_CASE("restrictiveness over the constraint") {
  RestrictivenessReport report = restrictiveness(make_fixture("exm-graph"));
  CHECK(report.k == 4);  // max reach 3 at (a1,1) for the all-zero outcome
  CHECK(report.max_reach == 3);
  CHECK(report.consistent);
  CHECK_FALSE(report.vacuous);

  Instance pair_locked;
  pair_locked.issue_names = {"a1", "a2"};
  pair_locked.domains = {{"0", "1"}, {"0", "1"}};
  pair_locked.ballots = {{0, 0}};
  pair_locked.constraint = {{1, 1}, {0, 0}};
  pair_locked.implications = {{0, 1, 1, 1}, {0, 0, 1, 0}};
  pair_locked = validated(std::move(pair_locked));
  CHECK(verify_implication_equivalence(pair_locked).equivalent);
  report = restrictiveness(pair_locked);
  CHECK(report.k == 2);  // each source reaches exactly one vertex

  Instance no_rules = make_fixture("example-1");
  CHECK_THROWS_AS(restrictiveness(no_rules), std::invalid_argument);

  // declared-but-empty rule set: every graph is edgeless
  Instance vacuous;
  vacuous.issue_names = {"a1", "a2"};
  vacuous.domains = {{"0", "1"}, {"0", "1"}};
  vacuous.ballots = {{0, 0}};
  vacuous.constraint = {{0, 0}, {0, 1}, {1, 0}, {1, 1}};
  vacuous.has_implications = true;
  vacuous = validated(std::move(vacuous));
  CHECK(verify_implication_equivalence(vacuous).equivalent);  // full product
  report = restrictiveness(vacuous);
  CHECK(report.vacuous);
  CHECK(report.k == 1);
}

TEST_CASE("worklist reach agrees with matrix closure on random graphs") {
  std::mt19937_64 rng(20240811);
  for (int round = 0; round < 40; ++round) {
    GenSpec spec;
    spec.voters = 2;
    spec.issues = 3 + (int)(rng() % 3);
    spec.profile = GenSpec::Profile::KRestrictive;
    spec.k = 2 + (int)(rng() % 3);
    spec.seed = rng();
    Instance instance = generate_instance(spec);
    for (const Outcome& w : instance.constraint) {
      OutcomeImplicationGraph g = build_graph(instance, w);
      for (int t = 0; t < instance.issue_count(); ++t)
        for (Decision d = 0; d < instance.domain_size(t); ++d)
          CHECK(reachable(g, t, d) == closure_reach(g, t, d));
    }
  }
}

TEST_CASE("fixing a source plus its reach set satisfies the rules on generated instances") {
  std::mt19937_64 rng(77);
  for (int round = 0; round < 30; ++round) {
    GenSpec spec;
    spec.voters = 3;
    spec.issues = 4;
    spec.profile = GenSpec::Profile::KRestrictive;
    spec.k = 4;
    spec.seed = rng();
    Instance instance = generate_instance(spec);
    for (const Outcome& w : instance.constraint) {
      OutcomeImplicationGraph g = build_graph(instance, w);
      for (int t = 0; t < instance.issue_count(); ++t)
        for (Decision d = 0; d < instance.domain_size(t); ++d) {
          if (d == w[t]) continue;
          Assignment moved = w;
          moved[t] = d;
          for (const auto& [ri, rd] : reachable(g, t, d)) moved[ri] = rd;
          CHECK(satisfies_implications(instance, moved));
        }
    }
  }
}

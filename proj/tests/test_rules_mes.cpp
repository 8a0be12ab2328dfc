#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "propdec/axioms.hpp"
#include "propdec/implications.hpp"
#include "propdec/io.hpp"
#include "propdec/rules.hpp"

using namespace propdec;

namespace {

Instance unconstrained_binary(std::vector<Assignment> ballots) {
  Instance instance;
  const int m = (int)ballots.front().size();
  for (int t = 0; t < m; ++t) {
    instance.issue_names.push_back("a" + std::to_string(t + 1));
    instance.domains.push_back({"0", "1"});
  }
  Assignment a(m, 0);
  while (true) {
    instance.constraint.push_back(a);
    int t = m - 1;
    while (t >= 0) {
      if (++a[t] < 2) break;
      a[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
  instance.ballots = std::move(ballots);
  return validated(std::move(instance));
}

Money spent(const RuleTrace& trace, int voter) {
  Money total;
  for (const TraceEvent& raw : trace.events)
    if (const auto* p = std::get_if<PurchaseEvent>(&raw))
      for (const auto& [i, amount] : p->payments)
        if (i == voter) total += amount;
  return total;
}

}  // namespace

TEST_CASE("minimal rho solves the piecewise-linear equation") {
  CHECK(mes_min_rho({Money(2), Money(2)}, Money(2)) == Money(1));
  CHECK(mes_min_rho({Money(2)}, Money(2)) == Money(2));
  CHECK_FALSE(mes_min_rho({Money(1), Money(1)}, Money(3)).has_value());
  CHECK(mes_min_rho({Money(1), Money(3)}, Money(3)) == Money(2));  // cap binds on the poorer voter
  CHECK(mes_min_rho({Money(0), Money(4)}, Money(3)) == Money(3));
  CHECK(mes_min_rho({}, Money(0)) == Money(0));
  CHECK_FALSE(mes_min_rho({}, Money(1)).has_value());
  CHECK(mes_min_rho({Rational(1, 2), Money(2)}, Rational(3, 2)) == Money(1));
  CHECK_THROWS_AS(mes_min_rho({Money(1)}, Money(-1)), std::invalid_argument);
}

TEST_CASE("unit pricing on an agreeing pair of voters") {
  Instance instance = unconstrained_binary({{1, 1}, {1, 1}});
  RuleResult result = run_mes(instance, MesPricing::Unit);
  CHECK(result.outcome == Outcome{1, 1});
  CHECK(result.trace.termination == "all-decided");
  REQUIRE(result.trace.events.size() == 2);
  for (const TraceEvent& raw : result.trace.events) {
    const auto& p = std::get<PurchaseEvent>(raw);
    CHECK(p.lambda == Money(2));
    CHECK(p.rho == Money(1));  // both supporters split the price
  }
  CHECK(result.trace.final_budgets == std::vector<Money>{Money(0), Money(0)});
}

TEST_CASE("unit pricing with opposed voters follows the declared tie-break") {
  // round 1 ties at rho=2 across all four pairs; the lowest issue and then
  // the lowest decision code win, so (a1,0) is bought from voter 2, and the
  // second round can only afford voter 1's (a2,0)
  Instance instance = unconstrained_binary({{1, 0}, {0, 1}});
  RuleResult result = run_mes(instance, MesPricing::Unit);
  CHECK(result.outcome == Outcome{0, 0});
  REQUIRE(result.trace.events.size() == 2);
  const auto& first = std::get<PurchaseEvent>(result.trace.events[0]);
  CHECK(first.issue == 0);
  CHECK(first.decision == 0);
  CHECK(first.rho == Money(2));
  CHECK(first.payments == std::vector<std::pair<int, Money>>{{1, Money(2)}});
  const auto& second = std::get<PurchaseEvent>(result.trace.events[1]);
  CHECK(second.issue == 1);
  CHECK(second.decision == 0);
  CHECK(result.trace.final_budgets == std::vector<Money>{Money(0), Money(0)});
}

TEST_CASE("a single voter funds their own feasible ballot") {
  Instance instance;
  instance.issue_names = {"a1", "a2", "a3"};
  instance.domains = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
  instance.ballots = {{1, 0, 1}};
  instance.constraint = {{0, 0, 0}, {1, 0, 1}, {1, 1, 1}};
  instance = validated(std::move(instance));
  RuleResult result = run_mes(instance, MesPricing::Unit);
  CHECK(result.outcome == Outcome{1, 0, 1});
}

TEST_CASE("early stop completes to the smallest consistent feasible outcome") {
  Instance instance;
  instance.issue_names = {"a1", "a2"};
  instance.domains = {{"0", "1"}, {"0", "1"}};
  instance.ballots = {{1, 1}};
  instance.constraint = {{0, 0}, {0, 1}};
  instance = validated(std::move(instance));
  RuleResult result = run_mes(instance, MesPricing::Unit);
  // (a2,1) is the only affordable purchase; a1 then completes to 0
  CHECK(result.trace.termination == "no-affordable-pair");
  CHECK(result.outcome == Outcome{0, 1});
  const auto& completion = std::get<CompletionEvent>(result.trace.events.back());
  CHECK(completion.assigned == std::vector<std::pair<int, Decision>>{{0, 0}});
  CHECK(result.trace.final_budgets == std::vector<Money>{Money(1)});
}

TEST_CASE("fixed pricing charges for the reach set and fixes it") {
  Instance instance = make_fixture("exm-graph");  // ballots all-0 and all-1
  RuleResult result = run_mes(instance, MesPricing::Fixed);
  // hand simulation: (a1,0) and (a2,0) go to the all-zero voter at rho=2,
  // the all-one voter then affords (a3,1) and (a4,1)
  CHECK(result.outcome == Outcome{0, 0, 1, 1});
  REQUIRE(result.trace.events.size() == 4);
  const auto& first = std::get<PurchaseEvent>(result.trace.events[0]);
  CHECK(first.issue == 0);
  CHECK(first.decision == 0);
  CHECK(first.lambda == Money(2));  // empty reach set prices at n
  CHECK(first.also_fixed.empty());
  CHECK(result.trace.final_budgets == std::vector<Money>{Money(0), Money(0)});
  CHECK(instance.in_constraint(result.outcome));
}

TEST_CASE("fixed pricing walks a chain leaf-first when the leaves stay eligible") {
  // single voter wanting all-ones: leaf pairs price at n while the chain head
  // prices at n*(reach+1), so the run buys upward from the leaves
  Instance instance = make_fixture("exm-graph");
  instance.ballots = {{1, 1, 1, 1}};
  instance = validated(std::move(instance));
  RuleResult result = run_mes(instance, MesPricing::Fixed);
  CHECK(result.outcome == Outcome{1, 1, 1, 1});
  REQUIRE(result.trace.events.size() == 4);
  const auto& first = std::get<PurchaseEvent>(result.trace.events[0]);
  CHECK(first.issue == 2);  // (a3,1): empty reach, lambda = n = 1
  CHECK(first.lambda == Money(1));
  CHECK(first.also_fixed.empty());
  CHECK(result.trace.final_budgets == std::vector<Money>{Money(0)});
}

TEST_CASE("fixed pricing fixes the reach set along with the purchase") {
  // a1 tracks a2 and mirrors a3: the two feasible outcomes differ everywhere
  Instance instance;
  instance.issue_names = {"a1", "a2", "a3"};
  instance.domains = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
  instance.ballots = {{0, 0, 1}};
  instance.constraint = {{1, 1, 0}, {0, 0, 1}};
  instance.implications = {
      {0, 1, 1, 1}, {1, 1, 0, 1}, {0, 0, 2, 1}, {2, 1, 0, 0}, {0, 1, 2, 0}, {1, 0, 0, 0},
  };
  instance = validated(std::move(instance));
  REQUIRE(verify_implication_equivalence(instance).equivalent);

  RuleResult result = run_mes(instance, MesPricing::Fixed);
  CHECK(result.outcome == Outcome{0, 0, 1});
  REQUIRE(result.trace.events.size() == 2);
  const auto& first = std::get<PurchaseEvent>(result.trace.events[0]);
  CHECK(first.issue == 0);
  CHECK(first.decision == 0);
  CHECK(first.lambda == Money(2));  // source plus one reached pair
  CHECK(first.also_fixed == std::vector<std::pair<int, Decision>>{{2, 1}});
  const auto& second = std::get<PurchaseEvent>(result.trace.events[1]);
  CHECK(second.issue == 1);
  CHECK(second.lambda == Money(1));  // the chain is settled, a2 goes at n
  CHECK(result.trace.final_budgets == std::vector<Money>{Money(0)});
}

TEST_CASE("fixed pricing requires an implication set") {
  Instance instance = make_fixture("example-1");
  CHECK_THROWS_AS(run_mes(instance, MesPricing::Fixed), std::invalid_argument);
}

TEST_CASE("budget conservation and replay integrity on random instances") {
  std::mt19937_64 rng(616);
  for (int round = 0; round < 60; ++round) {
    GenSpec spec;
    spec.voters = 1 + (int)(rng() % 5);
    spec.issues = 2 + (int)(rng() % 3);
    bool fixed = (rng() % 2) == 0;
    if (fixed) {
      spec.profile = GenSpec::Profile::KRestrictive;
      spec.k = 2 + (int)(rng() % 3);
    } else {
      spec.profile = GenSpec::Profile::RandomC;
      spec.constraint_size = 2 + (int)(rng() % (spec.issues == 2 ? 3 : 5));
    }
    spec.seed = rng();
    Instance instance = generate_instance(spec);
    RuleResult result = run_mes(instance, fixed ? MesPricing::Fixed : MesPricing::Unit);
    CHECK(instance.in_constraint(result.outcome));
    check_trace_integrity(instance, result.trace);
    for (int i = 0; i < instance.voter_count(); ++i)
      CHECK(spent(result.trace, i) + result.trace.final_budgets[i] ==
            Money(instance.issue_count()));
    // every purchase kept the partial outcome extendable: replay validates
    // structure; feasibility of the result implies the runs never wedged
  }
}

TEST_CASE("unit-pricing output provides relaxed cohesive EJR on unconstrained binary instances") {
  std::mt19937_64 rng(1010);
  for (int round = 0; round < 40; ++round) {
    int n = 1 + (int)(rng() % 5);
    int m = 2 + (int)(rng() % 3);
    std::vector<Assignment> ballots;
    for (int i = 0; i < n; ++i) {
      Assignment b(m);
      for (int t = 0; t < m; ++t) b[t] = (Decision)(rng() % 2);
      ballots.push_back(b);
    }
    Instance instance = unconstrained_binary(std::move(ballots));
    RuleResult result = run_mes(instance, MesPricing::Unit);
    CHECK(check_cohesive_ejr(instance, result.outcome, 1).satisfied);
  }
}

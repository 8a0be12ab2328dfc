#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <random>

#include "propdec/io.hpp"
#include "propdec/rules.hpp"

using namespace propdec;

TEST_CASE("pav score sums harmonic prefixes") {
  Instance sec5 = make_fixture("sec5-agr");
  CHECK(pav_score(sec5, {1, 1, 0, 0}) == Money(3));  // both voters at satisfaction 2
  CHECK(pav_score(sec5, {1, 1, 1, 0}) == Rational(17, 6));

  Instance ex1 = make_fixture("example-1");
  CHECK(pav_score(ex1, {1, 0}) == Rational(3, 2));  // sat 2 and sat 0

  Instance lone;
  lone.issue_names = {"a1", "a2", "a3"};
  lone.domains = {{"0", "1"}, {"0", "1"}, {"0", "1"}};
  lone.ballots = {{1, 1, 1}};
  lone.constraint = {{1, 1, 1}};
  lone = validated(std::move(lone));
  CHECK(pav_score(lone, {1, 1, 1}) == Rational(11, 6));  // 1 + 1/2 + 1/3

  Instance zero = make_fixture("prop3");
  CHECK(pav_score(zero, {0, 0}) == Money(1));  // sats 0 and 1
}

TEST_CASE("local search stays put below the improvement floor") {
  Instance prop3 = make_fixture("prop3");
  // moving (0,0) -> (0,1) trades +1 against -1 in satisfaction: zero gain
  RuleResult result = run_ls_pav(prop3, {0, 0});
  CHECK(result.outcome == Outcome{0, 0});
  CHECK(result.trace.events.empty());
  CHECK(result.trace.termination == "local-optimum");
}

TEST_CASE("local search keeps a PAV-maximal start") {
  Instance sec5 = make_fixture("sec5-agr");
  RuleResult result = run_ls_pav(sec5, {1, 1, 0, 0});
  CHECK(result.outcome == Outcome{1, 1, 0, 0});
  CHECK(result.trace.events.empty());
}

TEST_CASE("local search takes the worked one-step improvement") {
  // gain 3 - 17/6 = 1/6 >= n/m^2 = 1/8, then no further move
  Instance sec5 = make_fixture("sec5-agr");
  RuleResult result = run_ls_pav(sec5, {1, 1, 1, 0});
  CHECK(result.outcome == Outcome{1, 1, 0, 0});
  REQUIRE(result.trace.events.size() == 1);
  const auto& flip = std::get<FlipEvent>(result.trace.events[0]);
  CHECK(flip.issues == std::vector<int>{2});
  CHECK(flip.pav_gain == Rational(1, 6));
  check_trace_integrity(sec5, result.trace);
}

TEST_CASE("local search rejects an infeasible start") {
  Instance sec5 = make_fixture("sec5-agr");
  CHECK_THROWS_AS(run_ls_pav(sec5, {0, 0, 0, 0}), std::invalid_argument);
}

TEST_CASE("score climbs by at least n over m squared per step") {
  std::mt19937_64 rng(321);
  for (int round = 0; round < 80; ++round) {
    GenSpec spec;
    spec.voters = 2 + (int)(rng() % 5);
    spec.issues = 2 + (int)(rng() % 3);
    spec.profile = GenSpec::Profile::RandomC;
    spec.constraint_size = 2 + (int)(rng() % (spec.issues == 2 ? 3 : 5));
    spec.seed = rng();
    Instance instance = generate_instance(spec);
    const Outcome& initial = instance.constraint[rng() % instance.constraint.size()];
    RuleResult result = run_ls_pav(instance, initial);
    CHECK(instance.in_constraint(result.outcome));
    check_trace_integrity(instance, result.trace);

    const int n = instance.voter_count();
    const int m = instance.issue_count();
    const Rational floor = Rational(n) / Rational((std::int64_t)m * m);
    Rational score = pav_score(instance, initial);
    for (const TraceEvent& raw : result.trace.events) {
      const auto& flip = std::get<FlipEvent>(raw);
      CHECK(flip.pav_gain >= floor);
      score += flip.pav_gain;
    }
    CHECK(score == pav_score(instance, result.outcome));

    // step-count bound: gains of at least n/m^2 cannot exceed the score span
    Rational span = pav_score(instance, result.outcome) - pav_score(instance, initial);
    CHECK(Rational((std::int64_t)result.trace.events.size()) * floor <= span);
  }
}

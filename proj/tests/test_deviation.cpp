#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <algorithm>
#include <random>
#include <set>

#include "propdec/deviation.hpp"
#include "propdec/io.hpp"
#include "propdec/oracle.hpp"

using namespace propdec;

TEST_CASE("is_deviation checks the three conditions") {
  Instance prop3 = make_fixture("prop3");  // ballots (1,1),(1,0); C={(0,1),(0,0)}
  CHECK(is_deviation(prop3, {0}, {1}, {0, 0}));           // voter 1 flips a2 to (0,1)
  CHECK_FALSE(is_deviation(prop3, {1}, {1}, {0, 0}));     // voter 2 agrees with w on a2
  CHECK_FALSE(is_deviation(prop3, {0, 1}, {1}, {0, 0}));  // group splits on a2
  CHECK_FALSE(is_deviation(prop3, {0}, {0}, {0, 0}));     // target (1,0) infeasible

  Instance ex1 = make_fixture("example-1");
  CHECK(is_deviation(ex1, {1}, {0, 1}, {1, 0}));  // voter 2 moves to (0,1)
  CHECK_FALSE(is_deviation(ex1, {0}, {0, 1}, {1, 0}));

  CHECK_THROWS_AS(is_deviation(prop3, {0}, {1}, {1, 1}), std::invalid_argument);  // w infeasible
  CHECK_FALSE(is_deviation(prop3, {}, {1}, {0, 0}));
  CHECK_FALSE(is_deviation(prop3, {0}, {}, {0, 0}));
}

TEST_CASE("enumerate_deviations emits maximal witnesses per target") {
  Instance prop3 = make_fixture("prop3");
  auto witnesses = enumerate_deviations(prop3, {0, 0});
  REQUIRE(witnesses.size() == 1);
  CHECK(witnesses[0].group == std::vector<int>{0});
  CHECK(witnesses[0].issues == std::vector<int>{1});
  CHECK(witnesses[0].target == Outcome{0, 1});

  Instance single;
  single.issue_names = {"a1"};
  single.domains = {{"0", "1"}};
  single.ballots = {{1}};
  single.constraint = {{0}};
  single = validated(std::move(single));
  CHECK(enumerate_deviations(single, {0}).empty());  // |C| = 1

  Instance prop6 = make_fixture("prop6-m8");
  auto from_w1 = enumerate_deviations(prop6, prop6.constraint[0]);
  REQUIRE(from_w1.size() == 3);  // toward w2, w3, w4 in input order
  // maximal groups: the all-ones voter rides along on both partial flips
  CHECK(from_w1[0].group == std::vector<int>{1, 2});
  CHECK(from_w1[0].issues == std::vector<int>{2, 3, 4, 5, 6, 7});
  CHECK(from_w1[1].group == std::vector<int>{2});
  CHECK(from_w1[1].issues.size() == 8);
  CHECK(from_w1[2].group == std::vector<int>{2, 3});
  CHECK(from_w1[2].issues == std::vector<int>{0, 1});
}

TEST_CASE("every emitted witness passes is_deviation and is maximal") {
  std::mt19937_64 rng(4242);
  for (int round = 0; round < 120; ++round) {
    GenSpec spec;
    spec.voters = 2 + (int)(rng() % 4);
    spec.issues = 2 + (int)(rng() % 3);
    spec.profile = GenSpec::Profile::RandomC;
    spec.constraint_size = 2 + (int)(rng() % (spec.issues == 2 ? 3 : 5));
    spec.seed = rng();
    Instance instance = generate_instance(spec);
    for (const Outcome& w : instance.constraint) {
      for (const DeviationWitness& witness : enumerate_deviations(instance, w)) {
        CHECK(is_deviation(instance, witness.group, witness.issues, w));
        CHECK(instance.in_constraint(witness.target));
        // maximality: nobody outside agrees with the target on all of S
        for (int i = 0; i < instance.voter_count(); ++i) {
          if (std::binary_search(witness.group.begin(), witness.group.end(), i)) continue;
          bool agrees = true;
          for (int t : witness.issues)
            if (instance.ballots[i][t] != witness.target[t]) agrees = false;
          CHECK_FALSE(agrees);
        }
        // the target differs from the source exactly on S
        for (int t = 0; t < instance.issue_count(); ++t) {
          bool in_s = std::binary_search(witness.issues.begin(), witness.issues.end(), t);
          CHECK((witness.target[t] != w[t]) == in_s);
        }
      }
    }
  }
}

TEST_CASE("brute force equals the subgroup closure of the maximal witnesses") {
  std::mt19937_64 rng(99);
  for (int round = 0; round < 60; ++round) {
    GenSpec spec;
    spec.voters = 2 + (int)(rng() % 3);
    spec.issues = 2 + (int)(rng() % 3);
    spec.profile = GenSpec::Profile::RandomC;
    spec.constraint_size = 2 + (int)(rng() % (spec.issues == 2 ? 3 : 5));
    spec.seed = rng();
    Instance instance = generate_instance(spec);
    const Outcome& w = instance.constraint[rng() % instance.constraint.size()];

    std::set<std::pair<std::vector<int>, std::vector<int>>> closure;
    for (const DeviationWitness& witness : enumerate_deviations(instance, w)) {
      const int g = (int)witness.group.size();
      for (unsigned bits = 1; bits < (1u << g); ++bits) {
        std::vector<int> sub;
        for (int i = 0; i < g; ++i)
          if (bits & (1u << i)) sub.push_back(witness.group[i]);
        closure.insert({sub, witness.issues});
      }
    }
    std::set<std::pair<std::vector<int>, std::vector<int>>> brute;
    for (const DeviationWitness& witness : brute_force_deviations(instance, w))
      brute.insert({witness.group, witness.issues});
    CHECK(brute == closure);
  }
}

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propdec/axioms.hpp"
#include "propdec/deviation.hpp"
#include "propdec/model.hpp"
#include "propdec/rules.hpp"

namespace propdec {

// Per-voter payment functions and per-(issue, decision) prices. All amounts
// are non-negative exact rationals; dimensions follow the instance.
struct PriceSystem {
  std::vector<std::vector<std::vector<Money>>> payments;  // [voter][issue][decision]
  std::vector<std::vector<Money>> prices;                 // [issue][decision]

  static PriceSystem zeros(const Instance& instance);
  Money spent(int voter) const;
};

struct PriceCheckReport {
  bool ok = false;
  std::vector<std::string> violated;  // condition tags P1..P5 with details
  std::optional<DeviationWitness> p5_witness;
};

// Checks conditions P1-P5 exactly:
//   P1 voters only pay for decisions their ballot agrees with;
//   P2 nobody spends more than the budget m;
//   P3 payments for each chosen decision sum to its price;
//   P4 unchosen decisions collect nothing;
//   P5 no deviating group's leftover budget strictly exceeds the price of
//      every decision it wants to flip. Maximal witness groups suffice:
//      leftover only grows with the group.
PriceCheckReport verify_price_system(const Instance& instance, const Outcome& w,
                                     const PriceSystem& ps);

// Reads a price system off a finished auction-rule trace: prices are each
// issue's final price (applied to all of the issue's decisions), payments are
// the money still held in the pots at termination.
std::pair<Outcome, PriceSystem> extract_price_system(const Instance& instance,
                                                     const RuleTrace& trace);

struct BoundViolation {
  std::vector<int> cohesive_issues;   // T
  std::vector<int> deviation_issues;  // S
  std::vector<int> group;
  Money max_price;  // q
  Rational group_satisfaction;
  Rational required;
};

struct BoundReport {
  bool holds = true;
  std::optional<BoundViolation> violation;
};

// For every T-cohesive group with a feasible deviation S inside T, asserts
//   sum of member satisfactions >= n/q * |T| - |S|,  q = max price over S.
// A witness priced entirely at zero makes the bound unsatisfiable and is
// reported as a violation with q = 0.
BoundReport check_priceable_bound(const Instance& instance, const Outcome& w,
                                  const PriceSystem& ps, const CheckOptions& options = {});

}  // namespace propdec

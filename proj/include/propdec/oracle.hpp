#pragma once

#include <vector>

#include "propdec/axioms.hpp"
#include "propdec/deviation.hpp"
#include "propdec/model.hpp"

namespace propdec {

// Reference implementations by exhaustive quantifier evaluation. These define
// correctness for the fast paths and only run at desk scale.
struct OracleCaps {
  int max_voters = 8;
  int max_issues = 6;
  int max_constraint = 16;
};

// Every (group, S) pair over the full powerset product passing is_deviation.
// Ordered by (group, S) as sorted index lists.
std::vector<DeviationWitness> brute_force_deviations(const Instance& instance, const Outcome& w,
                                                     const OracleCaps& caps = {});

// Direct evaluation over all voter subsets, all T, all S.
AxiomVerdict brute_force_axiom_check(const Instance& instance, const Outcome& w,
                                     const AxiomSpec& spec, const OracleCaps& caps = {});

struct SearchReport {
  AxiomSpec axiom;
  std::vector<std::pair<Outcome, bool>> verdicts;  // one entry per member of C, input order
  std::vector<Outcome> satisfying;
};

// Evaluates the axiom checker on every feasible outcome.
SearchReport exists_satisfying_outcome(const Instance& instance, const AxiomSpec& spec,
                                       const OracleCaps& caps = {});

}  // namespace propdec

#pragma once

#include <vector>

#include "propdec/model.hpp"

namespace propdec {

// A feasible group deviation from outcome `source`: every group member
// disagrees with `source` on every issue of `issues`, all members agree with
// one another there, and rewriting those issues with the members' common
// decisions yields `target`, a member of the constraint. `target` differs
// from `source` exactly on `issues`.
struct DeviationWitness {
  std::vector<int> group;   // ascending voter indices
  std::vector<int> issues;  // ascending, non-empty
  Outcome target;
  Outcome source;
};

// The three conditions of the definition, checked directly.
bool is_deviation(const Instance& instance, const std::vector<int>& group,
                  const std::vector<int>& issues, const Outcome& w);

// One witness per target outcome in the constraint that some voter group can
// reach: the issue set is the diff against `w` and the group is the maximal
// set of voters agreeing with the target on that diff. Ordered by the
// target's position in the constraint's input order. Subgroup witnesses are
// implied and left to the callers that need them.
std::vector<DeviationWitness> enumerate_deviations(const Instance& instance, const Outcome& w);

}  // namespace propdec

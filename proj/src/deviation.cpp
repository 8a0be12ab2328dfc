#include "propdec/deviation.hpp"

#include <stdexcept>

namespace propdec {

bool is_deviation(const Instance& instance, const std::vector<int>& group,
                  const std::vector<int>& issues, const Outcome& w) {
  if (!instance.in_constraint(w)) throw std::invalid_argument("is_deviation: outcome not feasible");
  if (group.empty() || issues.empty()) return false;

  const Assignment& first = instance.ballots[group.front()];
  for (int i : group) {
    const Assignment& b = instance.ballots[i];
    for (int t : issues) {
      if (b[t] != first[t]) return false;  // group not unanimous on the issue set
      if (b[t] == w[t]) return false;      // member agrees with w somewhere in S
    }
  }
  return instance.in_constraint(fix_decisions(w, issues, first));
}

std::vector<DeviationWitness> enumerate_deviations(const Instance& instance, const Outcome& w) {
  if (!instance.in_constraint(w))
    throw std::invalid_argument("enumerate_deviations: outcome not feasible");
  std::vector<DeviationWitness> witnesses;
  for (const Assignment& target : instance.constraint) {
    if (target == w) continue;
    std::vector<int> diff;
    for (int t = 0; t < instance.issue_count(); ++t)
      if (target[t] != w[t]) diff.push_back(t);
    std::vector<int> group;
    for (int i = 0; i < instance.voter_count(); ++i) {
      bool agrees = true;
      for (int t : diff)
        if (instance.ballots[i][t] != target[t]) {
          agrees = false;
          break;
        }
      if (agrees) group.push_back(i);
    }
    if (group.empty()) continue;
    witnesses.push_back({group, diff, target, w});
  }
  return witnesses;
}

}  // namespace propdec

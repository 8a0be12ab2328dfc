#pragma once

#include <map>
#include <vector>

#include "propdec/model.hpp"

// Internal enumeration helpers shared by the checkers, the greedy partition
// and the priceability bound.
namespace propdec::detail {

// Non-empty subsets of {0..m-1} by size then lexicographically; stops when
// the callback returns true.
template <typename Fn>
bool for_each_issue_subset(int m, Fn&& fn) {
  std::vector<int> subset;
  for (int size = 1; size <= m; ++size) {
    subset.assign(size, 0);
    for (int i = 0; i < size; ++i) subset[i] = i;
    while (true) {
      if (fn(subset)) return true;
      int i = size - 1;
      while (i >= 0 && subset[i] == m - size + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < size; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return false;
}

// Voters keyed by their ballot's restriction to the given issues, keys in
// lexicographic code order. Every agreeing group lives inside one entry.
inline std::map<Assignment, std::vector<int>> group_by_restriction(
    const Instance& instance, const std::vector<int>& issues) {
  std::map<Assignment, std::vector<int>> groups;
  for (int i = 0; i < instance.voter_count(); ++i) {
    Assignment key(issues.size());
    for (int j = 0; j < (int)issues.size(); ++j) key[j] = instance.ballots[i][issues[j]];
    groups[key].push_back(i);
  }
  return groups;
}

}  // namespace propdec::detail

#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "propdec/model.hpp"

namespace propdec {

// Directed graph over all (issue, decision) pairs, anchored to a (possibly
// partial) outcome. Edges follow the two construction rules:
//   1. rule (x,dx) -> (y,dy) contributes edge (x,dx) -> (y,dy) when the
//      anchor does not already decide y as dy (undecided y counts);
//   2. when the anchor decides x as dx, the rule contributes edges
//      (y,dy*) -> (x,dx*) for every dy* != dy and dx* != dx. Undecided x
//      never fires this rule.
struct OutcomeImplicationGraph {
  std::vector<int> vertex_offset;           // per issue, prefix sums of domain sizes
  std::vector<std::vector<int>> out_edges;  // by vertex id
  PartialOutcome anchor;

  int vertex(int issue, Decision d) const { return vertex_offset[issue] + d; }
  std::pair<int, Decision> pair_of(int vertex_id) const;
  int vertex_count() const { return out_edges.empty() ? 0 : (int)out_edges.size(); }
};

// I_fix: all (issue, decision) pairs whose decision is shared by every
// outcome in the given non-empty set.
std::vector<std::pair<int, Decision>> fixed_decisions(const std::vector<Assignment>& outcomes);

bool has_nfd(const std::vector<Assignment>& constraint);

// True when the assignment satisfies every implication rule of the instance.
bool satisfies_implications(const Instance& instance, const Assignment& a);

struct EquivalenceReport {
  bool equivalent = false;
  // Assignments on exactly one side, in lexicographic code order.
  std::vector<Assignment> only_implications;  // satisfy rules but not in C
  std::vector<Assignment> only_constraint;    // in C but falsify some rule
};

// Checks { assignments satisfying all rules } == constraint by enumerating
// the full domain product. Throws CapExceeded past `cap` assignments.
EquivalenceReport verify_implication_equivalence(const Instance& instance,
                                                 std::uint64_t cap = 1u << 20);

OutcomeImplicationGraph build_graph(const Instance& instance, const PartialOutcome& anchor);
OutcomeImplicationGraph build_graph(const Instance& instance, const Outcome& anchor);

// All vertices on a path from the source, source excluded (even when it lies
// on a cycle through itself). Sorted by (issue, decision).
std::vector<std::pair<int, Decision>> reachable(const OutcomeImplicationGraph& graph, int issue,
                                                Decision d);

struct RestrictivenessReport {
  int k = 1;
  int max_reach = 0;
  bool vacuous = false;      // max reach 0: no effective implication anywhere in C
  bool consistent = true;    // false when some reach set fixes one issue two ways
  std::string inconsistency; // human-readable witness when not consistent
};

// k with k-1 = max reach over all w in C and all source pairs. Requires an
// implication set. Reports k=1 with a warning when the max is 0, and flags
// reach sets that name two decisions for the same issue instead of guessing.
RestrictivenessReport restrictiveness(const Instance& instance);

struct CapExceeded : std::runtime_error {
  explicit CapExceeded(const std::string& what) : std::runtime_error(what) {}
};

}  // namespace propdec

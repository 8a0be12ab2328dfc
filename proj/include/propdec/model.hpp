#pragma once

#include <string>
#include <vector>

namespace propdec {

// Decisions are small integer codes indexing the issue's domain-label table;
// all comparisons happen on codes. Issue and voter indices are 0-based in the
// API and 1-based in user-facing output.
using Decision = int;

// One decision per issue. Used for ballots, feasible outcomes and deviation
// targets alike; feasibility is membership in Instance::constraint.
using Assignment = std::vector<Decision>;
using Outcome = Assignment;

constexpr Decision kUndecided = -1;

// A per-issue assignment where some issues may still be open. Needed by the
// round structure of the equal-shares rule.
struct PartialOutcome {
  std::vector<Decision> decisions;  // kUndecided where open

  static PartialOutcome all_undecided(int issue_count) {
    PartialOutcome p;
    p.decisions.assign(issue_count, kUndecided);
    return p;
  }
  bool decided(int issue) const { return decisions[issue] != kUndecided; }
  bool complete() const {
    for (Decision d : decisions)
      if (d == kUndecided) return false;
    return true;
  }
};

struct ImplicationRule {
  int antecedent_issue = 0;
  Decision antecedent_decision = 0;
  int consequent_issue = 0;
  Decision consequent_decision = 0;

  friend bool operator==(const ImplicationRule& a, const ImplicationRule& b) {
    return a.antecedent_issue == b.antecedent_issue &&
           a.antecedent_decision == b.antecedent_decision &&
           a.consequent_issue == b.consequent_issue &&
           a.consequent_decision == b.consequent_decision;
  }
};

// An election instance: issues with finite domains, one full ballot per voter,
// and the constraint as an explicit duplicate-free list of feasible outcomes.
// Ballots need not be feasible; `ballots_feasible` records whether they all
// are, since some rule guarantees require it. Instances are immutable after
// validation and every operation on them is a pure function.
struct Instance {
  std::vector<std::string> issue_names;
  std::vector<std::vector<std::string>> domains;  // label per decision code
  std::vector<Assignment> ballots;
  std::vector<Assignment> constraint;  // input order is kept; it breaks ties
  std::vector<ImplicationRule> implications;
  bool has_implications = false;
  bool ballots_feasible = false;
  std::string name;

  int issue_count() const { return (int)domains.size(); }
  int voter_count() const { return (int)ballots.size(); }
  int domain_size(int issue) const { return (int)domains[issue].size(); }
  bool in_constraint(const Assignment& w) const {
    for (const Assignment& c : constraint)
      if (c == w) return true;
    return false;
  }
};

// { t | v[t] == v2[t] }, ascending. Throws on length mismatch.
std::vector<int> agreement(const Assignment& v, const Assignment& v2);

// |agreement(ballot_i, w)|.
int satisfaction(const Instance& instance, int voter, const Outcome& w);

// Copy of `w` with the decisions on `issues` replaced by those of `v`.
// No feasibility check.
Outcome fix_decisions(const Outcome& w, const std::vector<int>& issues, const Assignment& v);

// N(a_t, d): voters whose ballot picks `d` on `issue`, ascending.
std::vector<int> supporters(const Instance& instance, int issue, Decision d);

// All invariant violations, empty when the instance is valid. Also refreshes
// the ballots_feasible flag.
std::vector<std::string> validate_instance(Instance& instance);

// Throwing convenience used by fixtures and generators.
Instance validated(Instance instance);

// True when some member of the constraint agrees with every decided entry.
bool extendable(const Instance& instance, const PartialOutcome& partial);

// Reads an assignment against the instance's domains; true when every entry
// is a valid code.
bool assignment_in_domains(const Instance& instance, const Assignment& a);

std::string format_assignment(const Instance& instance, const Assignment& a);

}  // namespace propdec

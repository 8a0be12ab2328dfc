#include "propdec/axioms.hpp"

#include <algorithm>
#include <stdexcept>

#include "enum_util.hpp"
#include "propdec/implications.hpp"

namespace propdec {

using detail::for_each_issue_subset;
using detail::group_by_restriction;

std::string AxiomSpec::name() const {
  switch (kind) {
    case Kind::CohJr:
      return "cohJR";
    case Kind::CohesiveEjr:
      return offset == 0 ? "cohEJR" : "cohEJR-" + std::to_string(offset);
    case Kind::AgreementEjr: {
      std::string n;
      if (alpha != Rational(1)) n += alpha.str() + "-";
      n += "agrEJR";
      if (beta != Rational(0)) n += "-" + beta.str();
      return n;
    }
  }
  return "?";
}

namespace {

struct TargetScan {
  std::vector<int> issues;  // diff against w, ascending
  Outcome target;
};

// Feasible targets reachable by rewriting a subset of `disagreeing` with the
// group's common decisions: target must differ from w inside `disagreeing`
// only and carry the group's decision on every differing issue. Input order
// of the constraint is kept for deterministic witnesses.
std::vector<TargetScan> admissible_targets(const Instance& instance, const Outcome& w,
                                           const std::vector<int>& issues,
                                           const Assignment& restriction,
                                           const std::vector<char>& disagreeing) {
  std::vector<TargetScan> found;
  for (const Assignment& target : instance.constraint) {
    if (target == w) continue;
    std::vector<int> diff;
    bool ok = true;
    for (int t = 0; t < instance.issue_count() && ok; ++t) {
      if (target[t] == w[t]) continue;
      diff.push_back(t);
      auto pos = std::lower_bound(issues.begin(), issues.end(), t);
      if (pos == issues.end() || *pos != t || !disagreeing[pos - issues.begin()] ||
          target[t] != restriction[pos - issues.begin()])
        ok = false;
    }
    if (ok) found.push_back({std::move(diff), target});
  }
  return found;
}

int max_satisfaction(const Instance& instance, const std::vector<int>& group, const Outcome& w) {
  int best = 0;
  for (int i : group) best = std::max(best, satisfaction(instance, i, w));
  return best;
}

}  // namespace

AxiomVerdict check_cohesive_ejr(const Instance& instance, const Outcome& w, int offset,
                                const CheckOptions& options) {
  if (!instance.in_constraint(w))
    throw std::invalid_argument("check_cohesive_ejr: outcome not feasible");
  if (instance.issue_count() > options.max_issues)
    throw CapExceeded("check_cohesive_ejr: issue count above enumeration cap");

  const int n = instance.voter_count();
  const int m = instance.issue_count();
  AxiomVerdict verdict;

  for_each_issue_subset(m, [&](const std::vector<int>& T) {
    const int threshold = (int)T.size() - offset;
    for (const auto& [restriction, voters] : group_by_restriction(instance, T)) {
      std::vector<int> group;
      for (int i : voters)
        if (satisfaction(instance, i, w) < threshold) group.push_back(i);
      if (group.empty()) continue;
      if ((std::int64_t)group.size() * m < (std::int64_t)T.size() * n) continue;  // not cohesive
      std::vector<char> disagreeing(T.size());
      for (int j = 0; j < (int)T.size(); ++j) disagreeing[j] = restriction[j] != w[T[j]];
      auto targets = admissible_targets(instance, w, T, restriction, disagreeing);
      if (targets.empty()) continue;
      verdict.satisfied = false;
      verdict.witness = AxiomWitness{group, T, targets.front().issues, targets.front().target,
                                     Rational(threshold), max_satisfaction(instance, group, w)};
      return true;
    }
    return false;
  });
  return verdict;
}

AxiomVerdict check_coh_jr(const Instance& instance, const Outcome& w) {
  if (!instance.in_constraint(w)) throw std::invalid_argument("check_coh_jr: outcome not feasible");
  const int n = instance.voter_count();
  const int m = instance.issue_count();
  AxiomVerdict verdict;

  for (int t = 0; t < m && verdict.satisfied; ++t) {
    for (Decision d = 0; d < instance.domain_size(t) && verdict.satisfied; ++d) {
      if (d == w[t]) continue;
      Outcome target = w;
      target[t] = d;
      if (!instance.in_constraint(target)) continue;
      std::vector<int> group;
      for (int i : supporters(instance, t, d))
        if (satisfaction(instance, i, w) == 0) group.push_back(i);
      if (group.empty()) continue;
      if ((std::int64_t)group.size() * m < n) continue;
      verdict.satisfied = false;
      verdict.witness =
          AxiomWitness{group, {t}, {t}, target, Rational(1), max_satisfaction(instance, group, w)};
    }
  }
  return verdict;
}

AxiomVerdict check_agr_ejr(const Instance& instance, const Outcome& w, const Rational& alpha,
                           const Rational& beta, const CheckOptions& options) {
  if (!instance.in_constraint(w)) throw std::invalid_argument("check_agr_ejr: outcome not feasible");
  if (instance.issue_count() > options.max_issues)
    throw CapExceeded("check_agr_ejr: issue count above enumeration cap");
  if (!(alpha > Rational(0)) || alpha > Rational(1))
    throw std::invalid_argument("check_agr_ejr: alpha must lie in (0, 1]");
  if (beta.is_negative()) throw std::invalid_argument("check_agr_ejr: beta must be non-negative");

  const int n = instance.voter_count();
  const int m = instance.issue_count();
  AxiomVerdict verdict;

  for_each_issue_subset(m, [&](const std::vector<int>& T) {
    for (const auto& [restriction, voters] : group_by_restriction(instance, T)) {
      std::vector<char> disagreeing(T.size());
      for (int j = 0; j < (int)T.size(); ++j) disagreeing[j] = restriction[j] != w[T[j]];
      auto targets = admissible_targets(instance, w, T, restriction, disagreeing);
      if (targets.empty()) continue;

      // satisfaction-sorted prefixes suffice: for a fixed group size the
      // deviation conditions do not depend on which agreeing voters join
      std::vector<int> by_sat = voters;
      std::stable_sort(by_sat.begin(), by_sat.end(), [&](int a, int b) {
        return satisfaction(instance, a, w) < satisfaction(instance, b, w);
      });
      for (int s = 1; s <= (int)by_sat.size(); ++s) {
        Rational threshold = alpha * Rational(s, n) * Rational((int)T.size()) - beta;
        if (!(Rational(satisfaction(instance, by_sat[s - 1], w)) < threshold)) continue;
        // |S| <= |T| * s / n, exact
        const TargetScan* chosen = nullptr;
        for (const TargetScan& ts : targets)
          if ((std::int64_t)ts.issues.size() * n <= (std::int64_t)T.size() * s) {
            chosen = &ts;
            break;
          }
        if (!chosen) continue;
        std::vector<int> group(by_sat.begin(), by_sat.begin() + s);
        std::sort(group.begin(), group.end());
        verdict.satisfied = false;
        verdict.witness = AxiomWitness{group, T, chosen->issues, chosen->target, threshold,
                                       max_satisfaction(instance, group, w)};
        return true;
      }
    }
    return false;
  });
  return verdict;
}

AxiomVerdict check_axiom(const Instance& instance, const Outcome& w, const AxiomSpec& spec,
                         const CheckOptions& options) {
  switch (spec.kind) {
    case AxiomSpec::Kind::CohJr:
      return check_coh_jr(instance, w);
    case AxiomSpec::Kind::CohesiveEjr:
      return check_cohesive_ejr(instance, w, spec.offset, options);
    case AxiomSpec::Kind::AgreementEjr:
      return check_agr_ejr(instance, w, spec.alpha, spec.beta, options);
  }
  throw std::logic_error("check_axiom: unknown axiom kind");
}

}  // namespace propdec

#include "propdec/oracle.hpp"

#include <algorithm>
#include <stdexcept>

#include "propdec/implications.hpp"

namespace propdec {

namespace {

void enforce_caps(const Instance& instance, const OracleCaps& caps, const char* op) {
  if (instance.voter_count() > caps.max_voters || instance.issue_count() > caps.max_issues ||
      (int)instance.constraint.size() > caps.max_constraint)
    throw CapExceeded(std::string(op) + ": instance above oracle caps");
}

std::vector<int> bits_to_indices(unsigned bits, int count) {
  std::vector<int> out;
  for (int i = 0; i < count; ++i)
    if (bits & (1u << i)) out.push_back(i);
  return out;
}

bool subset_agreeing(const Instance& instance, const std::vector<int>& group,
                     const std::vector<int>& issues) {
  const Assignment& first = instance.ballots[group.front()];
  for (int i : group)
    for (int t : issues)
      if (instance.ballots[i][t] != first[t]) return false;
  return true;
}

}  // namespace

std::vector<DeviationWitness> brute_force_deviations(const Instance& instance, const Outcome& w,
                                                     const OracleCaps& caps) {
  enforce_caps(instance, caps, "brute_force_deviations");
  if (!instance.in_constraint(w))
    throw std::invalid_argument("brute_force_deviations: outcome not feasible");
  const int n = instance.voter_count();
  const int m = instance.issue_count();
  std::vector<DeviationWitness> found;
  for (unsigned gbits = 1; gbits < (1u << n); ++gbits) {
    std::vector<int> group = bits_to_indices(gbits, n);
    for (unsigned sbits = 1; sbits < (1u << m); ++sbits) {
      std::vector<int> issues = bits_to_indices(sbits, m);
      if (!is_deviation(instance, group, issues, w)) continue;
      found.push_back(
          {group, issues, fix_decisions(w, issues, instance.ballots[group.front()]), w});
    }
  }
  return found;
}

AxiomVerdict brute_force_axiom_check(const Instance& instance, const Outcome& w,
                                     const AxiomSpec& spec, const OracleCaps& caps) {
  enforce_caps(instance, caps, "brute_force_axiom_check");
  if (!instance.in_constraint(w))
    throw std::invalid_argument("brute_force_axiom_check: outcome not feasible");
  const int n = instance.voter_count();
  const int m = instance.issue_count();

  for (unsigned gbits = 1; gbits < (1u << n); ++gbits) {
    std::vector<int> group = bits_to_indices(gbits, n);
    std::vector<int> sats;
    for (int i : group) sats.push_back(satisfaction(instance, i, w));
    const int max_sat = *std::max_element(sats.begin(), sats.end());
    for (unsigned tbits = 1; tbits < (1u << m); ++tbits) {
      std::vector<int> T = bits_to_indices(tbits, m);
      if (!subset_agreeing(instance, group, T)) continue;

      Rational threshold;
      switch (spec.kind) {
        case AxiomSpec::Kind::CohJr:
          if (T.size() != 1) continue;
          if ((std::int64_t)group.size() * m < (std::int64_t)T.size() * n) continue;
          threshold = Rational(1);
          break;
        case AxiomSpec::Kind::CohesiveEjr:
          if ((std::int64_t)group.size() * m < (std::int64_t)T.size() * n) continue;
          threshold = Rational((int)T.size() - spec.offset);
          break;
        case AxiomSpec::Kind::AgreementEjr:
          threshold =
              spec.alpha * Rational((int)group.size(), n) * Rational((int)T.size()) - spec.beta;
          break;
      }
      if (!(Rational(max_sat) < threshold)) continue;

      // some admissible S inside T
      for (unsigned sbits = tbits;; sbits = (sbits - 1) & tbits) {
        if (sbits == 0) break;
        std::vector<int> S = bits_to_indices(sbits, m);
        bool size_ok = true;
        if (spec.kind == AxiomSpec::Kind::CohJr) size_ok = S.size() == 1;
        if (spec.kind == AxiomSpec::Kind::AgreementEjr)
          size_ok = (std::int64_t)S.size() * n <= (std::int64_t)T.size() * (std::int64_t)group.size();
        if (size_ok && is_deviation(instance, group, S, w)) {
          AxiomVerdict verdict;
          verdict.satisfied = false;
          verdict.witness =
              AxiomWitness{group, T, S, fix_decisions(w, S, instance.ballots[group.front()]),
                           threshold, max_sat};
          return verdict;
        }
      }
    }
  }
  return {};
}

SearchReport exists_satisfying_outcome(const Instance& instance, const AxiomSpec& spec,
                                       const OracleCaps& caps) {
  enforce_caps(instance, caps, "exists_satisfying_outcome");
  SearchReport report;
  report.axiom = spec;
  for (const Assignment& w : instance.constraint) {
    bool ok = check_axiom(instance, w, spec).satisfied;
    report.verdicts.push_back({w, ok});
    if (ok) report.satisfying.push_back(w);
  }
  return report;
}

}  // namespace propdec

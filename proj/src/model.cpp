#include "propdec/model.hpp"

#include <algorithm>
#include <set>
#include <stdexcept>

namespace propdec {

std::vector<int> agreement(const Assignment& v, const Assignment& v2) {
  if (v.size() != v2.size())
    throw std::invalid_argument("agreement: assignments cover different issue counts");
  std::vector<int> agree;
  for (int t = 0; t < (int)v.size(); ++t)
    if (v[t] == v2[t]) agree.push_back(t);
  return agree;
}

int satisfaction(const Instance& instance, int voter, const Outcome& w) {
  if (voter < 0 || voter >= instance.voter_count())
    throw std::invalid_argument("satisfaction: invalid voter index");
  return (int)agreement(instance.ballots[voter], w).size();
}

Outcome fix_decisions(const Outcome& w, const std::vector<int>& issues, const Assignment& v) {
  if (w.size() != v.size())
    throw std::invalid_argument("fix_decisions: assignments cover different issue counts");
  Outcome result = w;
  for (int t : issues) {
    if (t < 0 || t >= (int)w.size()) throw std::invalid_argument("fix_decisions: issue out of range");
    result[t] = v[t];
  }
  return result;
}

std::vector<int> supporters(const Instance& instance, int issue, Decision d) {
  if (issue < 0 || issue >= instance.issue_count())
    throw std::invalid_argument("supporters: issue out of range");
  if (d < 0 || d >= instance.domain_size(issue))
    throw std::invalid_argument("supporters: decision not in the issue's domain");
  std::vector<int> voters;
  for (int i = 0; i < instance.voter_count(); ++i)
    if (instance.ballots[i][issue] == d) voters.push_back(i);
  return voters;
}

bool assignment_in_domains(const Instance& instance, const Assignment& a) {
  if ((int)a.size() != instance.issue_count()) return false;
  for (int t = 0; t < instance.issue_count(); ++t)
    if (a[t] < 0 || a[t] >= instance.domain_size(t)) return false;
  return true;
}

std::vector<std::string> validate_instance(Instance& instance) {
  std::vector<std::string> errors;
  const int m = instance.issue_count();

  if (m < 1) errors.push_back("instance must have at least one issue");
  if (instance.issue_names.size() != instance.domains.size())
    errors.push_back("issue name count does not match issue count");
  for (int t = 0; t < m; ++t) {
    if (instance.domain_size(t) < 2)
      errors.push_back("issue " + std::to_string(t + 1) + ": domain must have at least 2 decisions");
    std::set<std::string> labels(instance.domains[t].begin(), instance.domains[t].end());
    if ((int)labels.size() != instance.domain_size(t))
      errors.push_back("issue " + std::to_string(t + 1) + ": duplicate domain labels");
  }

  if (instance.voter_count() < 1) errors.push_back("instance must have at least one voter");
  for (int i = 0; i < instance.voter_count(); ++i) {
    const Assignment& b = instance.ballots[i];
    if ((int)b.size() != m) {
      errors.push_back("ballot " + std::to_string(i + 1) + ": wrong issue count");
      continue;
    }
    for (int t = 0; t < m; ++t)
      if (b[t] < 0 || b[t] >= instance.domain_size(t))
        errors.push_back("ballot " + std::to_string(i + 1) + ": out-of-domain decision on issue " +
                         std::to_string(t + 1));
  }

  if (instance.constraint.empty()) errors.push_back("empty constraint");
  std::set<Assignment> seen;
  for (int c = 0; c < (int)instance.constraint.size(); ++c) {
    const Assignment& w = instance.constraint[c];
    if ((int)w.size() != m) {
      errors.push_back("constraint row " + std::to_string(c + 1) + ": wrong issue count");
      continue;
    }
    for (int t = 0; t < m; ++t)
      if (w[t] < 0 || w[t] >= instance.domain_size(t))
        errors.push_back("constraint row " + std::to_string(c + 1) +
                         ": out-of-domain decision on issue " + std::to_string(t + 1));
    if (!seen.insert(w).second)
      errors.push_back("constraint row " + std::to_string(c + 1) + ": duplicate outcome");
  }

  for (int r = 0; r < (int)instance.implications.size(); ++r) {
    const ImplicationRule& rule = instance.implications[r];
    auto bad_issue = [&](int t) { return t < 0 || t >= m; };
    if (bad_issue(rule.antecedent_issue) || bad_issue(rule.consequent_issue)) {
      errors.push_back("implication " + std::to_string(r + 1) + ": issue out of range");
      continue;
    }
    if (rule.antecedent_issue == rule.consequent_issue)
      errors.push_back("implication " + std::to_string(r + 1) +
                       ": antecedent and consequent name the same issue");
    if (rule.antecedent_decision < 0 || rule.antecedent_decision >= instance.domain_size(rule.antecedent_issue) ||
        rule.consequent_decision < 0 || rule.consequent_decision >= instance.domain_size(rule.consequent_issue))
      errors.push_back("implication " + std::to_string(r + 1) + ": out-of-domain decision");
  }
  // an explicitly declared empty rule set keeps the flag a caller already set
  instance.has_implications = instance.has_implications || !instance.implications.empty();

  if (errors.empty()) {
    instance.ballots_feasible = true;
    for (const Assignment& b : instance.ballots)
      if (!instance.in_constraint(b)) {
        instance.ballots_feasible = false;
        break;
      }
  }
  return errors;
}

Instance validated(Instance instance) {
  std::vector<std::string> errors = validate_instance(instance);
  if (!errors.empty()) {
    std::string joined = "invalid instance:";
    for (const std::string& e : errors) joined += "\n  " + e;
    throw std::invalid_argument(joined);
  }
  return instance;
}

bool extendable(const Instance& instance, const PartialOutcome& partial) {
  for (const Assignment& w : instance.constraint) {
    bool ok = true;
    for (int t = 0; t < instance.issue_count() && ok; ++t)
      if (partial.decided(t) && partial.decisions[t] != w[t]) ok = false;
    if (ok) return true;
  }
  return false;
}

std::string format_assignment(const Instance& instance, const Assignment& a) {
  std::string out;
  for (int t = 0; t < (int)a.size(); ++t) {
    if (t) out += ",";
    out += a[t] == kUndecided ? "?" : instance.domains[t][a[t]];
  }
  return out;
}

}  // namespace propdec

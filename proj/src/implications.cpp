#include "propdec/implications.hpp"

#include <algorithm>
#include <deque>
#include <stdexcept>

namespace propdec {

std::pair<int, Decision> OutcomeImplicationGraph::pair_of(int vertex_id) const {
  // vertex_offset carries issue_count+1 entries; the last one is a sentinel.
  int issue = 0;
  while (vertex_offset[issue + 1] <= vertex_id) ++issue;
  return {issue, vertex_id - vertex_offset[issue]};
}

std::vector<std::pair<int, Decision>> fixed_decisions(const std::vector<Assignment>& outcomes) {
  if (outcomes.empty()) throw std::invalid_argument("fixed_decisions: empty outcome set");
  std::vector<std::pair<int, Decision>> fixed;
  const int m = (int)outcomes.front().size();
  for (int t = 0; t < m; ++t) {
    Decision d = outcomes.front()[t];
    bool same = true;
    for (const Assignment& w : outcomes)
      if (w[t] != d) {
        same = false;
        break;
      }
    if (same) fixed.push_back({t, d});
  }
  return fixed;
}

bool has_nfd(const std::vector<Assignment>& constraint) {
  return fixed_decisions(constraint).empty();
}

bool satisfies_implications(const Instance& instance, const Assignment& a) {
  for (const ImplicationRule& rule : instance.implications)
    if (a[rule.antecedent_issue] == rule.antecedent_decision &&
        a[rule.consequent_issue] != rule.consequent_decision)
      return false;
  return true;
}

EquivalenceReport verify_implication_equivalence(const Instance& instance, std::uint64_t cap) {
  if (!instance.has_implications)
    throw std::invalid_argument("verify_implication_equivalence: instance carries no implication set");
  const int m = instance.issue_count();
  std::uint64_t product = 1;
  for (int t = 0; t < m; ++t) {
    product *= (std::uint64_t)instance.domain_size(t);
    if (product > cap)
      throw CapExceeded("verify_implication_equivalence: domain product exceeds enumeration cap of " +
                        std::to_string(cap) + " assignments");
  }

  EquivalenceReport report;
  Assignment a(m, 0);
  while (true) {
    bool sat = satisfies_implications(instance, a);
    bool in_c = instance.in_constraint(a);
    if (sat && !in_c) report.only_implications.push_back(a);
    if (!sat && in_c) report.only_constraint.push_back(a);
    // next assignment in lexicographic code order
    int t = m - 1;
    while (t >= 0) {
      if (++a[t] < instance.domain_size(t)) break;
      a[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
  report.equivalent = report.only_implications.empty() && report.only_constraint.empty();
  return report;
}

static OutcomeImplicationGraph build_graph_impl(const Instance& instance,
                                                const PartialOutcome& anchor) {
  OutcomeImplicationGraph g;
  const int m = instance.issue_count();
  g.vertex_offset.assign(m + 1, 0);
  for (int t = 0; t < m; ++t) g.vertex_offset[t + 1] = g.vertex_offset[t] + instance.domain_size(t);
  g.out_edges.assign(g.vertex_offset[m], {});
  g.anchor = anchor;

  for (const ImplicationRule& rule : instance.implications) {
    const int x = rule.antecedent_issue, y = rule.consequent_issue;
    const Decision dx = rule.antecedent_decision, dy = rule.consequent_decision;
    const Decision wy = anchor.decisions[y];
    const Decision wx = anchor.decisions[x];
    if (wy != dy)  // undecided y has wy == kUndecided != dy, so rule 1 fires
      g.out_edges[g.vertex(x, dx)].push_back(g.vertex(y, dy));
    if (wx != kUndecided && wx == dx) {
      for (Decision dys = 0; dys < instance.domain_size(y); ++dys) {
        if (dys == dy) continue;
        for (Decision dxs = 0; dxs < instance.domain_size(x); ++dxs) {
          if (dxs == dx) continue;
          g.out_edges[g.vertex(y, dys)].push_back(g.vertex(x, dxs));
        }
      }
    }
  }
  for (auto& edges : g.out_edges) {
    std::sort(edges.begin(), edges.end());
    edges.erase(std::unique(edges.begin(), edges.end()), edges.end());
  }
  return g;
}

OutcomeImplicationGraph build_graph(const Instance& instance, const PartialOutcome& anchor) {
  if ((int)anchor.decisions.size() != instance.issue_count())
    throw std::invalid_argument("build_graph: anchor covers wrong issue count");
  return build_graph_impl(instance, anchor);
}

OutcomeImplicationGraph build_graph(const Instance& instance, const Outcome& anchor) {
  PartialOutcome p;
  p.decisions = anchor;
  return build_graph(instance, p);
}

std::vector<std::pair<int, Decision>> reachable(const OutcomeImplicationGraph& graph, int issue,
                                                Decision d) {
  const int source = graph.vertex(issue, d);
  if (source < 0 || source >= graph.vertex_count())
    throw std::invalid_argument("reachable: vertex does not exist");
  std::vector<char> seen(graph.vertex_count(), 0);
  std::deque<int> work{source};
  while (!work.empty()) {
    int v = work.front();
    work.pop_front();
    for (int next : graph.out_edges[v])
      if (!seen[next]) {
        seen[next] = 1;
        work.push_back(next);
      }
  }
  seen[source] = 0;  // the source never belongs to its own reach set
  std::vector<std::pair<int, Decision>> reach;
  for (int v = 0; v < graph.vertex_count(); ++v)
    if (seen[v]) reach.push_back(graph.pair_of(v));
  return reach;
}

RestrictivenessReport restrictiveness(const Instance& instance) {
  if (!instance.has_implications)
    throw std::invalid_argument("restrictiveness: instance carries no implication set");
  RestrictivenessReport report;
  for (const Assignment& w : instance.constraint) {
    OutcomeImplicationGraph g = build_graph(instance, w);
    for (int t = 0; t < instance.issue_count(); ++t) {
      for (Decision d = 0; d < instance.domain_size(t); ++d) {
        auto reach = reachable(g, t, d);
        report.max_reach = std::max(report.max_reach, (int)reach.size());
        std::vector<int> issue_seen;
        for (auto& [ri, rd] : reach) {
          if (std::find(issue_seen.begin(), issue_seen.end(), ri) != issue_seen.end()) {
            if (report.consistent) {
              report.consistent = false;
              report.inconsistency = "reach set of issue " + std::to_string(t + 1) +
                                     " decision code " + std::to_string(d) + " at outcome " +
                                     format_assignment(instance, w) +
                                     " fixes issue " + std::to_string(ri + 1) + " two ways";
            }
          }
          issue_seen.push_back(ri);
        }
      }
    }
  }
  report.vacuous = report.max_reach == 0;
  report.k = report.max_reach + 1;
  return report;
}

}  // namespace propdec

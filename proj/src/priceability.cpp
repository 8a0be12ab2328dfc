#include "propdec/priceability.hpp"

#include <algorithm>
#include <stdexcept>

#include "enum_util.hpp"
#include "propdec/implications.hpp"

namespace propdec {

PriceSystem PriceSystem::zeros(const Instance& instance) {
  PriceSystem ps;
  ps.payments.resize(instance.voter_count());
  for (auto& per_voter : ps.payments) {
    per_voter.resize(instance.issue_count());
    for (int t = 0; t < instance.issue_count(); ++t)
      per_voter[t].assign(instance.domain_size(t), Money(0));
  }
  ps.prices.resize(instance.issue_count());
  for (int t = 0; t < instance.issue_count(); ++t)
    ps.prices[t].assign(instance.domain_size(t), Money(0));
  return ps;
}

Money PriceSystem::spent(int voter) const {
  Money total;
  for (const auto& per_issue : payments[voter])
    for (const Money& amount : per_issue) total += amount;
  return total;
}

namespace {

void check_shape(const Instance& instance, const PriceSystem& ps) {
  auto bad = [] { throw std::invalid_argument("price system does not match the instance's shape"); };
  if ((int)ps.payments.size() != instance.voter_count() ||
      (int)ps.prices.size() != instance.issue_count())
    bad();
  for (const auto& per_voter : ps.payments) {
    if ((int)per_voter.size() != instance.issue_count()) bad();
    for (int t = 0; t < instance.issue_count(); ++t) {
      if ((int)per_voter[t].size() != instance.domain_size(t)) bad();
      for (const Money& amount : per_voter[t])
        if (amount.is_negative())
          throw std::invalid_argument("price system carries a negative payment");
    }
  }
  for (int t = 0; t < instance.issue_count(); ++t) {
    if ((int)ps.prices[t].size() != instance.domain_size(t)) bad();
    for (const Money& price : ps.prices[t])
      if (price.is_negative()) throw std::invalid_argument("price system carries a negative price");
  }
}

}  // namespace

PriceCheckReport verify_price_system(const Instance& instance, const Outcome& w,
                                     const PriceSystem& ps) {
  if (!instance.in_constraint(w))
    throw std::invalid_argument("verify_price_system: outcome not feasible");
  check_shape(instance, ps);
  const int n = instance.voter_count();
  const int m = instance.issue_count();
  PriceCheckReport report;

  for (int i = 0; i < n; ++i)
    for (int t = 0; t < m; ++t)
      for (Decision d = 0; d < instance.domain_size(t); ++d)
        if (d != instance.ballots[i][t] && !ps.payments[i][t][d].is_zero()) {
          report.violated.push_back("P1: voter " + std::to_string(i + 1) +
                                    " pays for a decision their ballot rejects (issue " +
                                    std::to_string(t + 1) + ")");
          t = m;  // one finding per voter is enough
          break;
        }

  for (int i = 0; i < n; ++i)
    if (ps.spent(i) > Money(m)) {
      report.violated.push_back("P2: voter " + std::to_string(i + 1) + " spends " +
                                ps.spent(i).str() + " > budget " + std::to_string(m));
      break;
    }

  for (int t = 0; t < m; ++t) {
    Money pot;
    for (int i = 0; i < n; ++i) pot += ps.payments[i][t][w[t]];
    if (pot != ps.prices[t][w[t]]) {
      report.violated.push_back("P3: payments for issue " + std::to_string(t + 1) +
                                " sum to " + pot.str() + ", price is " +
                                ps.prices[t][w[t]].str());
      break;
    }
  }

  for (int t = 0; t < m && true; ++t) {
    bool done = false;
    for (Decision d = 0; d < instance.domain_size(t) && !done; ++d) {
      if (d == w[t]) continue;
      Money pot;
      for (int i = 0; i < n; ++i) pot += ps.payments[i][t][d];
      if (!pot.is_zero()) {
        report.violated.push_back("P4: unchosen decision on issue " + std::to_string(t + 1) +
                                  " collects " + pot.str());
        done = true;
      }
    }
    if (done) break;
  }

  for (const DeviationWitness& witness : enumerate_deviations(instance, w)) {
    Money leftover;
    for (int i : witness.group) leftover += Money(m) - ps.spent(i);
    bool exceeds_all = true;
    for (int t : witness.issues)
      if (!(leftover > ps.prices[t][w[t]])) {
        exceeds_all = false;
        break;
      }
    if (exceeds_all) {
      report.violated.push_back("P5: a deviating group holds " + leftover.str() +
                                " in leftover budget, more than every flipped price");
      report.p5_witness = witness;
      break;
    }
  }

  report.ok = report.violated.empty();
  return report;
}

std::pair<Outcome, PriceSystem> extract_price_system(const Instance& instance,
                                                     const RuleTrace& trace) {
  if (trace.rule != "mecora" && trace.rule != "greedy-mecora")
    throw std::invalid_argument("extract_price_system: trace is not from an auction rule");
  ReplayResult replayed = replay_trace(instance, trace);  // validates digest and events
  if (replayed.outcome != trace.final_outcome)
    throw std::invalid_argument("extract_price_system: trace replay mismatch");

  PriceSystem ps = PriceSystem::zeros(instance);
  for (int t = 0; t < instance.issue_count(); ++t) {
    for (Decision d = 0; d < instance.domain_size(t); ++d) ps.prices[t][d] = replayed.prices[t];
    for (const auto& [voter, amount] : replayed.issue_payments[t])
      ps.payments[voter][t][replayed.outcome[t]] += amount;
  }
  return {replayed.outcome, ps};
}

BoundReport check_priceable_bound(const Instance& instance, const Outcome& w,
                                  const PriceSystem& ps, const CheckOptions& options) {
  PriceCheckReport valid = verify_price_system(instance, w, ps);
  if (!valid.ok)
    throw std::invalid_argument("check_priceable_bound: price system fails P1-P5");
  if (instance.issue_count() > options.max_issues)
    throw CapExceeded("check_priceable_bound: issue count above enumeration cap");

  const int n = instance.voter_count();
  const int m = instance.issue_count();
  BoundReport report;

  detail::for_each_issue_subset(m, [&](const std::vector<int>& T) {
    for (const auto& [restriction, voters] : detail::group_by_restriction(instance, T)) {
      // smallest cohesive group size; the bound's right side does not depend
      // on the members, so the lowest-satisfaction prefix is the worst case
      std::int64_t need = ((std::int64_t)T.size() * n + m - 1) / m;
      if (need < 1) need = 1;
      if ((std::int64_t)voters.size() < need) continue;
      std::vector<int> by_sat = voters;
      std::stable_sort(by_sat.begin(), by_sat.end(), [&](int a, int b) {
        return satisfaction(instance, a, w) < satisfaction(instance, b, w);
      });
      std::vector<int> group(by_sat.begin(), by_sat.begin() + need);
      std::sort(group.begin(), group.end());
      Rational group_sat;
      for (int i : group) group_sat += Rational(satisfaction(instance, i, w));

      for (const Outcome& target : instance.constraint) {
        if (target == w) continue;
        std::vector<int> diff;
        bool ok = true;
        for (int t = 0; t < m && ok; ++t) {
          if (target[t] == w[t]) continue;
          diff.push_back(t);
          auto pos = std::lower_bound(T.begin(), T.end(), t);
          if (pos == T.end() || *pos != t || restriction[pos - T.begin()] != target[t] ||
              restriction[pos - T.begin()] == w[t])
            ok = false;
        }
        if (!ok || diff.empty()) continue;
        Money q;
        for (int t : diff) q = max(q, ps.prices[t][w[t]]);
        if (q.is_zero()) {
          report.holds = false;
          report.violation = BoundViolation{T, diff, group, q, group_sat, Rational(0)};
          return true;
        }
        Rational required = Rational(n) / q * Rational((int)T.size()) - Rational((int)diff.size());
        if (group_sat < required) {
          report.holds = false;
          report.violation = BoundViolation{T, diff, group, q, group_sat, required};
          return true;
        }
      }
    }
    return false;
  });
  return report;
}

}  // namespace propdec

#include "propdec/rules.hpp"

#include <algorithm>
#include <map>
#include <stdexcept>

#include "enum_util.hpp"
#include "propdec/deviation.hpp"
#include "propdec/implications.hpp"

namespace propdec {

namespace {

Rational harmonic(int k) {
  Rational h;
  for (int t = 1; t <= k; ++t) h += Rational(1, t);
  return h;
}

std::string fnv1a(const std::string& data) {
  std::uint64_t h = 1469598103934665603ull;
  for (unsigned char c : data) {
    h ^= c;
    h *= 1099511628211ull;
  }
  char buf[17];
  snprintf(buf, sizeof buf, "%016llx", (unsigned long long)h);
  return buf;
}

}  // namespace

std::string instance_digest(const Instance& instance) {
  std::string blob;
  auto put = [&](const Assignment& a) {
    for (Decision d : a) blob += std::to_string(d) + ",";
    blob += ";";
  };
  for (const auto& dom : instance.domains) {
    for (const auto& label : dom) blob += label + ",";
    blob += ";";
  }
  blob += "|";
  for (const auto& b : instance.ballots) put(b);
  blob += "|";
  for (const auto& w : instance.constraint) put(w);
  blob += "|";
  for (const auto& r : instance.implications)
    blob += std::to_string(r.antecedent_issue) + ":" + std::to_string(r.antecedent_decision) +
            ">" + std::to_string(r.consequent_issue) + ":" +
            std::to_string(r.consequent_decision) + ";";
  return fnv1a(blob);
}

Rational pav_score(const Instance& instance, const Outcome& w) {
  Rational score;
  for (int i = 0; i < instance.voter_count(); ++i) score += harmonic(satisfaction(instance, i, w));
  return score;
}

std::optional<Money> mes_min_rho(std::vector<Money> budgets, const Money& price) {
  if (price.is_negative()) throw std::invalid_argument("mes_min_rho: negative price");
  Money total;
  for (const Money& b : budgets) total += b;
  if (total < price) return std::nullopt;
  if (price.is_zero()) return Money(0);
  std::sort(budgets.begin(), budgets.end());
  // j voters pay their whole (smallest) budgets, the rest pay rho
  Money prefix;
  const int s = (int)budgets.size();
  for (int j = 0; j < s; ++j) {
    Money rho = (price - prefix) / Rational(s - j);
    if (rho <= budgets[j]) return rho;
    prefix += budgets[j];
  }
  return std::nullopt;  // unreachable: total >= price guarantees a solution
}

// ---------------------------------------------------------------------------
// equal shares

namespace {

struct MesCandidate {
  int issue;
  Decision decision;
  Money lambda;
  Money rho;
  std::vector<std::pair<int, Decision>> also_fixed;
};

// Lexicographically smallest (by decision codes) feasible outcome consistent
// with the decided entries.
const Outcome* smallest_consistent(const Instance& instance, const PartialOutcome& partial) {
  const Outcome* best = nullptr;
  for (const Outcome& w : instance.constraint) {
    bool ok = true;
    for (int t = 0; t < instance.issue_count() && ok; ++t)
      if (partial.decided(t) && partial.decisions[t] != w[t]) ok = false;
    if (ok && (!best || w < *best)) best = &w;
  }
  return best;
}

}  // namespace

RuleResult run_mes(const Instance& instance, MesPricing pricing) {
  const int n = instance.voter_count();
  const int m = instance.issue_count();
  if (pricing == MesPricing::Fixed && !instance.has_implications)
    throw std::invalid_argument("run_mes: fixed pricing requires an implication set");

  RuleTrace trace;
  trace.rule = pricing == MesPricing::Unit ? "mes-unit" : "mes-fixed";
  trace.instance_digest = instance_digest(instance);
  trace.voter_count = n;
  trace.issue_count = m;

  std::vector<Money> budgets(n, Money(m));
  PartialOutcome partial = PartialOutcome::all_undecided(m);

  while (!partial.complete()) {
    OutcomeImplicationGraph graph;
    if (pricing == MesPricing::Fixed) graph = build_graph(instance, partial);

    bool any_eligible = false;
    std::optional<MesCandidate> best;
    for (int t = 0; t < m; ++t) {
      if (partial.decided(t)) continue;
      for (Decision d = 0; d < instance.domain_size(t); ++d) {
        Money lambda;
        std::vector<std::pair<int, Decision>> extra;
        PartialOutcome next = partial;
        next.decisions[t] = d;
        if (pricing == MesPricing::Fixed) {
          // fixing the pair drags its whole reach set along; conflicts with
          // committed decisions (or inside the reach set) disqualify the pair
          auto reach = reachable(graph, t, d);
          bool conflict = false;
          for (const auto& [ri, rd] : reach) {
            if (next.decided(ri)) {
              if (next.decisions[ri] != rd) {
                conflict = true;
                break;
              }
              continue;
            }
            next.decisions[ri] = rd;
            extra.push_back({ri, rd});
          }
          if (conflict || !extendable(instance, next)) continue;
          lambda = Money(n) * Rational((int)reach.size() + 1);
        } else {
          if (!extendable(instance, next)) continue;
          lambda = Money(n);
        }
        any_eligible = true;
        std::vector<Money> supporter_budgets;
        for (int i : supporters(instance, t, d)) supporter_budgets.push_back(budgets[i]);
        std::optional<Money> rho = mes_min_rho(supporter_budgets, lambda);
        if (!rho) continue;  // not affordable this round
        if (!best || *rho < best->rho) best = MesCandidate{t, d, lambda, *rho, extra};
        // ties keep the first candidate: lowest issue index, then lowest code
      }
    }

    if (!any_eligible) {
      trace.termination = "no-eligible-pair";
      break;
    }
    if (!best) {
      trace.termination = "no-affordable-pair";
      break;
    }

    PurchaseEvent event;
    event.issue = best->issue;
    event.decision = best->decision;
    event.lambda = best->lambda;
    event.rho = best->rho;
    event.also_fixed = best->also_fixed;
    for (int i : supporters(instance, best->issue, best->decision)) {
      Money pay = min(best->rho, budgets[i]);
      budgets[i] -= pay;
      event.payments.push_back({i, pay});
    }
    partial.decisions[best->issue] = best->decision;
    for (const auto& [ri, rd] : best->also_fixed) partial.decisions[ri] = rd;
    trace.events.push_back(std::move(event));
  }
  if (partial.complete()) trace.termination = "all-decided";

  if (!partial.complete()) {
    const Outcome* completion = smallest_consistent(instance, partial);
    if (!completion) throw std::logic_error("run_mes: partial outcome lost extendability");
    CompletionEvent event;
    for (int t = 0; t < m; ++t)
      if (!partial.decided(t)) {
        event.assigned.push_back({t, (*completion)[t]});
        partial.decisions[t] = (*completion)[t];
      }
    trace.events.push_back(std::move(event));
  }

  trace.final_outcome = partial.decisions;
  trace.final_budgets = budgets;
  if (!instance.in_constraint(trace.final_outcome))
    throw std::logic_error("run_mes: produced an infeasible outcome");
  return {trace.final_outcome, trace};
}

// ---------------------------------------------------------------------------
// auction rules

namespace {

struct AuctionState {
  Outcome w;
  std::vector<Money> prices;
  std::vector<Money> budgets;
  // per issue, payments backing the current decision
  std::vector<std::vector<std::pair<int, Money>>> pots;
};

struct AuctionMove {
  std::vector<int> issues;
  Outcome target;
  std::vector<int> group;
  Money rho;
  Money price_total;
};

// Applies the move: refund displaced payers, charge the group min(rho, budget)
// each, split each payment across the flipped issues proportionally to the
// new prices so that every pot totals its price exactly.
FlipEvent apply_move(AuctionState& state, const AuctionMove& move, const Money& epsilon) {
  FlipEvent event;
  event.issues = move.issues;
  event.group = move.group;
  event.rho = move.rho;
  std::map<int, Money> refund_sum;
  for (int t : move.issues) {
    event.old_decisions.push_back(state.w[t]);
    event.new_decisions.push_back(move.target[t]);
    event.new_prices.push_back(state.prices[t] + epsilon);
    for (const auto& [voter, amount] : state.pots[t]) {
      state.budgets[voter] += amount;
      refund_sum[voter] += amount;
    }
    state.pots[t].clear();
  }
  for (const auto& [voter, amount] : refund_sum) event.refunds.push_back({voter, amount});

  for (int i : move.group) {
    Money pay = min(move.rho, state.budgets[i]);
    state.budgets[i] -= pay;
    if (pay.is_zero()) continue;
    for (int j = 0; j < (int)move.issues.size(); ++j) {
      Money share = pay * event.new_prices[j] / move.price_total;
      event.payments.push_back({i, move.issues[j], share});
      state.pots[move.issues[j]].push_back({i, share});
    }
  }
  for (int j = 0; j < (int)move.issues.size(); ++j) state.prices[move.issues[j]] = event.new_prices[j];
  state.w = move.target;
  return event;
}

RuleResult run_auction(const Instance& instance, const Money& epsilon, const Outcome& initial,
                       bool greedy, int q) {
  if (!instance.in_constraint(initial))
    throw std::invalid_argument("auction rule: initial outcome not feasible");
  if (!(epsilon > Money(0))) throw std::invalid_argument("auction rule: epsilon must be positive");
  const int n = instance.voter_count();
  const int m = instance.issue_count();

  RuleTrace trace;
  trace.rule = greedy ? "greedy-mecora" : "mecora";
  trace.instance_digest = instance_digest(instance);
  trace.voter_count = n;
  trace.issue_count = m;
  trace.initial = initial;
  trace.epsilon = epsilon;
  trace.q = q;

  AgreeingPartition partition;
  std::vector<Rational> caps;  // per partition group: |group|/n * |T| - q
  if (greedy) {
    partition = partition_agreeing_groups(instance);
    for (const auto& g : partition.groups)
      caps.push_back(Rational((int)g.voters.size(), n) * Rational((int)g.issues.size()) -
                     Rational(q));
  }

  AuctionState state{initial, std::vector<Money>(m, Money(0)), std::vector<Money>(n, Money(m)),
                     std::vector<std::vector<std::pair<int, Money>>>(m)};

  // flips raise the price total by at least epsilon each and the total is
  // bounded by the money supply, so this guard is unreachable
  Rational guard_r = Rational(n) * Rational(m) * Rational(m) / epsilon;
  long steps_left = (long)(guard_r.num() / guard_r.den()) + 2;

  while (true) {
    std::optional<AuctionMove> best;
    auto consider = [&](std::vector<int> issues, const Outcome& target, std::vector<int> group) {
      Money price_total;
      for (int t : issues) price_total += state.prices[t] + epsilon;
      std::vector<Money> member_budgets;
      for (int i : group) member_budgets.push_back(state.budgets[i]);
      std::optional<Money> rho = mes_min_rho(member_budgets, price_total);
      if (!rho) return;
      if (!best || *rho < best->rho)
        best = AuctionMove{std::move(issues), target, std::move(group), *rho, price_total};
    };

    if (!greedy) {
      for (const DeviationWitness& witness : enumerate_deviations(instance, state.w))
        consider(witness.issues, witness.target, witness.group);
    } else {
      for (int x = 0; x < (int)partition.groups.size(); ++x) {
        const auto& g = partition.groups[x];
        const Assignment& lead = instance.ballots[g.voters.front()];
        for (const Outcome& target : instance.constraint) {
          if (target == state.w) continue;
          std::vector<int> diff;
          bool ok = true;
          for (int t = 0; t < m && ok; ++t) {
            if (target[t] == state.w[t]) continue;
            diff.push_back(t);
            if (!std::binary_search(g.issues.begin(), g.issues.end(), t) || target[t] != lead[t])
              ok = false;
          }
          if (!ok || diff.empty()) continue;
          // satisfaction cap: no member may end past |group|/n * |T| - q
          for (int i : g.voters)
            if (Rational(satisfaction(instance, i, target)) > caps[x]) {
              ok = false;
              break;
            }
          if (ok) consider(diff, target, g.voters);
        }
      }
    }

    if (!best) {
      trace.termination = "no-affordable-deviation";
      break;
    }
    if (--steps_left < 0) throw std::logic_error("auction rule: step budget exceeded");
    trace.events.push_back(apply_move(state, *best, epsilon));
  }

  trace.final_outcome = state.w;
  trace.final_budgets = state.budgets;
  trace.final_prices = state.prices;
  return {state.w, trace};
}

}  // namespace

RuleResult run_mecora(const Instance& instance, const Money& epsilon, const Outcome& initial) {
  return run_auction(instance, epsilon, initial, false, 0);
}

AgreeingPartition partition_agreeing_groups(const Instance& instance,
                                            const CheckOptions& options) {
  if (instance.issue_count() > options.max_issues)
    throw CapExceeded("partition_agreeing_groups: issue count above enumeration cap");
  AgreeingPartition partition;
  std::vector<int> remaining(instance.voter_count());
  for (int i = 0; i < instance.voter_count(); ++i) remaining[i] = i;

  while (!remaining.empty()) {
    AgreeingPartition::Group best;
    std::int64_t best_product = -1;
    detail::for_each_issue_subset(instance.issue_count(), [&](const std::vector<int>& T) {
      std::map<Assignment, std::vector<int>> buckets;
      for (int i : remaining) {
        Assignment key(T.size());
        for (int j = 0; j < (int)T.size(); ++j) key[j] = instance.ballots[i][T[j]];
        buckets[key].push_back(i);
      }
      for (const auto& [key, voters] : buckets) {
        std::int64_t product = (std::int64_t)voters.size() * (std::int64_t)T.size();
        bool better = product > best_product;
        if (!better && product == best_product) {
          if (voters.size() != best.voters.size())
            better = voters.size() > best.voters.size();
          else if (T != best.issues)
            better = T < best.issues;
          else
            better = voters < best.voters;
        }
        if (better) {
          best_product = product;
          best.voters = voters;
          best.issues = T;
        }
      }
      return false;  // examine the whole lattice
    });
    partition.groups.push_back(best);
    std::vector<int> rest;
    for (int i : remaining)
      if (!std::binary_search(best.voters.begin(), best.voters.end(), i)) rest.push_back(i);
    remaining = std::move(rest);
  }
  return partition;
}

RuleResult run_greedy_mecora(const Instance& instance, int q, const Money& epsilon,
                             const Outcome& initial) {
  if (q < 0) throw std::invalid_argument("run_greedy_mecora: q must be non-negative");
  return run_auction(instance, epsilon, initial, true, q);
}

RuleResult run_ls_pav(const Instance& instance, const Outcome& initial) {
  if (!instance.in_constraint(initial))
    throw std::invalid_argument("run_ls_pav: initial outcome not feasible");
  const int n = instance.voter_count();
  const int m = instance.issue_count();
  const Rational min_gain = Rational(n) / Rational((std::int64_t)m * m);

  RuleTrace trace;
  trace.rule = "lspav";
  trace.instance_digest = instance_digest(instance);
  trace.voter_count = n;
  trace.issue_count = m;
  trace.initial = initial;

  Outcome w = initial;
  Rational current = pav_score(instance, w);
  // score gains at least n/m^2 per step and tops out at n * H(m)
  long guard = (long)((std::int64_t)m * m * (harmonic(m).num() / harmonic(m).den() + 1)) + 2;

  while (true) {
    bool moved = false;
    for (const DeviationWitness& witness : enumerate_deviations(instance, w)) {
      Rational gain = pav_score(instance, witness.target) - current;
      if (gain < min_gain) continue;
      FlipEvent event;
      event.issues = witness.issues;
      for (int t : witness.issues) {
        event.old_decisions.push_back(w[t]);
        event.new_decisions.push_back(witness.target[t]);
      }
      event.group = witness.group;
      event.pav_gain = gain;
      trace.events.push_back(std::move(event));
      w = witness.target;
      current += gain;
      moved = true;
      break;  // first improving deviation in scan order
    }
    if (!moved) break;
    if (--guard < 0) throw std::logic_error("run_ls_pav: step budget exceeded");
  }

  trace.termination = "local-optimum";
  trace.final_outcome = w;
  return {w, trace};
}

// ---------------------------------------------------------------------------
// replay

ReplayResult replay_trace(const Instance& instance, const RuleTrace& trace) {
  if (trace.instance_digest != instance_digest(instance))
    throw std::runtime_error("replay_trace: trace does not belong to this instance");
  const int n = instance.voter_count();
  const int m = instance.issue_count();
  ReplayResult result;
  result.budgets.assign(n, Money(m));
  result.prices.assign(m, Money(0));
  result.issue_payments.assign(m, {});

  const bool is_mes = trace.rule == "mes-unit" || trace.rule == "mes-fixed";
  const bool is_auction = trace.rule == "mecora" || trace.rule == "greedy-mecora";
  const bool is_lspav = trace.rule == "lspav";
  if (!is_mes && !is_auction && !is_lspav)
    throw std::runtime_error("replay_trace: unknown rule tag " + trace.rule);

  if (is_mes) {
    PartialOutcome partial = PartialOutcome::all_undecided(m);
    for (const TraceEvent& raw : trace.events) {
      if (const auto* p = std::get_if<PurchaseEvent>(&raw)) {
        if (partial.decided(p->issue)) throw std::runtime_error("replay_trace: double purchase");
        partial.decisions[p->issue] = p->decision;
        for (const auto& [t, d] : p->also_fixed) {
          if (partial.decided(t) && partial.decisions[t] != d)
            throw std::runtime_error("replay_trace: conflicting reach fix");
          partial.decisions[t] = d;
        }
        for (const auto& [voter, amount] : p->payments) {
          result.budgets[voter] -= amount;
          if (result.budgets[voter].is_negative())
            throw std::runtime_error("replay_trace: voter driven below zero budget");
          result.issue_payments[p->issue].push_back({voter, amount});
        }
      } else if (const auto* c = std::get_if<CompletionEvent>(&raw)) {
        for (const auto& [t, d] : c->assigned) {
          if (partial.decided(t)) throw std::runtime_error("replay_trace: completing decided issue");
          partial.decisions[t] = d;
        }
      } else {
        throw std::runtime_error("replay_trace: flip event in an equal-shares trace");
      }
    }
    if (!partial.complete()) throw std::runtime_error("replay_trace: incomplete final outcome");
    result.outcome = partial.decisions;
    return result;
  }

  // auction rules and local search start from the recorded initial outcome
  if ((int)trace.initial.size() != m)
    throw std::runtime_error("replay_trace: trace lacks an initial outcome");
  result.outcome = trace.initial;
  std::vector<std::map<int, Money>> pots(m);

  for (const TraceEvent& raw : trace.events) {
    const auto* f = std::get_if<FlipEvent>(&raw);
    if (!f) throw std::runtime_error("replay_trace: non-flip event in an auction trace");
    for (int j = 0; j < (int)f->issues.size(); ++j) {
      int t = f->issues[j];
      if (result.outcome[t] != f->old_decisions[j])
        throw std::runtime_error("replay_trace: flip does not match the current outcome");
      result.outcome[t] = f->new_decisions[j];
    }
    if (is_lspav) continue;

    std::map<int, Money> expected_refunds;
    for (int t : f->issues) {
      for (const auto& [voter, amount] : pots[t]) expected_refunds[voter] += amount;
      pots[t].clear();
    }
    std::map<int, Money> recorded_refunds(f->refunds.begin(), f->refunds.end());
    if (recorded_refunds != expected_refunds)
      throw std::runtime_error("replay_trace: refunds do not match the displaced payments");
    for (const auto& [voter, amount] : f->refunds) result.budgets[voter] += amount;
    for (const auto& [voter, issue, amount] : f->payments) {
      result.budgets[voter] -= amount;
      if (result.budgets[voter].is_negative())
        throw std::runtime_error("replay_trace: voter driven below zero budget");
      pots[issue][voter] += amount;
    }
    for (int j = 0; j < (int)f->issues.size(); ++j) result.prices[f->issues[j]] = f->new_prices[j];
  }

  for (int t = 0; t < m; ++t)
    for (const auto& [voter, amount] : pots[t]) result.issue_payments[t].push_back({voter, amount});
  return result;
}

void check_trace_integrity(const Instance& instance, const RuleTrace& trace) {
  ReplayResult replayed = replay_trace(instance, trace);
  if (replayed.outcome != trace.final_outcome)
    throw std::runtime_error("trace integrity: replayed outcome differs from the recorded one");
  const bool is_lspav = trace.rule == "lspav";
  if (!is_lspav && replayed.budgets != trace.final_budgets)
    throw std::runtime_error("trace integrity: replayed budgets differ from the recorded ones");
  const bool is_auction = trace.rule == "mecora" || trace.rule == "greedy-mecora";
  if (is_auction && replayed.prices != trace.final_prices)
    throw std::runtime_error("trace integrity: replayed prices differ from the recorded ones");

  if (is_auction) {
    std::vector<Money> price(instance.issue_count(), Money(0));
    for (const TraceEvent& raw : trace.events) {
      const auto* f = std::get_if<FlipEvent>(&raw);
      if (!f) continue;
      for (int j = 0; j < (int)f->issues.size(); ++j) {
        if (f->new_prices[j] < price[f->issues[j]] + trace.epsilon)
          throw std::runtime_error("trace integrity: price rose by less than epsilon");
        price[f->issues[j]] = f->new_prices[j];
      }
    }
  }
}

}  // namespace propdec

#pragma once

#include <optional>
#include <string>
#include <variant>
#include <vector>

#include "propdec/axioms.hpp"
#include "propdec/model.hpp"
#include "propdec/rational.hpp"

namespace propdec {

using Money = Rational;

// One equal-shares purchase: the supporters of (issue, decision) each paid
// min(rho, remaining budget) against price lambda. Under fixed pricing the
// purchase also fixes the reach set recorded in also_fixed.
struct PurchaseEvent {
  int issue = 0;
  Decision decision = 0;
  Money lambda;
  Money rho;
  std::vector<std::pair<int, Money>> payments;        // voter -> amount
  std::vector<std::pair<int, Decision>> also_fixed;   // fixed alongside the source pair
};

// One auction flip (or, for local search, one adopted deviation).
struct FlipEvent {
  std::vector<int> issues;              // S, ascending
  std::vector<Decision> old_decisions;  // aligned with issues
  std::vector<Decision> new_decisions;
  std::vector<Money> new_prices;        // aligned; empty for local search
  std::vector<int> group;               // paying / deviating voters
  std::vector<std::pair<int, Money>> refunds;            // voter -> total returned
  std::vector<std::tuple<int, int, Money>> payments;     // voter, issue, amount
  Money rho;       // per-payer charge (auction rules)
  Money pav_gain;  // local search only
};

// Decisions filled in after early termination of the equal-shares rounds.
struct CompletionEvent {
  std::vector<std::pair<int, Decision>> assigned;
};

using TraceEvent = std::variant<PurchaseEvent, FlipEvent, CompletionEvent>;

// Ordered event log of one rule run. Replaying the events from the initial
// state reproduces the final outcome, budgets and prices exactly; traces also
// feed price-system extraction.
struct RuleTrace {
  std::string rule;  // mes-unit | mes-fixed | mecora | greedy-mecora | lspav
  std::string instance_digest;
  int voter_count = 0;
  int issue_count = 0;
  Outcome initial;  // empty for the equal-shares rule
  Money epsilon;
  int q = 0;  // greedy satisfaction-cap parameter
  std::vector<TraceEvent> events;
  std::string termination;
  Outcome final_outcome;
  std::vector<Money> final_budgets;  // empty for local search
  std::vector<Money> final_prices;   // auction rules only
};

struct RuleResult {
  Outcome outcome;
  RuleTrace trace;
};

// PAV score: sum over voters of the harmonic prefix of their satisfaction.
Rational pav_score(const Instance& instance, const Outcome& w);

// Minimal rho with sum_i min(rho, budget_i) >= price, or nothing when the
// budgets cannot cover the price. Exact, by solving the piecewise-linear
// equation on sorted budgets.
std::optional<Money> mes_min_rho(std::vector<Money> budgets, const Money& price);

enum class MesPricing { Unit, Fixed };

// The equal-shares rule: every voter starts with budget m, rounds buy the
// cheapest affordable issue-decision pair that keeps the partial outcome
// extendable. Unit pricing charges n per pair; fixed pricing charges
// n * (reach + 1) against the implication graph of the current partial
// outcome and fixes the pair's reach set along with it. Ties break to the
// lowest issue index, then the lowest decision code. Undecided issues are
// completed to the lexicographically smallest consistent feasible outcome.
RuleResult run_mes(const Instance& instance, MesPricing pricing);

// The auction rule: voter groups with a feasible deviation pay the flipped
// issues' new prices (old + epsilon each), displaced payers are refunded in
// full, and the cheapest per-payer flip wins each step. Stops when no group
// can afford any flip.
RuleResult run_mecora(const Instance& instance, const Money& epsilon, const Outcome& initial);

struct AgreeingPartition {
  struct Group {
    std::vector<int> voters;  // ascending
    std::vector<int> issues;  // the agreed set T, ascending
  };
  std::vector<Group> groups;  // products |voters|*|issues| non-increasing
};

// Greedy partition of the voters: repeatedly take the agreeing (group, T)
// pair maximizing |group|*|T| among the remaining voters. Ties prefer the
// larger group, then the lexicographically smaller T, then voters.
AgreeingPartition partition_agreeing_groups(const Instance& instance,
                                            const CheckOptions& options = {});

// Auction rule over a fixed agreeing partition: each group may only flip
// issues inside its agreed set, and never past the satisfaction cap
// |group|/n * |T| - q for any member.
RuleResult run_greedy_mecora(const Instance& instance, int q, const Money& epsilon,
                             const Outcome& initial);

// Local search on the PAV score over feasible deviations; adopts the first
// deviation (in enumeration order) gaining at least n/m^2 and stops when
// none does.
RuleResult run_ls_pav(const Instance& instance, const Outcome& initial);

struct ReplayResult {
  Outcome outcome;
  std::vector<Money> budgets;
  std::vector<Money> prices;
  // Per issue: who currently backs the final decision, with amounts.
  std::vector<std::vector<std::pair<int, Money>>> issue_payments;
};

// Re-applies the recorded events from the initial state, validating each step
// against the current state. Throws on any inconsistency.
ReplayResult replay_trace(const Instance& instance, const RuleTrace& trace);

// Replays and compares against the recorded finals; also asserts auction
// price monotonicity (every touched price grows by at least epsilon). Throws
// with a description on the first violation.
void check_trace_integrity(const Instance& instance, const RuleTrace& trace);

std::string instance_digest(const Instance& instance);

}  // namespace propdec

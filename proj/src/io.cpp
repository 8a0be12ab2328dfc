#include "propdec/io.hpp"

#include <algorithm>
#include <random>
#include <sstream>

#include <nlohmann/json.hpp>

#include "propdec/implications.hpp"

namespace propdec {

using json = nlohmann::ordered_json;

ParseError::ParseError(std::vector<std::string> errors_in)
    : std::runtime_error([&] {
        std::string what = "instance document rejected:";
        for (const std::string& e : errors_in) what += "\n  " + e;
        return what;
      }()),
      errors(std::move(errors_in)) {}

namespace {

std::vector<std::string> tokenize(const std::string& line) {
  std::vector<std::string> tokens;
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) tokens.push_back(tok);
  return tokens;
}

struct Cursor {
  std::vector<std::pair<int, std::vector<std::string>>> lines;  // line number, tokens
  size_t at = 0;

  bool done() const { return at >= lines.size(); }
  const std::vector<std::string>& peek() const { return lines[at].second; }
  int line() const { return done() ? -1 : lines[at].first; }
};

int find_label(const std::vector<std::string>& domain, const std::string& label) {
  for (int d = 0; d < (int)domain.size(); ++d)
    if (domain[d] == label) return d;
  return -1;
}

}  // namespace

Instance parse_instance(const std::string& document) {
  Cursor cur;
  {
    std::istringstream in(document);
    std::string raw;
    int number = 0;
    while (std::getline(in, raw)) {
      ++number;
      auto hash = raw.find('#');
      if (hash != std::string::npos) raw.resize(hash);
      auto tokens = tokenize(raw);
      if (!tokens.empty()) cur.lines.push_back({number, std::move(tokens)});
    }
  }

  std::vector<std::string> errors;
  auto fail = [&](int line, const std::string& message) {
    errors.push_back("line " + std::to_string(line) + ": " + message);
  };
  if (cur.done()) throw ParseError({"empty document"});

  Instance instance;
  if (cur.peek() != std::vector<std::string>{"propdec-instance", "v1"})
    fail(cur.line(), "expected header 'propdec-instance v1'");
  else
    ++cur.at;

  auto read_count = [&](const std::string& keyword) -> int {
    if (cur.done() || cur.peek().size() != 2 || cur.peek()[0] != keyword) {
      fail(cur.line(), "expected '" + keyword + " <count>'");
      return -1;
    }
    int value = -1;
    try {
      value = std::stoi(cur.peek()[1]);
    } catch (const std::exception&) {
    }
    if (value < 0) fail(cur.line(), "bad count in '" + keyword + "' section");
    ++cur.at;
    return value;
  };

  int m = read_count("issues");
  if (!errors.empty()) throw ParseError(errors);
  for (int t = 0; t < m; ++t) {
    if (cur.done() || cur.peek().size() < 5 || cur.peek()[0] != "issue" || cur.peek()[2] != ":") {
      fail(cur.line(), "expected 'issue <name> : <label> <label> ...' with at least two labels");
      throw ParseError(errors);
    }
    const auto& tokens = cur.peek();
    instance.issue_names.push_back(tokens[1]);
    instance.domains.push_back({tokens.begin() + 3, tokens.end()});
    ++cur.at;
  }

  auto read_assignment_rows = [&](const std::string& section, const std::string& keyword,
                                  std::vector<Assignment>& rows) {
    int count = read_count(section);
    if (count < 0) return;
    for (int r = 0; r < count; ++r) {
      if (cur.done() || cur.peek().empty() || cur.peek()[0] != keyword) {
        fail(cur.line(), "expected '" + keyword + " <label> ...' row");
        return;
      }
      const auto& tokens = cur.peek();
      if ((int)tokens.size() != m + 1) {
        fail(cur.line(), keyword + " row has " + std::to_string(tokens.size() - 1) +
                             " entries, instance has " + std::to_string(m) + " issues");
        ++cur.at;
        continue;
      }
      Assignment a(m);
      for (int t = 0; t < m; ++t) {
        a[t] = find_label(instance.domains[t], tokens[t + 1]);
        if (a[t] < 0)
          fail(cur.line(), "label '" + tokens[t + 1] + "' not in the domain of issue " +
                               instance.issue_names[t]);
      }
      rows.push_back(std::move(a));
      ++cur.at;
    }
  };

  read_assignment_rows("voters", "ballot", instance.ballots);
  read_assignment_rows("constraint", "outcome", instance.constraint);

  auto issue_by_name = [&](const std::string& name) {
    for (int t = 0; t < m; ++t)
      if (instance.issue_names[t] == name) return t;
    return -1;
  };

  if (!cur.done() && !cur.peek().empty() && cur.peek()[0] == "implications") {
    instance.has_implications = true;
    int count = read_count("implications");
    for (int r = 0; r < count && !cur.done(); ++r) {
      const auto& tokens = cur.peek();
      // imply <issue>=<label> -> <issue>=<label>
      if (tokens.size() != 4 || tokens[0] != "imply" || tokens[2] != "->") {
        fail(cur.line(), "expected 'imply <issue>=<label> -> <issue>=<label>'");
        ++cur.at;
        continue;
      }
      auto split = [&](const std::string& text, int& issue, Decision& d) {
        auto eq = text.find('=');
        if (eq == std::string::npos) return false;
        issue = issue_by_name(text.substr(0, eq));
        if (issue < 0) return false;
        d = find_label(instance.domains[issue], text.substr(eq + 1));
        return d >= 0;
      };
      ImplicationRule rule;
      if (!split(tokens[1], rule.antecedent_issue, rule.antecedent_decision) ||
          !split(tokens[3], rule.consequent_issue, rule.consequent_decision))
        fail(cur.line(), "unknown issue or label in implication");
      else
        instance.implications.push_back(rule);
      ++cur.at;
    }
  }

  bool feasible_declared = false, declared_value = false;
  while (!cur.done() && !cur.peek().empty() && cur.peek()[0] == "meta") {
    const auto& tokens = cur.peek();
    if (tokens.size() == 3 && tokens[1] == "name") {
      instance.name = tokens[2];
    } else if (tokens.size() == 3 && tokens[1] == "ballots-feasible" &&
               (tokens[2] == "true" || tokens[2] == "false")) {
      feasible_declared = true;
      declared_value = tokens[2] == "true";
    } else {
      fail(cur.line(), "unknown meta line");
    }
    ++cur.at;
  }

  if (cur.done() || cur.peek() != std::vector<std::string>{"end"})
    fail(cur.line(), "expected 'end'");
  else if (++cur.at, !cur.done())
    fail(cur.line(), "trailing content after 'end'");

  if (!errors.empty()) throw ParseError(errors);
  std::vector<std::string> violations = validate_instance(instance);
  if (!violations.empty()) throw ParseError(violations);
  if (feasible_declared && declared_value != instance.ballots_feasible)
    throw ParseError({"meta ballots-feasible contradicts the ballots and constraint"});
  return instance;
}

std::string serialize_instance(const Instance& instance) {
  std::string out = "propdec-instance v1\n";
  out += "issues " + std::to_string(instance.issue_count()) + "\n";
  for (int t = 0; t < instance.issue_count(); ++t) {
    out += "issue " + instance.issue_names[t] + " :";
    for (const std::string& label : instance.domains[t]) out += " " + label;
    out += "\n";
  }
  out += "voters " + std::to_string(instance.voter_count()) + "\n";
  auto put_rows = [&](const std::string& keyword, const std::vector<Assignment>& rows) {
    for (const Assignment& a : rows) {
      out += keyword;
      for (int t = 0; t < instance.issue_count(); ++t) out += " " + instance.domains[t][a[t]];
      out += "\n";
    }
  };
  put_rows("ballot", instance.ballots);
  out += "constraint " + std::to_string(instance.constraint.size()) + "\n";
  put_rows("outcome", instance.constraint);
  if (instance.has_implications) {
    out += "implications " + std::to_string(instance.implications.size()) + "\n";
    for (const ImplicationRule& r : instance.implications)
      out += "imply " + instance.issue_names[r.antecedent_issue] + "=" +
             instance.domains[r.antecedent_issue][r.antecedent_decision] + " -> " +
             instance.issue_names[r.consequent_issue] + "=" +
             instance.domains[r.consequent_issue][r.consequent_decision] + "\n";
  }
  if (!instance.name.empty()) out += "meta name " + instance.name + "\n";
  out += std::string("meta ballots-feasible ") + (instance.ballots_feasible ? "true" : "false") +
         "\n";
  out += "end\n";
  return out;
}

// ---------------------------------------------------------------------------
// fixtures

namespace {

std::vector<std::string> binary_labels() { return {"0", "1"}; }

Instance skeleton(const std::string& name, std::vector<std::string> issue_names) {
  Instance instance;
  instance.name = name;
  instance.issue_names = std::move(issue_names);
  instance.domains.assign(instance.issue_names.size(), binary_labels());
  return instance;
}

std::vector<Assignment> satisfying_assignments(const Instance& instance) {
  std::vector<Assignment> all;
  Assignment a(instance.issue_count(), 0);
  while (true) {
    if (satisfies_implications(instance, a)) all.push_back(a);
    int t = instance.issue_count() - 1;
    while (t >= 0) {
      if (++a[t] < instance.domain_size(t)) break;
      a[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
  return all;
}

}  // namespace

std::vector<std::string> fixture_names() {
  return {"example-1", "prop3", "prop6-m8", "sec5-agr", "sec6-price", "exm-implications",
          "exm-graph"};
}

Instance make_fixture(const std::string& name) {
  if (name == "example-1") {
    Instance instance = skeleton(name, {"a1", "a2"});
    instance.ballots = {{1, 0}, {0, 1}};
    instance.constraint = {{1, 0}, {0, 1}};
    return validated(std::move(instance));
  }
  if (name == "prop3") {
    Instance instance = skeleton(name, {"a1", "a2"});
    instance.ballots = {{1, 1}, {1, 0}};
    instance.constraint = {{0, 1}, {0, 0}};
    return validated(std::move(instance));
  }
  if (name == "prop6-m8") {
    Instance instance = skeleton(name, {"a1", "a2", "a3", "a4", "a5", "a6", "a7", "a8"});
    Assignment w1(8, 0);
    Assignment w2 = {0, 0, 1, 1, 1, 1, 1, 1};
    Assignment w3(8, 1);
    Assignment w4 = {1, 1, 0, 0, 0, 0, 0, 0};
    instance.constraint = {w1, w2, w3, w4};
    instance.ballots = {w1, w2, w3, w4};
    return validated(std::move(instance));
  }
  if (name == "sec5-agr") {
    Instance instance = skeleton(name, {"a1", "a2", "a3", "a4"});
    instance.ballots = {{1, 1, 1, 1}, {0, 0, 0, 0}};
    instance.constraint = {{1, 1, 0, 0}, {1, 1, 1, 0}};
    return validated(std::move(instance));
  }
  if (name == "sec6-price") {
    Instance instance = skeleton(name, {"a1", "a2", "a3", "a4"});
    instance.ballots = {{1, 1, 1, 1}, {0, 0, 0, 0}};
    instance.constraint = {{1, 1, 1, 1}, {1, 1, 0, 0}};
    return validated(std::move(instance));
  }
  if (name == "exm-implications") {
    Instance instance = skeleton(name, {"a", "b", "c", "d", "e"});
    instance.implications = {{0, 1, 1, 1}, {2, 1, 4, 0}, {3, 1, 4, 0}};
    instance.constraint = satisfying_assignments(instance);
    instance.ballots = {{0, 0, 0, 0, 0}, {1, 1, 0, 0, 0}};
    return validated(std::move(instance));
  }
  if (name == "exm-graph") {
    Instance instance = skeleton(name, {"a1", "a2", "a3", "a4"});
    instance.implications = {{0, 1, 1, 1}, {0, 1, 2, 1}, {1, 1, 3, 1}};
    instance.constraint = satisfying_assignments(instance);
    instance.ballots = {{0, 0, 0, 0}, {1, 1, 1, 1}};
    return validated(std::move(instance));
  }
  throw std::invalid_argument("unknown fixture: " + name);
}

// ---------------------------------------------------------------------------
// generator

namespace {

// Modulo draw: biased in principle but deterministic across platforms, which
// the seeded suites rely on. std::uniform_int_distribution is not portable.
int pick(std::mt19937_64& rng, int bound) { return (int)(rng() % (std::uint64_t)bound); }

Assignment random_assignment(std::mt19937_64& rng, const Instance& instance) {
  Assignment a(instance.issue_count());
  for (int t = 0; t < instance.issue_count(); ++t) a[t] = pick(rng, instance.domain_size(t));
  return a;
}

std::vector<Assignment> full_product(const Instance& instance) {
  std::vector<Assignment> all;
  Assignment a(instance.issue_count(), 0);
  while (true) {
    all.push_back(a);
    int t = instance.issue_count() - 1;
    while (t >= 0) {
      if (++a[t] < instance.domain_size(t)) break;
      a[t] = 0;
      --t;
    }
    if (t < 0) break;
  }
  return all;
}

// The local-fix semantics behind the implication graph must be sound for the
// rule guarantees: from every feasible outcome, fixing any single pair plus
// its reach set must land back inside the constraint.
bool coherent_implications(const Instance& instance) {
  for (const Assignment& w : instance.constraint) {
    OutcomeImplicationGraph graph = build_graph(instance, w);
    for (int t = 0; t < instance.issue_count(); ++t) {
      for (Decision d = 0; d < instance.domain_size(t); ++d) {
        if (d == w[t]) continue;
        Assignment moved = w;
        moved[t] = d;
        bool conflict = false;
        std::vector<char> touched(instance.issue_count(), 0);
        touched[t] = 1;
        for (const auto& [ri, rd] : reachable(graph, t, d)) {
          if (touched[ri] && moved[ri] != rd) {
            conflict = true;
            break;
          }
          touched[ri] = 1;
          moved[ri] = rd;
        }
        if (conflict || !satisfies_implications(instance, moved)) return false;
      }
    }
  }
  return true;
}

}  // namespace

Instance generate_instance(const GenSpec& spec) {
  if (spec.voters < 1 || spec.issues < 1) throw std::invalid_argument("generate_instance: bad size");
  std::mt19937_64 rng(spec.seed);

  Instance base;
  base.issue_names.resize(spec.issues);
  for (int t = 0; t < spec.issues; ++t) base.issue_names[t] = "a" + std::to_string(t + 1);
  base.domains.resize(spec.issues);
  for (int t = 0; t < spec.issues; ++t) {
    int size = spec.domain_sizes.empty() ? 2 : spec.domain_sizes[t % spec.domain_sizes.size()];
    if (size < 2) throw std::invalid_argument("generate_instance: domain size below 2");
    for (int d = 0; d < size; ++d) base.domains[t].push_back(std::to_string(d));
  }

  auto finish = [&](Instance instance) {
    instance.ballots.clear();
    for (int i = 0; i < spec.voters; ++i) {
      if (spec.ballots_feasible)
        instance.ballots.push_back(instance.constraint[pick(rng, (int)instance.constraint.size())]);
      else
        instance.ballots.push_back(random_assignment(rng, instance));
    }
    instance.name = "";
    return validated(std::move(instance));
  };

  switch (spec.profile) {
    case GenSpec::Profile::Unconstrained: {
      Instance instance = base;
      instance.constraint = full_product(instance);
      return finish(std::move(instance));
    }
    case GenSpec::Profile::RandomC: {
      Instance instance = base;
      std::vector<Assignment> all = full_product(instance);
      if (spec.constraint_size < 1 || spec.constraint_size > (int)all.size())
        throw std::invalid_argument("generate_instance: constraint size out of range");
      for (int i = (int)all.size() - 1; i > 0; --i) std::swap(all[i], all[pick(rng, i + 1)]);
      instance.constraint.assign(all.begin(), all.begin() + spec.constraint_size);
      return finish(std::move(instance));
    }
    case GenSpec::Profile::Nfd: {
      if (spec.constraint_size < 2)
        throw std::invalid_argument("generate_instance: NFD needs at least two outcomes");
      Instance instance = base;
      if (spec.constraint_size == 2) {
        // two outcomes with no common decision: pick the second to differ
        // everywhere, which NFD forces anyway at |C| = 2
        Assignment first = random_assignment(rng, instance);
        Assignment second(spec.issues);
        for (int t = 0; t < spec.issues; ++t) {
          int offset = 1 + pick(rng, instance.domain_size(t) - 1);
          second[t] = (first[t] + offset) % instance.domain_size(t);
        }
        instance.constraint = {first, second};
        return finish(std::move(instance));
      }
      std::vector<Assignment> all = full_product(instance);
      if (spec.constraint_size > (int)all.size())
        throw std::invalid_argument("generate_instance: constraint size out of range");
      for (int attempt = 0; attempt < 1000; ++attempt) {
        std::vector<Assignment> pool = all;
        for (int i = (int)pool.size() - 1; i > 0; --i) std::swap(pool[i], pool[pick(rng, i + 1)]);
        instance.constraint.assign(pool.begin(), pool.begin() + spec.constraint_size);
        if (has_nfd(instance.constraint)) return finish(std::move(instance));
      }
      throw std::runtime_error("generate_instance: could not satisfy the NFD profile");
    }
    case GenSpec::Profile::KRestrictive: {
      if (spec.k < 2) throw std::invalid_argument("generate_instance: k must be at least 2");
      for (int attempt = 0; attempt < 2000; ++attempt) {
        Instance instance = base;
        int rule_count = 1 + pick(rng, std::max(1, spec.issues - 1));
        for (int r = 0; r < rule_count; ++r) {
          ImplicationRule rule;
          rule.antecedent_issue = pick(rng, spec.issues);
          do {
            rule.consequent_issue = pick(rng, spec.issues);
          } while (rule.consequent_issue == rule.antecedent_issue);
          rule.antecedent_decision = pick(rng, instance.domain_size(rule.antecedent_issue));
          rule.consequent_decision = pick(rng, instance.domain_size(rule.consequent_issue));
          if (std::find(instance.implications.begin(), instance.implications.end(), rule) ==
              instance.implications.end())
            instance.implications.push_back(rule);
        }
        instance.has_implications = true;
        instance.constraint = satisfying_assignments(instance);
        if (instance.constraint.empty()) continue;
        RestrictivenessReport report = restrictiveness(instance);
        if (!report.consistent || report.vacuous || report.k > spec.k) continue;
        if (!coherent_implications(instance)) continue;
        return finish(std::move(instance));
      }
      throw std::runtime_error("generate_instance: could not satisfy the k-restrictive profile");
    }
  }
  throw std::logic_error("generate_instance: unknown profile");
}

// ---------------------------------------------------------------------------
// trace and price-system JSON

namespace {

json money_json(const Money& value) { return value.str(); }
Money money_from(const json& value) { return Rational::parse(value.get<std::string>()); }

json outcome_json(const Outcome& w) { return json(w); }

}  // namespace

std::string trace_to_json(const RuleTrace& trace) {
  json doc;
  doc["format"] = "propdec-trace/1";
  doc["rule"] = trace.rule;
  doc["instance_digest"] = trace.instance_digest;
  doc["voters"] = trace.voter_count;
  doc["issues"] = trace.issue_count;
  if (!trace.initial.empty()) doc["initial"] = outcome_json(trace.initial);
  doc["epsilon"] = money_json(trace.epsilon);
  doc["q"] = trace.q;
  doc["events"] = json::array();
  for (const TraceEvent& raw : trace.events) {
    json event;
    if (const auto* p = std::get_if<PurchaseEvent>(&raw)) {
      event["type"] = "purchase";
      event["issue"] = p->issue;
      event["decision"] = p->decision;
      event["lambda"] = money_json(p->lambda);
      event["rho"] = money_json(p->rho);
      event["payments"] = json::array();
      for (const auto& [voter, amount] : p->payments)
        event["payments"].push_back({voter, money_json(amount)});
      event["also_fixed"] = json::array();
      for (const auto& [issue, decision] : p->also_fixed)
        event["also_fixed"].push_back({issue, decision});
    } else if (const auto* f = std::get_if<FlipEvent>(&raw)) {
      event["type"] = "flip";
      event["issues"] = f->issues;
      event["old"] = f->old_decisions;
      event["new"] = f->new_decisions;
      event["new_prices"] = json::array();
      for (const Money& price : f->new_prices) event["new_prices"].push_back(money_json(price));
      event["group"] = f->group;
      event["refunds"] = json::array();
      for (const auto& [voter, amount] : f->refunds)
        event["refunds"].push_back({voter, money_json(amount)});
      event["payments"] = json::array();
      for (const auto& [voter, issue, amount] : f->payments)
        event["payments"].push_back({voter, issue, money_json(amount)});
      event["rho"] = money_json(f->rho);
      event["pav_gain"] = money_json(f->pav_gain);
    } else if (const auto* c = std::get_if<CompletionEvent>(&raw)) {
      event["type"] = "completion";
      event["assigned"] = json::array();
      for (const auto& [issue, decision] : c->assigned) event["assigned"].push_back({issue, decision});
    }
    doc["events"].push_back(std::move(event));
  }
  doc["termination"] = trace.termination;
  doc["final_outcome"] = outcome_json(trace.final_outcome);
  doc["final_budgets"] = json::array();
  for (const Money& b : trace.final_budgets) doc["final_budgets"].push_back(money_json(b));
  doc["final_prices"] = json::array();
  for (const Money& p : trace.final_prices) doc["final_prices"].push_back(money_json(p));
  return doc.dump(2) + "\n";
}

RuleTrace trace_from_json(const std::string& text) {
  json doc = json::parse(text);
  if (doc.value("format", "") != "propdec-trace/1")
    throw std::invalid_argument("trace_from_json: unknown format tag");
  RuleTrace trace;
  trace.rule = doc.at("rule").get<std::string>();
  trace.instance_digest = doc.at("instance_digest").get<std::string>();
  trace.voter_count = doc.at("voters").get<int>();
  trace.issue_count = doc.at("issues").get<int>();
  if (doc.contains("initial")) trace.initial = doc["initial"].get<Outcome>();
  trace.epsilon = money_from(doc.at("epsilon"));
  trace.q = doc.at("q").get<int>();
  for (const json& event : doc.at("events")) {
    std::string type = event.at("type").get<std::string>();
    if (type == "purchase") {
      PurchaseEvent p;
      p.issue = event.at("issue").get<int>();
      p.decision = event.at("decision").get<int>();
      p.lambda = money_from(event.at("lambda"));
      p.rho = money_from(event.at("rho"));
      for (const json& pay : event.at("payments"))
        p.payments.push_back({pay.at(0).get<int>(), money_from(pay.at(1))});
      for (const json& fix : event.at("also_fixed"))
        p.also_fixed.push_back({fix.at(0).get<int>(), fix.at(1).get<int>()});
      trace.events.push_back(std::move(p));
    } else if (type == "flip") {
      FlipEvent f;
      f.issues = event.at("issues").get<std::vector<int>>();
      f.old_decisions = event.at("old").get<std::vector<Decision>>();
      f.new_decisions = event.at("new").get<std::vector<Decision>>();
      for (const json& price : event.at("new_prices")) f.new_prices.push_back(money_from(price));
      f.group = event.at("group").get<std::vector<int>>();
      for (const json& refund : event.at("refunds"))
        f.refunds.push_back({refund.at(0).get<int>(), money_from(refund.at(1))});
      for (const json& pay : event.at("payments"))
        f.payments.push_back({pay.at(0).get<int>(), pay.at(1).get<int>(), money_from(pay.at(2))});
      f.rho = money_from(event.at("rho"));
      f.pav_gain = money_from(event.at("pav_gain"));
      trace.events.push_back(std::move(f));
    } else if (type == "completion") {
      CompletionEvent c;
      for (const json& fix : event.at("assigned"))
        c.assigned.push_back({fix.at(0).get<int>(), fix.at(1).get<int>()});
      trace.events.push_back(std::move(c));
    } else {
      throw std::invalid_argument("trace_from_json: unknown event type " + type);
    }
  }
  trace.termination = doc.at("termination").get<std::string>();
  trace.final_outcome = doc.at("final_outcome").get<Outcome>();
  for (const json& b : doc.at("final_budgets")) trace.final_budgets.push_back(money_from(b));
  for (const json& p : doc.at("final_prices")) trace.final_prices.push_back(money_from(p));
  return trace;
}

std::string price_system_to_json(const PriceSystem& ps) {
  json doc;
  doc["format"] = "propdec-prices/1";
  doc["payments"] = json::array();
  for (const auto& per_voter : ps.payments) {
    json voter_row = json::array();
    for (const auto& per_issue : per_voter) {
      json issue_row = json::array();
      for (const Money& amount : per_issue) issue_row.push_back(money_json(amount));
      voter_row.push_back(std::move(issue_row));
    }
    doc["payments"].push_back(std::move(voter_row));
  }
  doc["prices"] = json::array();
  for (const auto& per_issue : ps.prices) {
    json issue_row = json::array();
    for (const Money& price : per_issue) issue_row.push_back(money_json(price));
    doc["prices"].push_back(std::move(issue_row));
  }
  return doc.dump(2) + "\n";
}

PriceSystem price_system_from_json(const std::string& text, const Instance& instance) {
  json doc = json::parse(text);
  if (doc.value("format", "") != "propdec-prices/1")
    throw std::invalid_argument("price_system_from_json: unknown format tag");
  PriceSystem ps = PriceSystem::zeros(instance);
  const json& payments = doc.at("payments");
  if ((int)payments.size() != instance.voter_count())
    throw std::invalid_argument("price_system_from_json: wrong voter count");
  for (int i = 0; i < instance.voter_count(); ++i) {
    if ((int)payments[i].size() != instance.issue_count())
      throw std::invalid_argument("price_system_from_json: wrong issue count");
    for (int t = 0; t < instance.issue_count(); ++t) {
      if ((int)payments[i][t].size() != instance.domain_size(t))
        throw std::invalid_argument("price_system_from_json: wrong domain size");
      for (Decision d = 0; d < instance.domain_size(t); ++d)
        ps.payments[i][t][d] = money_from(payments[i][t][d]);
    }
  }
  const json& prices = doc.at("prices");
  if ((int)prices.size() != instance.issue_count())
    throw std::invalid_argument("price_system_from_json: wrong issue count in prices");
  for (int t = 0; t < instance.issue_count(); ++t) {
    if ((int)prices[t].size() != instance.domain_size(t))
      throw std::invalid_argument("price_system_from_json: wrong domain size in prices");
    for (Decision d = 0; d < instance.domain_size(t); ++d) ps.prices[t][d] = money_from(prices[t][d]);
  }
  return ps;
}

}  // namespace propdec

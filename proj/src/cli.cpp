#include "propdec/cli.hpp"

#include <algorithm>
#include <fstream>
#include <sstream>

#include <CLI11.hpp>
#include <nlohmann/json.hpp>

#include "propdec/axioms.hpp"
#include "propdec/deviation.hpp"
#include "propdec/implications.hpp"
#include "propdec/io.hpp"
#include "propdec/oracle.hpp"
#include "propdec/priceability.hpp"
#include "propdec/rules.hpp"

namespace propdec {

namespace {

using json = nlohmann::ordered_json;

Instance load_instance(const std::string& source) {
  const auto names = fixture_names();
  if (std::find(names.begin(), names.end(), source) != names.end()) return make_fixture(source);
  std::ifstream in(source);
  if (!in) throw std::runtime_error("cannot open instance file: " + source);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return parse_instance(buffer.str());
}

std::string read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open file: " + path);
  std::stringstream buffer;
  buffer << in.rdbuf();
  return buffer.str();
}

void write_file(const std::string& path, const std::string& content) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write file: " + path);
  out << content;
}

// Outcomes on the command line are comma-separated domain labels in issue
// order.
Outcome parse_outcome_labels(const Instance& instance, const std::string& text) {
  std::vector<std::string> labels;
  std::string current;
  for (char c : text) {
    if (c == ',') {
      labels.push_back(current);
      current.clear();
    } else {
      current += c;
    }
  }
  labels.push_back(current);
  if ((int)labels.size() != instance.issue_count())
    throw std::runtime_error("outcome has " + std::to_string(labels.size()) +
                             " entries, instance has " + std::to_string(instance.issue_count()) +
                             " issues");
  Outcome w(instance.issue_count());
  for (int t = 0; t < instance.issue_count(); ++t) {
    const auto& domain = instance.domains[t];
    auto pos = std::find(domain.begin(), domain.end(), labels[t]);
    if (pos == domain.end())
      throw std::runtime_error("label '" + labels[t] + "' not in the domain of issue " +
                               instance.issue_names[t]);
    w[t] = (Decision)(pos - domain.begin());
  }
  return w;
}

json labels_json(const Instance& instance, const Assignment& a) {
  json row = json::array();
  for (int t = 0; t < (int)a.size(); ++t) row.push_back(instance.domains[t][a[t]]);
  return row;
}

json one_based(const std::vector<int>& indices) {
  json row = json::array();
  for (int i : indices) row.push_back(i + 1);
  return row;
}

json witness_json(const Instance& instance, const AxiomWitness& witness) {
  json doc;
  doc["group"] = one_based(witness.group);
  doc["T"] = one_based(witness.cohesive_issues);
  doc["S"] = one_based(witness.deviation_issues);
  doc["target"] = labels_json(instance, witness.target);
  doc["entitlement"] = witness.entitlement.str();
  doc["max_member_satisfaction"] = witness.max_member_satisfaction;
  return doc;
}

AxiomSpec axiom_from_cli(const std::string& name, const std::string& alpha,
                         const std::string& beta) {
  if (name == "cohjr") return AxiomSpec::coh_jr();
  if (name == "cohejr") return AxiomSpec::cohesive_ejr(0);
  if (name == "cohejr1") return AxiomSpec::cohesive_ejr(1);
  if (name == "agrejr")
    return AxiomSpec::agr_ejr(Rational::parse(alpha), Rational::parse(beta));
  throw std::runtime_error("unknown axiom: " + name + " (try cohjr|cohejr|cohejr1|agrejr)");
}

}  // namespace

int cli_dispatch(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"constrained public decisions: proportional rules, axiom checkers and oracles"};
  app.name("propdec");
  app.require_subcommand(1);

  std::string instance_arg, outcome_arg, rule_arg, axiom_arg, trace_arg, system_arg, out_arg;
  std::string alpha_arg = "1", beta_arg = "0", epsilon_arg = "1", initial_arg;
  std::string pricing_arg = "unit";
  int q_arg = 0;

  auto* run = app.add_subcommand("run", "run a decision rule");
  run->add_option("rule", rule_arg, "mes|mecora|greedy-mecora|lspav")->required();
  run->add_option("--instance", instance_arg, "instance file or fixture name")->required();
  run->add_option("--pricing", pricing_arg, "mes pricing: unit|fixed");
  run->add_option("--q", q_arg, "greedy-mecora satisfaction-cap offset");
  run->add_option("--epsilon", epsilon_arg, "auction price increment (rational)");
  run->add_option("--initial", initial_arg, "initial outcome labels, comma-separated");
  run->add_option("--trace", trace_arg, "write the run trace to this file");

  auto* check = app.add_subcommand("check", "check an axiom on an outcome");
  check->add_option("axiom", axiom_arg, "cohjr|cohejr|cohejr1|agrejr")->required();
  check->add_option("--instance", instance_arg)->required();
  check->add_option("--outcome", outcome_arg, "outcome labels, comma-separated")->required();
  check->add_option("--alpha", alpha_arg, "agrejr multiplicative slack (rational in (0,1])");
  check->add_option("--beta", beta_arg, "agrejr additive slack (non-negative)");

  auto* deviations = app.add_subcommand("deviations", "enumerate feasible group deviations");
  deviations->add_option("--instance", instance_arg)->required();
  deviations->add_option("--outcome", outcome_arg)->required();

  auto* classify = app.add_subcommand("classify", "fixed decisions, NFD, implication analysis");
  classify->add_option("--instance", instance_arg)->required();

  auto* price = app.add_subcommand("price", "price-system verification and extraction");
  price->require_subcommand(1);
  auto* price_verify = price->add_subcommand("verify", "check conditions P1-P5");
  price_verify->add_option("--instance", instance_arg)->required();
  price_verify->add_option("--outcome", outcome_arg)->required();
  price_verify->add_option("--system", system_arg, "price-system JSON file")->required();
  auto* price_extract = price->add_subcommand("extract", "read a price system off an auction trace");
  price_extract->add_option("--instance", instance_arg)->required();
  price_extract->add_option("--trace", trace_arg, "trace JSON file")->required();
  price_extract->add_option("--system-out", system_arg, "write the price system here");

  auto* oracle = app.add_subcommand("oracle", "brute-force reference tools");
  oracle->require_subcommand(1);
  auto* oracle_search = oracle->add_subcommand("search", "evaluate an axiom on every feasible outcome");
  oracle_search->add_option("--instance", instance_arg)->required();
  oracle_search->add_option("--axiom", axiom_arg, "cohjr|cohejr|cohejr1|agrejr")->required();
  oracle_search->add_option("--alpha", alpha_arg);
  oracle_search->add_option("--beta", beta_arg);

  auto* fixture = app.add_subcommand("fixture", "bundled instances from the literature");
  fixture->require_subcommand(1);
  fixture->add_subcommand("list", "list fixture names");
  auto* fixture_emit = fixture->add_subcommand("emit", "print a fixture as an instance document");
  std::string fixture_name;
  fixture_emit->add_option("name", fixture_name)->required();

  auto* gen = app.add_subcommand("gen", "generate a seeded random instance");
  int gen_n = 2, gen_m = 2, gen_c = 2, gen_k = 2;
  std::uint64_t gen_seed = 0;
  std::string gen_profile = "random-c", gen_domains;
  bool gen_feasible = false;
  gen->add_option("--n", gen_n, "voter count")->required();
  gen->add_option("--m", gen_m, "issue count")->required();
  gen->add_option("--domains", gen_domains, "comma-separated domain sizes, cycled over issues");
  gen->add_option("--profile", gen_profile, "unconstrained|random-c|k-restrictive|nfd");
  gen->add_option("--c-size", gen_c, "constraint size for random-c/nfd");
  gen->add_option("--k", gen_k, "restrictiveness bound for k-restrictive");
  gen->add_flag("--ballots-feasible", gen_feasible, "draw ballots from the constraint");
  gen->add_option("--seed", gen_seed)->required();
  gen->add_option("--out", out_arg, "write the instance here instead of stdout");

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::stringstream sink_out, sink_err;
    int code = app.exit(e, sink_out, sink_err);
    out << sink_out.str();
    err << sink_err.str();
    return code == 0 ? 0 : 2;
  }

  try {
    if (run->parsed()) {
      Instance instance = load_instance(instance_arg);
      RuleResult result;
      if (rule_arg == "mes") {
        if (pricing_arg != "unit" && pricing_arg != "fixed")
          throw std::runtime_error("unknown pricing: " + pricing_arg);
        result = run_mes(instance, pricing_arg == "unit" ? MesPricing::Unit : MesPricing::Fixed);
      } else {
        Outcome initial = initial_arg.empty() ? instance.constraint.front()
                                              : parse_outcome_labels(instance, initial_arg);
        Money epsilon = Rational::parse(epsilon_arg);
        if (rule_arg == "mecora")
          result = run_mecora(instance, epsilon, initial);
        else if (rule_arg == "greedy-mecora")
          result = run_greedy_mecora(instance, q_arg, epsilon, initial);
        else if (rule_arg == "lspav")
          result = run_ls_pav(instance, initial);
        else
          throw std::runtime_error("unknown rule: " + rule_arg);
      }
      if (!trace_arg.empty()) write_file(trace_arg, trace_to_json(result.trace));
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "run";
      doc["rule"] = result.trace.rule;
      doc["outcome"] = labels_json(instance, result.outcome);
      doc["termination"] = result.trace.termination;
      doc["events"] = (int)result.trace.events.size();
      if (!trace_arg.empty()) doc["trace"] = trace_arg;
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (check->parsed()) {
      Instance instance = load_instance(instance_arg);
      Outcome w = parse_outcome_labels(instance, outcome_arg);
      AxiomSpec spec = axiom_from_cli(axiom_arg, alpha_arg, beta_arg);
      AxiomVerdict verdict = check_axiom(instance, w, spec);
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "check";
      doc["axiom"] = spec.name();
      doc["outcome"] = labels_json(instance, w);
      doc["satisfied"] = verdict.satisfied;
      if (verdict.witness) doc["witness"] = witness_json(instance, *verdict.witness);
      out << doc.dump(2) << "\n";
      return verdict.satisfied ? 0 : 1;
    }

    if (deviations->parsed()) {
      Instance instance = load_instance(instance_arg);
      Outcome w = parse_outcome_labels(instance, outcome_arg);
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "deviations";
      doc["outcome"] = labels_json(instance, w);
      doc["witnesses"] = json::array();
      for (const DeviationWitness& witness : enumerate_deviations(instance, w)) {
        json row;
        row["group"] = one_based(witness.group);
        row["S"] = one_based(witness.issues);
        row["target"] = labels_json(instance, witness.target);
        doc["witnesses"].push_back(std::move(row));
      }
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (classify->parsed()) {
      Instance instance = load_instance(instance_arg);
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "classify";
      auto fixed = fixed_decisions(instance.constraint);
      doc["nfd"] = fixed.empty();
      doc["fixed_decisions"] = json::array();
      for (const auto& [t, d] : fixed)
        doc["fixed_decisions"].push_back({instance.issue_names[t], instance.domains[t][d]});
      json imp;
      imp["present"] = instance.has_implications;
      if (instance.has_implications) {
        EquivalenceReport eq = verify_implication_equivalence(instance);
        imp["equivalent"] = eq.equivalent;
        imp["only_implications"] = (int)eq.only_implications.size();
        imp["only_constraint"] = (int)eq.only_constraint.size();
        RestrictivenessReport rep = restrictiveness(instance);
        json restrict;
        restrict["k"] = rep.k;
        restrict["max_reach"] = rep.max_reach;
        restrict["consistent"] = rep.consistent;
        if (!rep.consistent) restrict["inconsistency"] = rep.inconsistency;
        if (rep.vacuous)
          restrict["warning"] = "no effective implication at any feasible outcome; k=1 by convention";
        imp["restrictiveness"] = std::move(restrict);
      }
      doc["implications"] = std::move(imp);
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (price_verify->parsed()) {
      Instance instance = load_instance(instance_arg);
      Outcome w = parse_outcome_labels(instance, outcome_arg);
      PriceSystem ps = price_system_from_json(read_file(system_arg), instance);
      PriceCheckReport report = verify_price_system(instance, w, ps);
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "price-verify";
      doc["outcome"] = labels_json(instance, w);
      doc["ok"] = report.ok;
      doc["violated"] = report.violated;
      if (report.p5_witness) {
        doc["p5_witness"]["group"] = one_based(report.p5_witness->group);
        doc["p5_witness"]["S"] = one_based(report.p5_witness->issues);
      }
      out << doc.dump(2) << "\n";
      return report.ok ? 0 : 1;
    }

    if (price_extract->parsed()) {
      Instance instance = load_instance(instance_arg);
      RuleTrace trace = trace_from_json(read_file(trace_arg));
      auto [w, ps] = extract_price_system(instance, trace);
      std::string encoded = price_system_to_json(ps);
      if (!system_arg.empty()) write_file(system_arg, encoded);
      PriceCheckReport report = verify_price_system(instance, w, ps);
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "price-extract";
      doc["outcome"] = labels_json(instance, w);
      doc["verified"] = report.ok;
      doc["violated"] = report.violated;
      if (system_arg.empty()) doc["system"] = json::parse(encoded);
      out << doc.dump(2) << "\n";
      return report.ok ? 0 : 1;
    }

    if (oracle_search->parsed()) {
      Instance instance = load_instance(instance_arg);
      AxiomSpec spec = axiom_from_cli(axiom_arg, alpha_arg, beta_arg);
      SearchReport report = exists_satisfying_outcome(instance, spec);
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "oracle-search";
      doc["axiom"] = spec.name();
      doc["verdicts"] = json::array();
      for (const auto& [w, ok] : report.verdicts) {
        json row;
        row["outcome"] = labels_json(instance, w);
        row["satisfied"] = ok;
        doc["verdicts"].push_back(std::move(row));
      }
      doc["satisfying"] = json::array();
      for (const Outcome& w : report.satisfying) doc["satisfying"].push_back(labels_json(instance, w));
      out << doc.dump(2) << "\n";
      return report.satisfying.empty() ? 1 : 0;
    }

    if (fixture->parsed()) {
      if (fixture_emit->parsed()) {
        out << serialize_instance(make_fixture(fixture_name));
        return 0;
      }
      json doc;
      doc["format"] = "propdec-report/1";
      doc["command"] = "fixture-list";
      doc["fixtures"] = fixture_names();
      out << doc.dump(2) << "\n";
      return 0;
    }

    if (gen->parsed()) {
      GenSpec spec;
      spec.voters = gen_n;
      spec.issues = gen_m;
      spec.constraint_size = gen_c;
      spec.k = gen_k;
      spec.ballots_feasible = gen_feasible;
      spec.seed = gen_seed;
      if (!gen_domains.empty()) {
        std::stringstream in(gen_domains);
        std::string part;
        while (std::getline(in, part, ',')) spec.domain_sizes.push_back(std::stoi(part));
      }
      if (gen_profile == "unconstrained")
        spec.profile = GenSpec::Profile::Unconstrained;
      else if (gen_profile == "random-c")
        spec.profile = GenSpec::Profile::RandomC;
      else if (gen_profile == "k-restrictive")
        spec.profile = GenSpec::Profile::KRestrictive;
      else if (gen_profile == "nfd")
        spec.profile = GenSpec::Profile::Nfd;
      else
        throw std::runtime_error("unknown profile: " + gen_profile);
      std::string document = serialize_instance(generate_instance(spec));
      if (out_arg.empty())
        out << document;
      else
        write_file(out_arg, document);
      return 0;
    }
  } catch (const std::exception& e) {
    err << "propdec: " << e.what() << "\n";
    return 2;
  }
  err << "propdec: no subcommand handled\n";
  return 2;
}

}  // namespace propdec

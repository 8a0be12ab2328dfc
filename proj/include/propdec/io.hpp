#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

#include "propdec/model.hpp"
#include "propdec/priceability.hpp"
#include "propdec/rules.hpp"

namespace propdec {

// Aggregated parse/validation failures with line locations.
struct ParseError : std::runtime_error {
  explicit ParseError(std::vector<std::string> errors_in);
  std::vector<std::string> errors;
};

// Instance text format, one document with sections in canonical order:
//
//   propdec-instance v1
//   issues <m>
//   issue <name> : <label> <label> ...
//   voters <n>
//   ballot <label> ...
//   constraint <count>
//   outcome <label> ...
//   implications <count>           (section omitted when empty)
//   imply <issue>=<label> -> <issue>=<label>
//   meta name <name>               (omitted when empty)
//   meta ballots-feasible <true|false>
//   end
//
// '#' starts a comment; blank lines are ignored. serialize() emits the
// canonical form, so serialize(parse(f)) == f for canonical files and
// serializing is idempotent canonicalization for everything else.
Instance parse_instance(const std::string& document);
std::string serialize_instance(const Instance& instance);

// Built-in instances from the literature this library follows.
std::vector<std::string> fixture_names();
Instance make_fixture(const std::string& name);

struct GenSpec {
  enum class Profile { Unconstrained, RandomC, KRestrictive, Nfd };
  int voters = 2;
  int issues = 2;
  std::vector<int> domain_sizes;  // empty means all binary
  Profile profile = Profile::RandomC;
  int constraint_size = 2;  // RandomC / Nfd
  int k = 2;                // KRestrictive: resulting restrictiveness in [2, k]
  bool ballots_feasible = false;
  std::uint64_t seed = 0;
};

// Deterministic for a given spec+seed. KRestrictive instances are built
// implications-first (the constraint is the satisfying set) and only emitted
// when the implication semantics is coherent: every single-pair fix plus its
// reach set lands back inside the constraint. Throws when the spec cannot be
// met.
Instance generate_instance(const GenSpec& spec);

// JSON round-trips for traces and price systems; all money as "p/q" strings.
std::string trace_to_json(const RuleTrace& trace);
RuleTrace trace_from_json(const std::string& text);
std::string price_system_to_json(const PriceSystem& ps);
PriceSystem price_system_from_json(const std::string& text, const Instance& instance);

}  // namespace propdec

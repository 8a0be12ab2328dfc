#pragma once

#include <optional>
#include <string>
#include <vector>

#include "propdec/model.hpp"
#include "propdec/rational.hpp"

namespace propdec {

struct AxiomWitness {
  std::vector<int> group;            // ascending voter indices
  std::vector<int> cohesive_issues;  // T
  std::vector<int> deviation_issues; // S, subset of T
  Outcome target;
  Rational entitlement;              // the satisfaction threshold the group fell short of
  int max_member_satisfaction = 0;
};

struct AxiomVerdict {
  bool satisfied = true;
  std::optional<AxiomWitness> witness;  // present exactly when not satisfied
};

struct CheckOptions {
  int max_issues = 16;  // cap on the T enumeration
};

// Identifies an axiom plus its parameters; shared by the checkers' callers,
// the brute-force oracle and the CLI.
struct AxiomSpec {
  enum class Kind { CohesiveEjr, CohJr, AgreementEjr };
  Kind kind = Kind::CohesiveEjr;
  int offset = 0;                 // CohesiveEjr: threshold |T| - offset
  Rational alpha = Rational(1);   // AgreementEjr
  Rational beta = Rational(0);

  std::string name() const;
  static AxiomSpec cohesive_ejr(int offset = 0) { return {Kind::CohesiveEjr, offset, 1, 0}; }
  static AxiomSpec coh_jr() { return {Kind::CohJr, 0, 1, 0}; }
  static AxiomSpec agr_ejr(Rational alpha = 1, Rational beta = 0) {
    return {Kind::AgreementEjr, 0, alpha, beta};
  }
};

// Satisfied iff no T-cohesive group with a feasible deviation inside T has
// all members below |T| - offset in satisfaction. offset=0 is the EJR form,
// offset=1 the relaxation. Witnesses report the first violation met scanning
// T by size then lexicographically, assignments lexicographically.
AxiomVerdict check_cohesive_ejr(const Instance& instance, const Outcome& w, int offset,
                                const CheckOptions& options = {});

// |S| = |T| = 1 special case with threshold 1: no group of at least n/m
// voters may share a feasible single-issue flip while all sit at zero
// satisfaction.
AxiomVerdict check_coh_jr(const Instance& instance, const Outcome& w);

// Agreement-based EJR with multiplicative slack alpha in (0,1] and additive
// slack beta >= 0. A group of size s counts only with a deviation of size
// |S| <= |T| * s / n, and violates when every member sits below
// alpha * (s/n) * |T| - beta. All threshold arithmetic is exact.
AxiomVerdict check_agr_ejr(const Instance& instance, const Outcome& w, const Rational& alpha,
                           const Rational& beta, const CheckOptions& options = {});

AxiomVerdict check_axiom(const Instance& instance, const Outcome& w, const AxiomSpec& spec,
                         const CheckOptions& options = {});

}  // namespace propdec

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicsr/cover.hpp"
#include "padicsr/graph.hpp"
#include "padicsr/ramification.hpp"
#include "padicsr/series.hpp"
#include "padicsr/tower.hpp"

namespace psr {

struct NewTailLocus {
  TowerElement d;
  RatVal v_e;
  std::string description;
};

// Center and radius of the unique new (etale) tail.
NewTailLocus new_tail_locus(const CoverSpec& spec);

struct InseparableTail {
  long j = 0;  // p^j-tail
  std::string label;
  std::optional<TowerElement> center;
  RatVal radius_valuation;
  bool contains_one = false;
};

std::vector<InseparableTail> inseparable_tails(const CoverSpec& spec);

// The cover Y/Q_j: same exponents, n - j in place of n.
CoverSpec quotient_spec(const CoverSpec& spec, long j);

DecoratedGraph build_stable_graph(const CoverSpec& spec);

// Expands on the new-tail disk and classifies. Where a root of a radical is
// chosen, every choice is classified and the verdicts must agree.
ReductionVerdict certify_tail(const CoverSpec& spec);

FieldTower stab_field_tower(const CoverSpec& spec);

struct VerifiedFact {
  std::string statement;
  std::string expected;
  std::string actual;
  bool holds = false;
};

struct ConductorReport {
  ConductorValue conductor;
  bool vanishes_at_n = false;
  std::vector<std::string> detail;  // per step
  std::vector<VerifiedFact> facts;
};

// Throws CertificationFailed when a valuation fact the tower rests on fails.
ConductorReport conductor_bound(const FieldTower& tower, long n);

struct TailCertificate {
  std::string component;
  ReductionVerdict verdict;
};

struct StableModelReport {
  CoverSpec spec;
  DecoratedGraph graph;
  std::vector<TailCertificate> tail_certificates;
  FieldTower tower;
  ConductorReport conductor;
  std::string moduli_field_note;
  std::vector<Violation> violations;
  Rat vanishing_residual = 0;
  bool local_vanishing_ok = false;
  bool telescoping_ok = false;

  bool all_certified() const;
};

StableModelReport analyze(const CoverSpec& spec);

// Checks that every component of the Y/Q_j graph appears in the full graph
// with inertia raised by j and the same disk. Returns the mismatches.
std::vector<std::string> quotient_embedding(const DecoratedGraph& full, const DecoratedGraph& quotient, long j);

}  // namespace psr

#pragma once

#include <optional>
#include <string>
#include <vector>

#include "padicsr/rational.hpp"

namespace psr {

enum class Numbering { Upper, Lower };

struct Jump {
  Rat at;
  Int order_after;  // |G^x| (or |G_x|) just above the jump
};

// Ramification filtration of a totally ramified Galois extension of K_0.
// The group at x in [-1, first jump] has order `degree`.
struct Filtration {
  Int degree = 1;
  std::vector<Jump> jumps;
  Numbering numbering = Numbering::Upper;

  void validate() const;  // throws MalformedFiltration
  Rat conductor() const;  // greatest jump, 0 when there is none
  Int order_at(const Rat& x) const;
  // Quotient by the last nontrivial group G^{top}; upper numbering only.
  Filtration quotient_by_last() const;
  bool operator==(const Filtration& o) const;
};

Filtration herbrand_convert(const Filtration& f, Numbering target);
// phi_{L/K}(x) for a lower-numbered filtration, psi for an upper one.
Rat herbrand_phi(const Filtration& lower, const Rat& x);
Rat herbrand_psi(const Filtration& upper, const Rat& u);
// Adds a degree-p layer whose upper jump is u (upper numbering in, out).
Filtration add_layer(const Filtration& upper, const Rat& u, long p);

Filtration cyclotomic_filtration(long p, long n);

Rat compositum_conductor(const std::vector<Rat>& hs);
Rat tame_top_conductor(const Rat& h_of_LK);
long artin_schreier_genus(long h, long p);
long artin_schreier_conductor(const std::vector<long>& degrees, long p);

enum class ConductorKind { Exact, Bound, Unknown };

struct ConductorValue {
  ConductorKind kind = ConductorKind::Unknown;
  Rat value = 0;
  bool strict = false;  // for bounds: value is a strict upper bound

  static ConductorValue exact(const Rat& v) { return {ConductorKind::Exact, v, false}; }
  static ConductorValue bound(const Rat& v, bool strict = false) { return {ConductorKind::Bound, v, strict}; }
  static ConductorValue unknown() { return {}; }
};

std::string conductor_kind_name(ConductorKind k);

// Combines conductors of fields whose compositum is wanted.
ConductorValue combine_conductors(const std::vector<ConductorValue>& parts);

// Data of a field F over K_0 at which a Kummer step is taken.
struct KummerLevel {
  long p = 0;
  Rat e;             // v_F(p)
  Filtration upper;  // of F/K_0
  long cyclotomic = 0;  // F contains K_c for this c
  bool filtration_is_bound = false;  // jumps are upper bounds, not exact
};

KummerLevel cyclotomic_level(long p, long c);

struct Radicand {
  enum class Kind { Rational, Valuation, Opaque };
  Kind kind = Kind::Opaque;
  Rat value;      // for Rational
  RatVal valuation;  // for Valuation (and filled in for Rational)

  static Radicand rational(const Rat& q);
  static Radicand with_valuation(const RatVal& v);
  static Radicand opaque();
};

struct KummerConductor {
  ConductorValue relative;   // of F(u^{1/m})/F, in F-normalized numbering
  ConductorValue over_base;  // of the Galois closure over K_0
  std::string rule;
  std::optional<KummerLevel> extended;  // F(u^{1/m}) as a new level
};

KummerConductor kummer_step_conductor(const KummerLevel& level, const Radicand& u, long m);

enum class StepKind { Cyclotomic, KummerRadical, Tame };

struct FieldStep {
  StepKind kind = StepKind::Tame;
  long level = 0;      // Cyclotomic: c in K_c; KummerRadical: base cyclotomic level
  long m = 1;          // KummerRadical degree
  std::optional<std::size_t> over_step;  // KummerRadical taken over an earlier Kummer step
  std::string label;   // human-readable radicand
  Radicand radicand;
  // Steps whose conductor comes from results cited, not derived, carry an
  // asserted strict bound (value) instead of a computed one.
  std::optional<Rat> asserted_strict_bound;
  std::string rule;
};

std::string step_kind_name(StepKind k);

struct FieldTower {
  long p = 0;
  long n = 0;
  std::string case_label;
  std::vector<FieldStep> steps;
  // (p, n, a, b) of the cover the tower came from, if any.
  std::optional<std::pair<Int, Int>> source_ab;
  std::string moduli_field_note;
};

}  // namespace psr

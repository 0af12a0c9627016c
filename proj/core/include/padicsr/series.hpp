#pragma once

#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "padicsr/cover.hpp"
#include "padicsr/tower.hpp"

namespace psr {

// Expansion g(d + e t) = sum c_l t^l of g = c x^a (x - 1)^b with
// c = d^{-a} (d - 1)^{-b}. The scale is kept symbolic: c_l = e^l S_l, so
// valuations and the homogeneous quantities used by the classifier never need
// e itself. A concrete e may be supplied for coefficient-level checks.
class DiskExpansion {
 public:
  long p = 0, n = 0;
  Int a, b;
  std::optional<TowerElement> center;
  RatVal scale_valuation = 0;
  bool scale_zero = false;
  std::optional<TowerElement> scale;
  std::vector<TowerElement> reduced;  // S_0 .. S_L
  long truncation = 0;
  // true when coefficients beyond the truncation are known to vanish.
  bool exact_polynomial = false;
  RatVal center_minus_one_valuation = 0;
  long b_valuation = 0;

  std::optional<RatVal> coeff_valuation(long l) const;
  TowerElement coeff(long l) const;  // needs a concrete scale
};

DiskExpansion expand_disk(const CoverSpec& spec, const TowerElement& d, const TowerElement& e, long L = 0);
DiskExpansion expand_disk(const CoverSpec& spec, const TowerElement& d, const RatVal& v_e, long L = 0);
// Polynomial expansion sum c_l t^l given directly (scale 1).
DiskExpansion expansion_from_coefficients(long p, long n, std::vector<TowerElement> coeffs);

long default_truncation(long p);

enum class VerdictKind { SplitsArtinSchreier, SplitsZ4, NotCertified };

struct ReductionVerdict {
  VerdictKind kind = VerdictKind::NotCertified;
  Int count = 0;
  long conductor = 0;  // h for Artin-Schreier, first upper jump for Z/4
  std::string condition;  // "(i)", "(ii)", "mu4"
  std::string reason;
  std::vector<std::pair<long, std::optional<RatVal>>> profile;
  std::vector<std::pair<std::string, std::optional<RatVal>>> witnesses;
  std::optional<RatVal> tail_bound;  // certified lower bound beyond L

  bool certified() const { return kind != VerdictKind::NotCertified; }
};

std::string verdict_kind_name(VerdictKind k);

ReductionVerdict classify_torsor_reduction(const DiskExpansion& exp);

struct BinomialRoot {
  long p = 0, n = 0;
  RatVal input_valuation;
  RatVal leading_valuation;  // v(b / p^{n-1})
  std::vector<RatVal> term_valuations;  // degree 2 .. terms
  RatVal tail_lower_bound;  // for all degrees beyond the listed ones
  bool higher_terms_above;  // every degree >= 2 term has valuation > p/(p-1)
};

// The p^{n-1}-st root of 1 + b w, b of valuation v_b, by the binomial series.
BinomialRoot binomial_root_series(const RatVal& v_b, long p, long n, long terms = 8);

}  // namespace psr

#include "padicsr/series.hpp"

#include <algorithm>

#include "padicsr/config.hpp"

namespace psr {

long default_truncation(long p) {
  long L = std::max(p + 1, 2 * p);
  long cfg = default_config().truncation;
  return cfg > 0 ? std::max(cfg, p + 1) : L;
}

std::optional<RatVal> DiskExpansion::coeff_valuation(long l) const {
  if (l < 0 || l >= static_cast<long>(reduced.size())) throw Error(ErrorCode::InvalidArgument, "coefficient index beyond truncation");
  if (l > 0 && scale_zero) return std::nullopt;
  auto v = reduced[l].valuation_or_inf();
  if (!v) return std::nullopt;
  return *v + Rat(l) * scale_valuation;
}

TowerElement DiskExpansion::coeff(long l) const {
  if (l < 0 || l >= static_cast<long>(reduced.size())) throw Error(ErrorCode::InvalidArgument, "coefficient index beyond truncation");
  if (!scale) throw Error(ErrorCode::InvalidArgument, "expansion has a symbolic scale");
  return reduced[l] * scale->pow(l);
}

namespace {

DiskExpansion expand_reduced(const CoverSpec& spec, const TowerElement& d, long L) {
  if (auto q = d.as_rational(); q && (*q == 0 || *q == 1))
    throw Error(ErrorCode::CenterOnBranchLocus, "disk center is a branch point");
  if (L <= 0) L = default_truncation(spec.p);
  if (L < spec.p + 1) throw Error(ErrorCode::InvalidArgument, "truncation must be at least p + 1");
  DiskExpansion x;
  x.p = spec.p;
  x.n = spec.n;
  x.a = spec.a;
  x.b = spec.b;
  x.center = d;
  x.truncation = L;
  const TowerElement dm1 = d - Rat(1);
  x.center_minus_one_valuation = dm1.valuation();
  x.b_valuation = vp(spec.b, spec.p);
  const TowerElement dinv = d.inverse();
  const TowerElement d1inv = dm1.inverse();
  std::vector<TowerElement> pd{d.tower()->one()}, pd1{d.tower()->one()};
  for (long k = 1; k <= L; ++k) {
    pd.push_back(pd.back() * dinv);
    pd1.push_back(pd1.back() * d1inv);
  }
  std::vector<Rat> ca, cb;
  for (long k = 0; k <= L; ++k) {
    ca.push_back(binomial(Rat(spec.a), static_cast<unsigned long>(k)));
    cb.push_back(binomial(Rat(spec.b), static_cast<unsigned long>(k)));
  }
  for (long l = 0; l <= L; ++l) {
    TowerElement s = d.tower()->zero();
    for (long j = 0; j <= l; ++j) {
      Rat coef = ca[l - j] * cb[j];
      if (coef == 0) continue;
      s = s + pd[l - j] * pd1[j] * coef;
    }
    x.reduced.push_back(s);
  }
  return x;
}

}  // namespace

DiskExpansion expand_disk(const CoverSpec& spec, const TowerElement& d, const TowerElement& e, long L) {
  DiskExpansion x = expand_reduced(spec, d, L);
  x.scale = e;
  if (e.is_zero()) {
    x.scale_zero = true;
  } else {
    x.scale_valuation = e.valuation();
  }
  return x;
}

DiskExpansion expand_disk(const CoverSpec& spec, const TowerElement& d, const RatVal& v_e, long L) {
  DiskExpansion x = expand_reduced(spec, d, L);
  x.scale_valuation = v_e;
  return x;
}

DiskExpansion expansion_from_coefficients(long p, long n, std::vector<TowerElement> coeffs) {
  if (coeffs.empty()) throw Error(ErrorCode::InvalidArgument, "no coefficients");
  DiskExpansion x;
  x.p = p;
  x.n = n;
  x.truncation = static_cast<long>(coeffs.size()) - 1;
  x.reduced = std::move(coeffs);
  x.exact_polynomial = true;
  return x;
}

std::string verdict_kind_name(VerdictKind k) {
  switch (k) {
    case VerdictKind::SplitsArtinSchreier: return "SplitsArtinSchreier";
    case VerdictKind::SplitsZ4: return "SplitsZ4";
    case VerdictKind::NotCertified: return "NotCertified";
  }
  return "";
}

namespace {

long floor_log(long l, long p) {
  long k = 0;
  for (long q = p; q <= l; q *= p) ++k;
  return k;
}

// Lower bound for v(c_l), l > L, from v(C(b, j)) >= max(0, v(b) - floor(log_p j)),
// v(d) = 0 and v(d - 1) = delta.
RatVal tail_term_bound(const DiskExpansion& x, long l) {
  Rat inner = Rat(std::max(0L, x.b_valuation - floor_log(l, x.p))) - Rat(l) * x.center_minus_one_valuation;
  return Rat(l) * x.scale_valuation + std::min(Rat(0), inner);
}

// Certified lower bound on v(c_l) over all l > L; checks threshold on the way.
// Returns the smallest bound seen (a valid lower bound for every l > L).
RatVal certify_tail(const DiskExpansion& x, const RatVal& threshold, bool strict) {
  if (x.exact_polynomial || x.scale_zero) return threshold + 1;
  if (x.center && x.center->valuation() != 0)
    throw Error(ErrorCode::PrecisionExhausted, "tail certificate needs a unit center");
  const RatVal kappa = x.scale_valuation - x.center_minus_one_valuation;
  if (kappa <= 0) throw Error(ErrorCode::PrecisionExhausted, "coefficients do not decay beyond the truncation");
  const long L = x.truncation;
  RatVal best;
  bool have = false;
  const long k0 = floor_log(L + 1, x.p);
  for (long k = k0; k < 62; ++k) {
    // On [p^k, p^{k+1}) the bound increases in l, so its first point beyond L is the minimum.
    Int pk = ipow(x.p, static_cast<unsigned long>(k));
    long start = k == k0 ? L + 1 : pk.get_si();
    RatVal bound = tail_term_bound(x, start);
    if (!have || bound < best) best = bound;
    have = true;
    bool ok = strict ? bound > threshold : bound >= threshold;
    if (!ok)
      throw Error(ErrorCode::PrecisionExhausted, "cannot certify coefficients beyond l = " + std::to_string(L) + "; raise the truncation");
    // From here on each block starts higher than the previous one.
    if (k > k0 && Rat(pk * (x.p - 1)) * kappa >= 1) return best;
  }
  throw Error(ErrorCode::PrecisionExhausted, "tail certificate did not terminate");
}

bool gt(const std::optional<RatVal>& v, const RatVal& t) { return !v || *v > t; }
bool ge(const std::optional<RatVal>& v, const RatVal& t) { return !v || *v >= t; }
bool eq(const std::optional<RatVal>& v, const RatVal& t) { return v && *v == t; }

std::optional<TowerElement> find_i(const TowerPtr& t) {
  for (std::size_t k = 0; k < t->levels(); ++k) {
    const auto& st = t->steps()[k];
    if (st.exponent != 2) continue;
    bool minus_one = st.radicand[0] == -1;
    for (std::size_t j = 1; j < st.radicand.size(); ++j) minus_one = minus_one && st.radicand[j] == 0;
    if (minus_one) return t->generator(k + 1);
  }
  return std::nullopt;
}

}  // namespace

ReductionVerdict classify_torsor_reduction(const DiskExpansion& x) {
  ReductionVerdict r;
  const long p = x.p, n = x.n, L = x.truncation;
  if (x.reduced.empty() || x.reduced[0] != x.reduced[0].tower()->one())
    throw Error(ErrorCode::InvalidArgument, "expansion must be normalized so that c_0 = 1");
  std::vector<std::optional<RatVal>> v(L + 1);
  for (long l = 1; l <= L; ++l) {
    v[l] = x.coeff_valuation(l);
    r.profile.emplace_back(l, v[l]);
  }

  if (p == 2) {
    r.condition = "mu4";
    const RatVal t3 = Rat(n + 1);
    r.tail_bound = certify_tail(x, t3, false);
    for (long l = 3; l <= L; ++l) {
      if (!ge(v[l], t3)) {
        r.reason = "v(c_" + std::to_string(l) + ") < n + 1";
        return r;
      }
    }
    if (!eq(v[2], Rat(n))) {
      r.reason = "v(c_2) != n";
      return r;
    }
    auto i = find_i(x.reduced[0].tower());
    if (!i) {
      r.reason = "no square root of -1 in the tower";
      return r;
    }
    // c_1^2 / c_2 = S_1^2 / S_2; sqrt(c_2) is adjoined symbolically.
    TowerElement q = x.reduced[1] * x.reduced[1] / x.reduced[2] - *i * Rat(ipow(2, n + 1));
    auto vq = q.valuation_or_inf();
    r.witnesses.emplace_back("v(c_1^2/c_2 - 2^(n+1) i)", vq);
    if (!ge(vq, Rat(n + 2))) {
      r.reason = "c_1^2/c_2 is not congruent to 2^(n+1) i mod 2^(n+2)";
      return r;
    }
    r.kind = VerdictKind::SplitsZ4;
    r.count = ipow(2, n - 2);
    r.conductor = 1;
    return r;
  }

  const RatVal T = Rat(n) + Rat(1, p - 1);
  r.tail_bound = certify_tail(x, T, true);
  std::optional<RatVal> mn;
  for (long l = 1; l <= L; ++l)
    if (v[l] && (!mn || *v[l] < *mn)) mn = v[l];
  if (!mn) {
    r.reason = "all coefficients beyond c_0 vanish";
    return r;
  }

  auto largest_h = [&]() {
    long h = 0;
    for (long l = 1; l <= L; ++l)
      if (l != p && eq(v[l], T)) h = l;
    return h;
  };

  std::string reason_i;
  if (*mn < T) {
    reason_i = "minimum valuation below n + 1/(p-1)";
  } else if (*mn > T) {
    reason_i = "no coefficient of valuation n + 1/(p-1)";
  } else {
    for (long l = p; l <= L && reason_i.empty(); l += p)
      if (!gt(v[l], T)) reason_i = "minimum at index divisible by p";
  }
  if (reason_i.empty()) {
    r.kind = VerdictKind::SplitsArtinSchreier;
    r.condition = "(i)";
    r.count = ipow(p, n - 1);
    r.conductor = largest_h();
    return r;
  }

  std::string reason_ii;
  if (!gt(v[1], Rat(n))) {
    reason_ii = "v(c_1) <= n";
  } else if (!gt(v[p], Rat(n))) {
    reason_ii = "v(c_p) <= n";
  } else {
    std::optional<RatVal> mo;
    for (long l = 2; l <= L; ++l)
      if (l != p && v[l] && (!mo || *v[l] < *mo)) mo = v[l];
    if (!eq(mo, T)) reason_ii = "minimum over i != 1, p is not n + 1/(p-1)";
    for (long l = 2 * p; l <= L && reason_ii.empty(); l += p)
      if (!gt(v[l], T)) reason_ii = "v(c_i) <= n + 1/(p-1) for some i > p divisible by p";
    if (reason_ii.empty()) {
      // c_p - c_1^p / p^{(p-1)n+1} = e^p (S_p - S_1^p / p^{(p-1)n+1}).
      TowerElement diff = x.reduced[p] - x.reduced[1].pow(p) / Rat(ipow(p, (p - 1) * n + 1));
      std::optional<RatVal> vd;
      if (x.scale_zero) {
        vd = std::nullopt;
      } else if (auto w = diff.valuation_or_inf()) {
        vd = *w + Rat(p) * x.scale_valuation;
      }
      r.witnesses.emplace_back("v(c_p - c_1^p/p^((p-1)n+1))", vd);
      if (!gt(vd, T)) reason_ii = "v(c_p - c_1^p/p^((p-1)n+1)) <= n + 1/(p-1)";
    }
  }
  if (reason_ii.empty()) {
    r.kind = VerdictKind::SplitsArtinSchreier;
    r.condition = "(ii)";
    r.count = ipow(p, n - 1);
    r.conductor = largest_h();
    return r;
  }
  r.reason = "(i): " + reason_i + "; (ii): " + reason_ii;
  return r;
}

BinomialRoot binomial_root_series(const RatVal& v_b, long p, long n, long terms) {
  if (!is_prime(p) || n < 1) throw Error(ErrorCode::InvalidArgument, "need a prime p and n >= 1");
  BinomialRoot r;
  r.p = p;
  r.n = n;
  r.input_valuation = v_b;
  if (n == 1) {
    r.leading_valuation = v_b;
    r.tail_lower_bound = v_b;
    r.higher_terms_above = true;
    return r;
  }
  const long m = n - 1;
  const RatVal slope = v_b - Rat(m);
  if (slope <= Rat(1, p - 1)) throw Error(ErrorCode::ConvergenceViolated, "v(b) must exceed n - 1 + 1/(p-1)");
  r.leading_valuation = slope;
  const Rat x = Rat(1) / Rat(ipow(p, m));
  r.higher_terms_above = true;
  for (long k = 2; k <= terms; ++k) {
    RatVal vk = Rat(vp(binomial(x, static_cast<unsigned long>(k)), p)) + Rat(k) * v_b;
    r.term_valuations.push_back(vk);
    if (vk <= r.leading_valuation) r.higher_terms_above = false;
  }
  // v(C(1/p^m, k)) = -k m - v_p(k!) >= -k m - (k - 1)/(p - 1).
  long k = std::max(terms + 1, 2L);
  r.tail_lower_bound = Rat(k) * slope - frac(k - 1, p - 1);
  if (r.tail_lower_bound <= r.leading_valuation) r.higher_terms_above = false;
  return r;
}

}  // namespace psr

#include "padicsr/ramification.hpp"

#include <algorithm>

namespace psr {

void Filtration::validate() const {
  if (degree < 1) throw Error(ErrorCode::MalformedFiltration, "degree must be positive");
  Int prev_order = degree;
  for (std::size_t i = 0; i < jumps.size(); ++i) {
    const auto& j = jumps[i];
    if (j.at < 0) throw Error(ErrorCode::MalformedFiltration, "negative jump");
    if (i > 0 && j.at <= jumps[i - 1].at) throw Error(ErrorCode::MalformedFiltration, "jumps must strictly increase");
    if (j.order_after < 1 || j.order_after >= prev_order || prev_order % j.order_after != 0)
      throw Error(ErrorCode::MalformedFiltration, "group orders must strictly decrease through divisors");
    prev_order = j.order_after;
  }
  if (prev_order != 1) throw Error(ErrorCode::MalformedFiltration, "filtration must end in the trivial group");
}

Rat Filtration::conductor() const { return jumps.empty() ? Rat(0) : jumps.back().at; }

Int Filtration::order_at(const Rat& x) const {
  Int ord = degree;
  for (const auto& j : jumps) {
    if (x <= j.at) return ord;
    ord = j.order_after;
  }
  return ord;
}

Filtration Filtration::quotient_by_last() const {
  if (numbering != Numbering::Upper) throw Error(ErrorCode::MalformedFiltration, "quotients need upper numbering");
  if (jumps.empty()) return *this;
  Int h = jumps.size() >= 2 ? jumps[jumps.size() - 2].order_after : degree;
  Filtration q;
  q.numbering = Numbering::Upper;
  q.degree = degree / h;
  for (std::size_t i = 0; i + 1 < jumps.size(); ++i) q.jumps.push_back({jumps[i].at, jumps[i].order_after / h});
  return q;
}

bool Filtration::operator==(const Filtration& o) const {
  if (degree != o.degree || numbering != o.numbering || jumps.size() != o.jumps.size()) return false;
  for (std::size_t i = 0; i < jumps.size(); ++i)
    if (jumps[i].at != o.jumps[i].at || jumps[i].order_after != o.jumps[i].order_after) return false;
  return true;
}

namespace {

// Integral over [0, x] of (order/degree)^sign, piecewise constant.
Rat integrate(const Filtration& f, const Rat& x, bool inverse_index) {
  if (x <= 0) return x;
  Rat acc = 0, prev = 0;
  Int ord = f.degree;
  auto weight = [&](const Int& o) -> Rat { return inverse_index ? Rat(f.degree) / Rat(o) : Rat(o) / Rat(f.degree); };
  for (const auto& j : f.jumps) {
    if (x <= j.at) return acc + (x - prev) * weight(ord);
    acc += (j.at - prev) * weight(ord);
    prev = j.at;
    ord = j.order_after;
  }
  return acc + (x - prev) * weight(ord);
}

}  // namespace

Rat herbrand_phi(const Filtration& lower, const Rat& x) {
  if (lower.numbering != Numbering::Lower) throw Error(ErrorCode::MalformedFiltration, "phi needs a lower-numbered filtration");
  return integrate(lower, x, false);
}

Rat herbrand_psi(const Filtration& upper, const Rat& u) {
  if (upper.numbering != Numbering::Upper) throw Error(ErrorCode::MalformedFiltration, "psi needs an upper-numbered filtration");
  return integrate(upper, u, true);
}

Filtration herbrand_convert(const Filtration& f, Numbering target) {
  f.validate();
  if (f.numbering == target) return f;
  Filtration out;
  out.degree = f.degree;
  out.numbering = target;
  for (const auto& j : f.jumps) {
    Rat at = target == Numbering::Upper ? herbrand_phi(f, j.at) : herbrand_psi(f, j.at);
    out.jumps.push_back({at, j.order_after});
  }
  return out;
}

Filtration add_layer(const Filtration& upper, const Rat& u, long p) {
  if (upper.numbering != Numbering::Upper) throw Error(ErrorCode::MalformedFiltration, "add_layer needs upper numbering");
  if (u < 0) throw Error(ErrorCode::MalformedFiltration, "negative jump");
  std::vector<Rat> points;
  for (const auto& j : upper.jumps) points.push_back(j.at);
  points.push_back(u);
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  Filtration out;
  out.numbering = Numbering::Upper;
  out.degree = upper.degree * p;
  Int prev = out.degree;
  for (const auto& b : points) {
    // Order of the old group strictly above b.
    Int old_after = upper.degree;
    for (const auto& j : upper.jumps) {
      if (b < j.at) break;
      old_after = j.order_after;
    }
    Int now = old_after * (b < u ? Int(p) : Int(1));
    if (now != prev) {
      out.jumps.push_back({b, now});
      prev = now;
    }
  }
  out.validate();
  return out;
}

Filtration cyclotomic_filtration(long p, long n) {
  if (!is_prime(p) || n < 1) throw Error(ErrorCode::InvalidArgument, "need a prime p and n >= 1");
  Filtration f;
  f.numbering = Numbering::Upper;
  f.degree = ipow(p, static_cast<unsigned long>(n - 1)) * (p - 1);
  if (p != 2) f.jumps.push_back({0, ipow(p, static_cast<unsigned long>(n - 1))});
  for (long k = 1; k <= n - 1; ++k) f.jumps.push_back({k, ipow(p, static_cast<unsigned long>(n - 1 - k))});
  f.validate();
  return f;
}

Rat compositum_conductor(const std::vector<Rat>& hs) {
  if (hs.empty()) throw Error(ErrorCode::EmptyList, "no conductors to combine");
  for (const auto& h : hs)
    if (h < 0) throw Error(ErrorCode::InvalidArgument, "conductors are nonnegative");
  return *std::max_element(hs.begin(), hs.end());
}

Rat tame_top_conductor(const Rat& h_of_LK) { return h_of_LK; }

long artin_schreier_genus(long h, long p) {
  if (h < 1) throw Error(ErrorCode::InvalidArgument, "conductor must be positive");
  if (h % p == 0) throw Error(ErrorCode::ConductorDivisibleByP, "Artin-Schreier conductor divisible by p");
  return (h - 1) * (p - 1) / 2;
}

long artin_schreier_conductor(const std::vector<long>& degrees, long p) {
  if (degrees.empty()) throw Error(ErrorCode::EmptyList, "no monomial degrees");
  for (long d : degrees) {
    if (d < 1) throw Error(ErrorCode::InvalidArgument, "degrees are positive");
    if (d % p == 0) throw Error(ErrorCode::TermDegreeDivisibleByP, "degree " + std::to_string(d) + " is divisible by p");
  }
  return *std::max_element(degrees.begin(), degrees.end());
}

std::string conductor_kind_name(ConductorKind k) {
  switch (k) {
    case ConductorKind::Exact: return "exact";
    case ConductorKind::Bound: return "bound";
    case ConductorKind::Unknown: return "unknown";
  }
  return "";
}

ConductorValue combine_conductors(const std::vector<ConductorValue>& parts) {
  if (parts.empty()) throw Error(ErrorCode::EmptyList, "no conductors to combine");
  std::optional<Rat> exact_max, bound_max;
  bool max_bound_strict = true;
  for (const auto& c : parts) {
    if (c.kind == ConductorKind::Unknown) return ConductorValue::unknown();
    if (c.kind == ConductorKind::Exact) {
      if (!exact_max || c.value > *exact_max) exact_max = c.value;
    } else {
      if (!bound_max || c.value > *bound_max) {
        bound_max = c.value;
        max_bound_strict = c.strict;
      } else if (c.value == *bound_max) {
        max_bound_strict = max_bound_strict && c.strict;
      }
    }
  }
  if (!bound_max) return ConductorValue::exact(*exact_max);
  if (exact_max && *bound_max <= *exact_max) return ConductorValue::exact(*exact_max);
  return ConductorValue::bound(*bound_max, max_bound_strict);
}

KummerLevel cyclotomic_level(long p, long c) {
  KummerLevel l;
  l.p = p;
  l.e = Rat(cyclotomic_ramification(p, c));
  l.cyclotomic = c;
  if (c >= 1) {
    l.upper = cyclotomic_filtration(p, c);
  } else {
    l.upper.degree = 1;
  }
  return l;
}

Radicand Radicand::rational(const Rat& q) {
  Radicand r;
  r.kind = Kind::Rational;
  r.value = q;
  return r;
}

Radicand Radicand::with_valuation(const RatVal& v) {
  Radicand r;
  r.kind = Kind::Valuation;
  r.valuation = v;
  return r;
}

Radicand Radicand::opaque() { return Radicand{}; }

namespace {

ConductorValue level_conductor(const KummerLevel& l) {
  return l.filtration_is_bound ? ConductorValue::bound(l.upper.conductor()) : ConductorValue::exact(l.upper.conductor());
}

Rat phi_of_level(const KummerLevel& l, const Rat& b) {
  return herbrand_phi(herbrand_convert(l.upper, Numbering::Lower), b);
}

long exponent_of(long m, long p) {
  long k = 0;
  while (m % p == 0) {
    m /= p;
    ++k;
  }
  if (m != 1) throw Error(ErrorCode::InvalidArgument, "Kummer degree must be a power of p");
  return k;
}

}  // namespace

KummerConductor kummer_step_conductor(const KummerLevel& level, const Radicand& u_in, long m) {
  const long p = level.p;
  const long k = exponent_of(m, p);
  if (k < 1) throw Error(ErrorCode::InvalidArgument, "Kummer degree must be at least p");
  if (k > level.cyclotomic) throw Error(ErrorCode::InvalidArgument, "the level must contain the m-th roots of unity");
  Radicand u = u_in;
  if (u.kind == Radicand::Kind::Rational) {
    if (u.value == 0) throw Error(ErrorCode::RadicandZero, "radicand is zero");
    u.valuation = Rat(vp(u.value, p));
  }
  KummerConductor out;
  const ConductorValue base = level_conductor(level);

  // Radicand of valuation prime to p in F: every layer has break p e/(p-1).
  if (u.kind != Radicand::Kind::Opaque) {
    Rat vF = u.valuation * level.e;
    vF.canonicalize();
    if (vF.get_den() == 1 && vF.get_num() % p != 0) {
      KummerLevel cur = level;
      for (long i = 1; i <= k; ++i) {
        Rat b = Rat(p) * cur.e / Rat(p - 1);
        if (i == 1) out.relative = ConductorValue::exact(b);
        Rat up = phi_of_level(cur, b);
        cur.upper = add_layer(cur.upper, up, p);
        cur.e *= p;
      }
      if (k > 1) out.relative = ConductorValue::unknown();
      out.over_base = level.filtration_is_bound ? ConductorValue::bound(cur.upper.conductor()) : ConductorValue::exact(cur.upper.conductor());
      out.extended = cur;
      out.rule = "valuation prime to p: break p*e/(p-1) in each layer";
      return out;
    }
  }

  if (u.kind == Radicand::Kind::Rational && p != 2) {
    long w = vp(u.value, p);
    if (w % m != 0) {
      out.relative = ConductorValue::unknown();
      out.over_base = ConductorValue::unknown();
      out.rule = "rational radicand with valuation not divisible by m is not modeled";
      return out;
    }
    Rat unit = u.value / rpow(Rat(p), w);
    Rat u1 = rpow(unit, p - 1);
    if (u1 == 1) {
      out.relative = ConductorValue::exact(0);
      out.over_base = base;
      out.extended = level;
      out.rule = "radicand is a root of unity times a p^k-th power";
      return out;
    }
    // u^{p-1} = w^{p^J} with v(w - 1) = 1, J = v(u^{p-1} - 1) - 1.
    const long J = vp(u1 - 1, p) - 1;
    if (k <= J) {
      out.relative = ConductorValue::exact(0);
      out.over_base = base;
      out.extended = level;
      out.rule = "radicand is a p^k-th power in Q_p";
      return out;
    }
    const long kp = k - J;
    // F(u^{1/m}) = F * K_{k'}(w^{1/p^{k'}}); layers over K_{k'} assumed ramified.
    KummerLevel cur = cyclotomic_level(p, kp);
    const Rat c = Rat(cyclotomic_ramification(p, kp));
    bool exact = true;
    for (long i = 1; i <= kp; ++i) {
      Rat b = Rat(p) * cur.e / Rat(p - 1) - c;
      Rat cc = c;
      cc.canonicalize();
      if (cc.get_num() % p == 0) exact = false;
      Rat up = phi_of_level(cur, b);
      cur.upper = add_layer(cur.upper, up, p);
      cur.e *= p;
    }
    ConductorValue piece = exact ? ConductorValue::exact(cur.upper.conductor()) : ConductorValue::bound(cur.upper.conductor());
    out.relative = (k == 1 && level.cyclotomic == 1 && exact) ? ConductorValue::exact(Rat(p) * level.e / Rat(p - 1) - c) : ConductorValue::unknown();
    out.over_base = combine_conductors({base, piece});
    out.rule = "unit radicand: p^" + std::to_string(J) + "-th power extracted, " + std::to_string(kp) + " ramified layer(s) of unit depth " + c.get_str();
    return out;
  }

  if (k == 1) {
    Rat b = Rat(p) * level.e / Rat(p - 1);
    out.relative = ConductorValue::bound(b);
    Rat up = phi_of_level(level, b);
    out.over_base = combine_conductors({base, ConductorValue::bound(up)});
    KummerLevel cur = level;
    cur.upper = add_layer(cur.upper, up, p);
    cur.e *= p;
    cur.filtration_is_bound = true;
    out.extended = cur;
    out.rule = "generic degree-p bound: break <= p*e/(p-1)";
    return out;
  }
  out.relative = ConductorValue::unknown();
  out.over_base = ConductorValue::unknown();
  out.rule = "no rule for this radicand and degree";
  return out;
}

std::string step_kind_name(StepKind k) {
  switch (k) {
    case StepKind::Cyclotomic: return "Cyclotomic";
    case StepKind::KummerRadical: return "KummerRadical";
    case StepKind::Tame: return "Tame";
  }
  return "";
}

}  // namespace psr

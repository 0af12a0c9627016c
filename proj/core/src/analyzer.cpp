#include "padicsr/analyzer.hpp"

#include <algorithm>

namespace psr {

namespace {

Rat inv_pm1(long p) { return Rat(1, p - 1); }

Rat ab_ratio(const CoverSpec& s) { return Rat(s.a) / Rat(s.a + s.b); }

// Radius valuation of the new tail disk: (2n - s + 1/(p-1)) / 2.
RatVal new_tail_radius(const CoverSpec& s) { return (Rat(2 * s.n - s.s) + inv_pm1(s.p)) / 2; }

// p = 2 centers d_j = a/(a+b) + sqrt(2^{n-j} b i)/(a+b)^2, 0 <= j < count.
// With b = 2^{n-s} b', the radicand is 2^N b' i, N = 2n - s - j. For even N
// the root 2^{N/2} eta, eta^2 = b' i, is exact. For odd N the element
// 2^{(N-1)/2} (1+i) rho with rho in {1, i}, rho^2 = b' mod 4, lies within
// valuation N/2 + 1 of a root, inside every disk the analysis uses.
struct TwoAdicCenters {
  TowerPtr tower;
  Int b_odd;
  std::vector<long> N;
  std::vector<TowerElement> t;  // d_j - a/(a+b)
  std::vector<TowerElement> d;
  std::vector<bool> exact;
};

TwoAdicCenters two_adic_centers(const CoverSpec& s, long count) {
  TwoAdicCenters c;
  c.b_odd = s.b;
  for (long k = 0; k < s.n - s.s; ++k) c.b_odd /= 2;
  bool need_eta = false;
  for (long j = 0; j < count; ++j) {
    c.N.push_back(2 * s.n - s.s - j);
    need_eta = need_eta || c.N.back() % 2 == 0;
  }
  TowerPtr t = Tower::adjoin(Tower::base(2), "i", 2, Tower::base(2)->rational(-1));
  if (need_eta) t = Tower::adjoin(t, "eta", 2, t->generator("i") * Rat(c.b_odd));
  c.tower = t;
  const TowerElement i = t->generator("i");
  Int bm4 = c.b_odd % 4;
  if (bm4 < 0) bm4 += 4;
  const TowerElement rho = bm4 == 1 ? t->one() : i;
  const Rat sq = Rat(s.a + s.b) * Rat(s.a + s.b);
  for (long j = 0; j < count; ++j) {
    const long N = c.N[j];
    TowerElement x = N % 2 == 0 ? t->generator("eta") * Rat(ipow(2, N / 2))
                                : (i + Rat(1)) * rho * Rat(ipow(2, (N - 1) / 2));
    c.t.push_back(x / sq);
    c.d.push_back(c.t.back() + ab_ratio(s));
    c.exact.push_back(N % 2 == 0);
  }
  return c;
}

// p = 3 radical with cube R = 3^{2k+1} C(b, 3); the tower also holds
// sqrt(-3) so that all three cube roots are available.
struct CubeRootCenter {
  TowerPtr tower;
  Rat R;
  std::vector<TowerElement> roots;  // r, zeta r, zeta^2 r
};

CubeRootCenter cube_root_center(const CoverSpec& s, long k) {
  CubeRootCenter c;
  c.R = Rat(ipow(3, 2 * k + 1)) * binomial(Rat(s.b), 3);
  TowerPtr t = Tower::adjoin(Tower::base(3), "s3", 2, Tower::base(3)->rational(-3));
  t = Tower::adjoin(t, "r", 3, t->rational(c.R));
  c.tower = t;
  const TowerElement r = t->generator("r");
  const TowerElement zeta = (t->generator("s3") - Rat(1)) / Rat(2);
  c.roots = {r, zeta * r, zeta * zeta * r};
  return c;
}

std::vector<TowerElement> candidate_centers(const CoverSpec& s) {
  const Rat d0 = ab_ratio(s);
  if (s.p == 2) {
    auto c = two_adic_centers(s, 1);
    return {c.d[0], Rat(2) * ab_ratio(s) - c.d[0]};  // both square roots
  }
  if (s.p == 3 && s.s == 1 && s.n > 1) {
    auto c = cube_root_center(s, s.n);
    std::vector<TowerElement> out;
    for (const auto& r : c.roots) out.push_back(r / Rat(s.a + s.b) + d0);
    return out;
  }
  return {Tower::base(s.p)->rational(d0)};
}

bool same_verdict(const ReductionVerdict& x, const ReductionVerdict& y) {
  return x.kind == y.kind && x.count == y.count && x.conductor == y.conductor && x.condition == y.condition && x.profile == y.profile;
}

Component make_component(std::string id, long inertia, ComponentKind kind, std::string center, std::optional<TowerElement> value,
                         RatVal radius) {
  Component c;
  c.id = std::move(id);
  c.inertia = inertia;
  c.kind = kind;
  c.center = std::move(center);
  c.center_value = std::move(value);
  c.radius_valuation = radius;
  return c;
}

void attach(DecoratedGraph& g, const std::string& parent, Component c) {
  const Component* pc = g.find(parent);
  RatVal eps = *c.radius_valuation - *pc->radius_valuation;
  std::string id = c.id;
  g.components.push_back(std::move(c));
  g.connect(parent, id, eps);
}

VerifiedFact fact(std::string statement, const RatVal& expected, const std::optional<RatVal>& actual) {
  VerifiedFact f;
  f.statement = std::move(statement);
  f.expected = format_rat(expected);
  f.actual = actual ? format_rat(*actual) : "inf";
  if (actual) {
    RatVal x = *actual, y = expected;
    x.canonicalize();
    y.canonicalize();
    f.holds = x == y;
  }
  return f;
}

VerifiedFact fact_bool(std::string statement, bool expected, bool actual) {
  return {std::move(statement), expected ? "true" : "false", actual ? "true" : "false", expected == actual};
}

}  // namespace

NewTailLocus new_tail_locus(const CoverSpec& s) {
  NewTailLocus l{candidate_centers(s).front(), new_tail_radius(s), ""};
  if (s.p == 2) l.description = "a/(a+b) + sqrt(2^n b i)/(a+b)^2";
  else if (s.p == 3 && s.s == 1 && s.n > 1) l.description = "a/(a+b) + cbrt(3^(2n+1) C(b,3))/(a+b)";
  else l.description = "a/(a+b)";
  return l;
}

std::vector<InseparableTail> inseparable_tails(const CoverSpec& s) {
  std::vector<InseparableTail> out;
  if (s.s == s.n) return out;
  const Rat q = inv_pm1(s.p);
  InseparableTail one;
  one.j = s.s;
  one.label = "1";
  one.center = Tower::base(s.p)->rational(1);
  one.radius_valuation = Rat(s.n - s.s) + q;
  one.contains_one = true;
  out.push_back(one);
  if (s.p == 3 && s.s > 1) {
    auto c = cube_root_center(s, s.n - s.s + 1);
    InseparableTail t;
    t.j = s.s - 1;
    t.label = "d'";
    t.center = c.roots[0] / Rat(s.a + s.b) + ab_ratio(s);
    // New tail of Y/Q_{s-1}: radius (2(n-s+1) - 1 + 1/2)/2.
    t.radius_valuation = Rat(s.n - s.s) + Rat(3, 4);
    out.push_back(t);
  }
  if (s.p == 2 && s.s > 1) {
    auto c = two_adic_centers(s, s.s);
    for (long j = 1; j < s.s; ++j) {
      InseparableTail t;
      t.j = j;
      t.label = "d_" + std::to_string(j);
      t.center = c.d[j];
      t.radius_valuation = (Rat(2 * s.n - s.s - j) + 1) / 2;
      out.push_back(t);
    }
  }
  return out;
}

CoverSpec quotient_spec(const CoverSpec& s, long j) {
  if (j < 0 || j >= s.s) throw Error(ErrorCode::InvalidArgument, "quotient Y/Q_j needs 0 <= j < s");
  return branch_signature(s.p, s.n - j, s.a, s.b);
}

DecoratedGraph build_stable_graph(const CoverSpec& s) {
  const long p = s.p, n = s.n, ss = s.s;
  const Rat q = inv_pm1(p);
  DecoratedGraph g;
  g.p = p;
  g.n = n;
  g.m_G = 1;
  g.cyclic = true;
  const NewTailLocus locus = new_tail_locus(s);
  const TowerPtr base = Tower::base(p);
  const Int full = ipow(p, n);
  if (!s.normalization.empty())
    g.notes.push_back("coordinates normalized by " + s.normalization.front() + "; branch point labels refer to the normalized model");

  Component x0 = make_component("X0", n, ComponentKind::Original, "0", base->rational(0), 0);
  x0.branch_points.push_back({"0", full});
  x0.branch_points.push_back({"inf", full});
  if (ss == n) x0.branch_points.push_back({"1", full});
  g.components.push_back(x0);

  auto augment = [&](const std::string& point, const Int& index, const std::string& at) {
    std::string id = point + "bar";
    g.augmented.push_back({id, point, index, at});
    g.connect(at, id);
  };
  augment("0", full, "X0");
  augment("inf", full, "X0");

  const std::string dlabel = "d";
  if (ss == n) {
    augment("1", full, "X0");
    std::string prev = "X0";
    for (long i = 1; i <= n; ++i) {
      auto c = make_component("X" + std::to_string(i), n - i, i == n ? ComponentKind::Tail : ComponentKind::Interior, dlabel, locus.d,
                              (Rat(i) + q) / 2);
      if (i == n) {
        c.tail_kind = TailKind::New;
        c.sigma = 2;
      }
      attach(g, prev, c);
      prev = c.id;
    }
  } else {
    std::string prev = "X0";
    for (long i = n - 1; i >= ss + 1; --i) {
      RatVal r = Rat(n - i) + q;
      if (r >= Rat(n - ss)) continue;
      auto c = make_component("X" + std::to_string(n - i), i, ComponentKind::Interior, dlabel, locus.d, r);
      attach(g, prev, c);
      prev = c.id;
    }
    attach(g, prev, make_component("Xstar", ss + 1, ComponentKind::Interior, dlabel, locus.d, Rat(n - ss)));

    auto dag = make_component("Xdagger", ss, ComponentKind::Tail, "1", base->rational(1), Rat(n - ss) + q);
    dag.tail_kind = TailKind::Primitive;
    dag.branch_points.push_back({"1", ipow(p, ss)});
    attach(g, "Xstar", dag);
    augment("1", ipow(p, ss), "Xdagger");

    prev = "Xstar";
    for (long i = ss; i >= 1; --i) {
      RatVal r = p == 2 ? RatVal(Rat(n) - frac(ss + i - 1, 2)) : (i == ss ? RatVal(Rat(n - ss) + q) : RatVal((Rat(2 * n - ss - i) + q) / 2));
      auto c = make_component("X" + std::to_string(n - i), i, ComponentKind::Interior, dlabel, locus.d, r);
      attach(g, prev, c);
      prev = c.id;
    }
    auto tail = make_component("X" + std::to_string(n), 0, ComponentKind::Tail, dlabel, locus.d, new_tail_radius(s));
    tail.tail_kind = TailKind::New;
    tail.sigma = 2;
    attach(g, prev, tail);

    for (const auto& t : inseparable_tails(s)) {
      if (t.contains_one) continue;
      std::string id = p == 3 ? "Xprime" : "W" + std::to_string(t.j);
      // p = 3: the disk of X_{n-s} is the last one containing d and d'.
      std::string at = p == 3 ? "X" + std::to_string(n - ss) : "X" + std::to_string(n - t.j - 1);
      auto c = make_component(id, t.j, ComponentKind::Tail, t.label, t.center, t.radius_valuation);
      c.tail_kind = TailKind::New;
      c.low_confidence = true;
      attach(g, at, c);
    }
    if (p == 2 || (p == 3 && ss > 1)) {
      g.low_confidence = true;
      g.notes.push_back("component tree beyond the certified tails follows the template for p > 3; lower confidence");
    }
  }

  decorate_sigma_eff(g);

  // Upstairs components.
  if (p > 2) {
    for (auto& c : g.components) {
      bool borders = false;
      for (const auto& e : g.edges) {
        if (e.source != c.id) continue;
        const Component* w = g.find(e.target);
        borders = borders || (w && w->inertia == c.inertia + 1);
      }
      Upstairs u;
      if (!borders) {
        u.count = ipow(p, n - c.inertia);
      } else {
        long h = (ss < n && c.inertia >= ss) ? 1 : 2;
        u.count = ipow(p, n - c.inertia - 1);
        u.conductor = h;
        u.genus = artin_schreier_genus(h, p);
      }
      c.upstairs = u;
    }
  } else {
    g.notes.push_back("p = 2: components above etale tails are mu_4-torsor reductions; upstairs genera are not recorded");
  }

  for (const auto& a : g.augmented) g.signatures.push_back({a.id, 0, 1, 0, true, {}});
  g.signatures.push_back({"X0", 0, 1, 0, false, std::vector<Rat>(static_cast<std::size_t>(n), Rat(1))});
  return g;
}

ReductionVerdict certify_tail(const CoverSpec& s) {
  const RatVal v_e = new_tail_radius(s);
  auto centers = candidate_centers(s);
  ReductionVerdict first;
  for (std::size_t k = 0; k < centers.size(); ++k) {
    ReductionVerdict v = classify_torsor_reduction(expand_disk(s, centers[k], v_e));
    if (k == 0) {
      first = v;
    } else if (!same_verdict(first, v)) {
      ReductionVerdict bad = first;
      bad.kind = VerdictKind::NotCertified;
      bad.reason = "verdict depends on the choice of root";
      return bad;
    }
  }
  if (centers.size() > 1) first.witnesses.emplace_back("root choices agreeing", Rat(static_cast<long>(centers.size())));
  return first;
}

FieldTower stab_field_tower(const CoverSpec& s) {
  const long p = s.p, n = s.n, ss = s.s;
  FieldTower t;
  t.p = p;
  t.n = n;
  t.source_ab = std::make_pair(s.a, s.b);
  t.moduli_field_note = "the field of moduli of f relative to K_0 is K_" + std::to_string(n);
  t.steps.push_back({StepKind::Cyclotomic, n, 1, std::nullopt, "K_" + std::to_string(n), Radicand::opaque(), std::nullopt, "cyclotomic"});
  const Rat ab = ab_ratio(s);
  auto kummer = [&](long level, long m, std::string label, Radicand r) {
    FieldStep st;
    st.kind = StepKind::KummerRadical;
    st.level = level;
    st.m = m;
    st.label = std::move(label);
    st.radicand = r;
    t.steps.push_back(st);
  };
  if (p == 2) {
    t.case_label = "(v)";
    auto asserted = [&](long m, std::string label) {
      if (m < 2) return;
      kummer(n, m, std::move(label), Radicand::opaque());
      t.steps.back().asserted_strict_bound = Rat(n);
      t.steps.back().rule = "cited: conductor of the Galois closure is less than n";
    };
    asserted(ipow(2, n - 1).get_si(), "d_0");
    asserted(ipow(2, ss - 1).get_si(), "d_0 - 1");
    for (long j = 1; j < ss; ++j) {
      asserted(ipow(2, n - j).get_si(), "d_" + std::to_string(j));
      asserted(ipow(2, ss - j).get_si(), "d_" + std::to_string(j) + " - 1");
    }
  } else if (ss == n) {
    t.case_label = "(i)";
  } else if (p > 3) {
    t.case_label = "(ii)";
    kummer(n, ipow(p, n - ss).get_si(), format_rat(ab), Radicand::rational(ab));
  } else if (ss == 1) {
    t.case_label = "(iii)";
    kummer(1, 3, "3^(2n+1) C(b,3)", Radicand::with_valuation(Rat(3 * n - 1)));
    if (n - 1 >= 1) kummer(n, ipow(3, n - 1).get_si(), format_rat(ab), Radicand::rational(ab));
  } else {
    t.case_label = "(iv)";
    kummer(1, 3, "3^(2(n-s+1)+1) C(b,3) (gives K_1(d'))", Radicand::with_valuation(Rat(3 * (n - ss) + 2)));
    const std::size_t dprime = t.steps.size() - 1;
    kummer(n, ipow(3, n - ss).get_si(), format_rat(ab), Radicand::rational(ab));
    kummer(1, 3, "d''' (cube root over K_1(d'))", Radicand::opaque());
    t.steps.back().over_step = dprime;
  }
  t.steps.push_back({StepKind::Tame, 0, 1, std::nullopt, "tame", Radicand::opaque(), std::nullopt, "tame top"});
  return t;
}

ConductorReport conductor_bound(const FieldTower& t, long n) {
  ConductorReport rep;
  std::vector<ConductorValue> parts;
  std::vector<std::optional<KummerLevel>> extended(t.steps.size());
  for (std::size_t k = 0; k < t.steps.size(); ++k) {
    const FieldStep& st = t.steps[k];
    switch (st.kind) {
      case StepKind::Cyclotomic: {
        Rat h = st.level >= 1 ? cyclotomic_filtration(t.p, st.level).conductor() : Rat(0);
        parts.push_back(ConductorValue::exact(h));
        rep.detail.push_back("K_" + std::to_string(st.level) + "/K_0: exact " + format_rat(h));
        break;
      }
      case StepKind::Tame:
        rep.detail.push_back("tame step: conductor unchanged");
        break;
      case StepKind::KummerRadical: {
        if (st.asserted_strict_bound) {
          parts.push_back(ConductorValue::bound(*st.asserted_strict_bound, true));
          rep.detail.push_back(st.label + ": asserted < " + format_rat(*st.asserted_strict_bound));
          break;
        }
        KummerLevel level;
        if (st.over_step) {
          if (!extended.at(*st.over_step)) throw Error(ErrorCode::InvalidArgument, "step refers to an earlier step with no field data");
          level = *extended[*st.over_step];
        } else {
          level = cyclotomic_level(t.p, st.level);
        }
        KummerConductor kc = kummer_step_conductor(level, st.radicand, st.m);
        extended[k] = kc.extended;
        parts.push_back(kc.over_base);
        rep.detail.push_back(st.label + " (degree " + std::to_string(st.m) + "): " + conductor_kind_name(kc.over_base.kind) + " " +
                             format_rat(kc.over_base.value) + "; " + kc.rule);
        break;
      }
    }
  }
  rep.conductor = parts.empty() ? ConductorValue::exact(0) : combine_conductors(parts);
  const auto& c = rep.conductor;
  rep.vanishes_at_n = c.kind != ConductorKind::Unknown && (c.value < n || (c.kind == ConductorKind::Bound && c.strict && c.value <= n));

  if (t.source_ab) {
    const CoverSpec s = branch_signature(t.p, t.n, t.source_ab->first, t.source_ab->second);
    const long p = s.p, ss = s.s;
    const Rat ab = ab_ratio(s);
    if (p > 3 && ss < s.n) rep.facts.push_back(fact("v(a/(a+b))", 0, Rat(vp(ab, p))));
    if (p == 3 && ss < s.n) {
      const NewTailLocus l = new_tail_locus(s);
      rep.facts.push_back(fact("v(d - 1)", Rat(s.n - ss), (l.d - Rat(1)).valuation_or_inf()));
      if (ss == 1) {
        auto c3 = cube_root_center(s, s.n);
        rep.facts.push_back(fact("v(3^(2n+1) C(b,3))", Rat(3 * s.n - 1), Rat(vp(c3.R, 3))));
      } else {
        auto c3 = cube_root_center(s, s.n - ss + 1);
        rep.facts.push_back(fact("v(3^(2(n-s+1)+1) C(b,3))", Rat(3 * (s.n - ss) + 2), Rat(vp(c3.R, 3))));
        rep.facts.push_back(fact("v(d' - d)", Rat(s.n - ss) + Rat(2, 3), (c3.roots[0] / Rat(s.a + s.b)).valuation_or_inf()));
      }
    }
    if (p == 2) {
      auto c2 = two_adic_centers(s, std::max(ss, 1L));
      for (long j = 0; j < static_cast<long>(c2.d.size()); ++j) {
        const std::string js = std::to_string(j);
        rep.facts.push_back(fact("v(d_" + js + " - 1)", Rat(s.n - ss), (c2.d[j] - Rat(1)).valuation_or_inf()));
        RatVal vt = Rat(s.n) - frac(ss + j, 2);
        auto vtj = c2.t[j].valuation_or_inf();
        rep.facts.push_back(fact("v(t_" + js + ")", vt, vtj));
        rep.facts.push_back(fact("v_3(t_" + js + ")", vt * 4, vtj ? std::optional<RatVal>(uniformizer_view(*vtj, 4)) : std::nullopt));
        // l(j): smallest l with d_j in K_l, from the square class of 2^N b' i.
        SquareClassReport sc = square_class_K2_K3(Rat(ipow(2, c2.N[j])) * Rat(c2.b_odd));
        long ell = sc.di_square_K2 ? 2 : (sc.di_square_K3 ? 3 : 0);
        rep.facts.push_back(fact("l(" + js + ")", Rat(c2.N[j] % 2 == 1 ? 2 : 3), Rat(ell)));
        rep.facts.push_back(fact_bool("d_" + js + " uses only K_2 generators", ell == 2, !c2.exact[j]));
        for (long k = j + 1; k < static_cast<long>(c2.d.size()); ++k)
          rep.facts.push_back(fact("v(d_" + js + " - d_" + std::to_string(k) + ")", Rat(s.n) - frac(ss + k, 2),
                                   (c2.d[j] - c2.d[k]).valuation_or_inf()));
      }
    }
    for (const auto& f : rep.facts)
      if (!f.holds)
        throw Error(ErrorCode::CertificationFailed, f.statement + " = " + f.actual + ", expected " + f.expected);
  }
  return rep;
}

bool StableModelReport::all_certified() const {
  if (!violations.empty() || vanishing_residual != 0 || !local_vanishing_ok || !telescoping_ok) return false;
  for (const auto& c : tail_certificates)
    if (!c.verdict.certified()) return false;
  return conductor.vanishes_at_n;
}

StableModelReport analyze(const CoverSpec& s) {
  StableModelReport r;
  r.spec = s;
  r.graph = build_stable_graph(s);
  r.violations = validate_structure(r.graph);
  for (auto& v : tail_invariant_checks(r.graph)) r.violations.push_back(v);
  r.vanishing_residual = check_vanishing_cycles(r.graph);
  r.local_vanishing_ok = true;
  for (const auto& [id, res] : check_local_vanishing(r.graph)) r.local_vanishing_ok = r.local_vanishing_ok && res == 0;
  try {
    effective_different_profile(r.graph);
    r.telescoping_ok = true;
  } catch (const Error&) {
    r.telescoping_ok = false;
  }
  r.tail_certificates.push_back({"X" + std::to_string(s.n), certify_tail(s)});
  for (const auto& c : r.graph.components) {
    if (c.kind != ComponentKind::Tail || c.etale() || c.tail_kind != TailKind::New) continue;
    r.tail_certificates.push_back({c.id, certify_tail(quotient_spec(s, c.inertia))});
  }
  r.tower = stab_field_tower(s);
  r.conductor = conductor_bound(r.tower, s.n);
  r.moduli_field_note = r.tower.moduli_field_note;
  return r;
}

std::vector<std::string> quotient_embedding(const DecoratedGraph& full, const DecoratedGraph& quotient, long j) {
  std::vector<std::string> bad;
  for (const auto& c : quotient.components) {
    bool found = false;
    for (const auto& f : full.components) {
      if (f.inertia != c.inertia + j || f.radius_valuation != c.radius_valuation) continue;
      if (c.center_value && f.center_value) {
        const auto& a = *c.center_value;
        const auto& b = *f.center_value;
        bool comparable = a.tower() == b.tower() || a.tower()->has_prefix(b.tower().get()) || b.tower()->has_prefix(a.tower().get()) ||
                          (a.as_rational() && b.as_rational());
        if (comparable) {
          std::optional<RatVal> v;
          if (a.as_rational() && b.as_rational()) {
            Rat diff = *a.as_rational() - *b.as_rational();
            if (diff != 0) v = Rat(vp(diff, full.p));
          } else {
            v = (a - b).valuation_or_inf();
          }
          if (v && c.radius_valuation && *v < *c.radius_valuation) continue;
        }
      }
      found = true;
      break;
    }
    if (!found) bad.push_back(c.id + " (inertia " + std::to_string(c.inertia) + ") has no counterpart");
  }
  return bad;
}

}  // namespace psr

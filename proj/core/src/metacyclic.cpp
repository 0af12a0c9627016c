#include "padicsr/metacyclic.hpp"

#include <numeric>

#include "padicsr/ramification.hpp"

namespace psr {

namespace {

long mod(long x, long m) {
  long r = x % m;
  return r < 0 ? r + m : r;
}

// An element of order m in (Z/p^n)^x, with m prime to p.
bool faithful(long p, long n, long m) {
  if (m < 1 || m % p == 0 || n < 1) return false;
  return (p - 1) % m == 0;
}

}  // namespace

SignatureSolution signature_solver(const MetacyclicSpec& spec) {
  if (!is_prime(spec.p) || spec.n < 1) throw Error(ErrorCode::InvalidArgument, "need a prime p and n >= 1");
  if (spec.m < 1) throw Error(ErrorCode::InvalidArgument, "m must be positive");
  if (!faithful(spec.p, spec.n, spec.m))
    throw Error(ErrorCode::NotFaithful, "Z/" + std::to_string(spec.m) + " does not act faithfully on Z/p^n");
  std::array<long, 3> r{};
  for (int i = 0; i < 3; ++i) r[i] = mod(spec.a[i], spec.m);
  if (r[0] == 0 && r[1] == 0 && r[2] == 0) throw Error(ErrorCode::InvalidArgument, "not all a_i may be 0 mod m");
  if (mod(r[0] + r[1] + r[2], spec.m) != 0) throw Error(ErrorCode::InvalidArgument, "a_1 + a_2 + a_3 must be 0 mod m");
  SignatureSolution s;
  for (int i = 0; i < 3; ++i) {
    auto& pt = s.points[i];
    if (r[i] == 0) {
      pt.wild = true;
      continue;
    }
    long g = std::gcd(spec.m, r[i]);
    long mi = spec.m / g;
    // h_i = a_i/g mod m_i; the only representative with 0 < h_i/m_i < 1.
    pt.m = mi;
    pt.h = mod(r[i] / g, mi);
    pt.sigma = frac(pt.h, pt.m);
    pt.sigma.canonicalize();
    s.sum += pt.sigma;
  }
  if (s.sum != 1)
    throw Error(ErrorCode::NoSolution, "sigma values sum to " + format_rat(s.sum) + "; the conjugate exponents solve instead");
  return s;
}

QuotientReport psolvable_quotient(long p, long n, long m_G) {
  if (!is_prime(p) || n < 1) throw Error(ErrorCode::InvalidArgument, "need a prime p and n >= 1");
  if (!faithful(p, n, m_G))
    throw Error(ErrorCode::NotFaithful, "m_G = " + std::to_string(m_G) + " admits no faithful action on Z/" + ipow(p, n).get_str());
  QuotientReport q;
  q.m_G = m_G;
  q.cyclic = m_G == 1;
  q.type = "Z/" + ipow(p, n).get_str() + (m_G == 1 ? "" : " x| Z/" + std::to_string(m_G));
  if (m_G == 1) q.note = "cyclic case, handled by the cyclic analyzer";
  else if (m_G == p - 1) q.note = "full normalizer action";
  return q;
}

ModuliNote moduli_and_tails_note(const MetacyclicSpec& spec) {
  ModuliNote r;
  if (spec.m == 1) {
    r.delegated_to_cyclic = true;
    r.statements.push_back("m = 1: use the cyclic analyzer");
    return r;
  }
  psolvable_quotient(spec.p, spec.n, spec.m);
  r.moduli_field_in_Kn = true;
  r.all_tails_primitive = true;
  r.tame_over_Kn = true;
  r.conductor = tame_top_conductor(cyclotomic_filtration(spec.p, spec.n).conductor());
  r.vanishes_at_n = r.conductor < spec.n;
  r.statements = {
      "field of moduli relative to K_0 is contained in K_" + std::to_string(spec.n),
      "stable reduction has no inseparable and no new tails",
      "stable model is defined over a tame extension of K_" + std::to_string(spec.n),
      "conductor of K^stab/K_0 is " + format_rat(r.conductor) + " < n",
  };
  return r;
}

DecoratedGraph metacyclic_graph_template(const MetacyclicSpec& spec, const SignatureSolution& sol) {
  DecoratedGraph g;
  g.p = spec.p;
  g.n = spec.n;
  g.m_G = spec.m;
  g.cyclic = false;
  Component x0;
  x0.id = "X0";
  x0.inertia = spec.n;
  x0.kind = ComponentKind::Original;
  g.components.push_back(x0);
  const char* names[3] = {"x1", "x2", "x3"};
  for (int i = 0; i < 3; ++i) {
    const auto& pt = sol.points[i];
    if (pt.wild) {
      g.find("X0")->branch_points.push_back({names[i], ipow(spec.p, spec.n)});
      std::string id = std::string(names[i]) + "bar";
      g.augmented.push_back({id, names[i], ipow(spec.p, spec.n), "X0"});
      g.connect("X0", id);
      g.signatures.push_back({id, 0, 1, 0, true, {}});
      continue;
    }
    Component t;
    t.id = std::string("T") + names[i];
    t.inertia = 0;
    t.kind = ComponentKind::Tail;
    t.tail_kind = TailKind::Primitive;
    t.branch_points.push_back({names[i], pt.m});
    t.sigma = pt.sigma;
    g.components.push_back(t);
    g.connect("X0", t.id);
    g.signatures.push_back({t.id, pt.h, pt.m, pt.sigma, false, {}});
  }
  decorate_sigma_eff(g);
  return g;
}

}  // namespace psr

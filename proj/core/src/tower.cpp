#include "padicsr/tower.hpp"

#include <algorithm>
#include <cstdlib>
#include <sstream>

#include "padicsr/config.hpp"

namespace psr {

namespace {

long env_long(const char* name, long fallback) {
  const char* s = std::getenv(name);
  if (!s || !*s) return fallback;
  char* end = nullptr;
  long v = std::strtol(s, &end, 10);
  if (*end != '\0' || v < 0) throw Error(ErrorCode::InvalidArgument, std::string(name) + " must be a nonnegative integer");
  return v;
}

bool order_is_m(const RatVal& v, const Int& e_bound, long m) {
  Rat q = v * Rat(e_bound) / Rat(m);
  q.canonicalize();
  return q.get_den() == m;
}

std::vector<long> prime_divisors(long m) {
  std::vector<long> out;
  for (long d = 2; d * d <= m; ++d) {
    if (m % d == 0) {
      out.push_back(d);
      while (m % d == 0) m /= d;
    }
  }
  if (m > 1) out.push_back(m);
  return out;
}

}  // namespace

const Config& default_config() {
  static const Config cfg = [] {
    Config c;
    c.truncation = env_long("PADIC_SR_TRUNCATION", 0);
    c.hensel_depth = env_long("PADIC_SR_HENSEL_DEPTH", 0);
    return c;
  }();
  return cfg;
}

// ---------------------------------------------------------------- Tower

TowerPtr Tower::base(long p) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  return TowerPtr(new Tower(p));
}

// Structural: towers built separately from the same radicals are the same field.
bool Tower::has_prefix(const Tower* other) const {
  for (const Tower* t = this; t; t = t->parent_.get())
    if (t == other) return true;
  if (other->p_ != p_ || other->steps_.size() > steps_.size()) return false;
  for (std::size_t i = 0; i < other->steps_.size(); ++i) {
    const auto& x = steps_[i];
    const auto& y = other->steps_[i];
    if (x.name != y.name || x.exponent != y.exponent || x.radicand != y.radicand) return false;
  }
  return true;
}

std::optional<std::size_t> Tower::find_step(const std::string& name) const {
  for (std::size_t i = 0; i < steps_.size(); ++i)
    if (steps_[i].name == name) return i;
  return std::nullopt;
}

TowerElement Tower::zero() const { return TowerElement(shared_from_this(), std::vector<Rat>(degree())); }

TowerElement Tower::one() const { return rational(1); }

TowerElement Tower::rational(const Rat& q) const {
  std::vector<Rat> c(degree());
  c[0] = q;
  return TowerElement(shared_from_this(), std::move(c));
}

TowerElement Tower::generator(std::size_t level) const {
  if (level == 0 || level > steps_.size()) throw Error(ErrorCode::InvalidArgument, "no such tower level");
  std::vector<Rat> c(degree());
  c[degrees_[level - 1]] = 1;
  return TowerElement(shared_from_this(), std::move(c));
}

TowerElement Tower::generator(const std::string& name) const {
  auto idx = find_step(name);
  if (!idx) throw Error(ErrorCode::InvalidArgument, "no generator named '" + name + "'");
  return generator(*idx + 1);
}

std::vector<Rat> Tower::mul(std::size_t level, const Rat* a, const Rat* b) const {
  if (level == 0) return {a[0] * b[0]};
  const std::size_t sub = degrees_[level - 1];
  const long m = steps_[level - 1].exponent;
  const auto& r = steps_[level - 1].radicand;
  auto nonzero = [sub](const Rat* x) {
    for (std::size_t i = 0; i < sub; ++i)
      if (x[i] != 0) return true;
    return false;
  };
  std::vector<std::vector<Rat>> c(2 * m - 1, std::vector<Rat>(sub));
  for (long i = 0; i < m; ++i) {
    const Rat* ai = a + i * sub;
    if (!nonzero(ai)) continue;
    for (long j = 0; j < m; ++j) {
      const Rat* bj = b + j * sub;
      if (!nonzero(bj)) continue;
      auto prod = mul(level - 1, ai, bj);
      for (std::size_t k = 0; k < sub; ++k) c[i + j][k] += prod[k];
    }
  }
  for (long t = 2 * m - 2; t >= m; --t) {
    if (!nonzero(c[t].data())) continue;
    auto prod = mul(level - 1, c[t].data(), r.data());
    for (std::size_t k = 0; k < sub; ++k) c[t - m][k] += prod[k];
  }
  std::vector<Rat> out;
  out.reserve(sub * m);
  for (long t = 0; t < m; ++t) out.insert(out.end(), c[t].begin(), c[t].end());
  return out;
}

TowerPtr Tower::adjoin(const TowerPtr& lower, std::string name, long m, const TowerElement& radicand_in) {
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "exponent must be at least 2");
  if (name.empty() || lower->find_step(name)) throw Error(ErrorCode::InvalidArgument, "generator name '" + name + "' is empty or taken");
  TowerElement u = radicand_in.lift(lower);
  if (u.is_zero()) throw Error(ErrorCode::ZeroRadicand, "radicand of '" + name + "' is zero");

  const long p = lower->prime();
  const RatVal v = u.valuation();
  const Int& e = lower->ram_bound_;
  std::optional<StepCertificate> cert;
  Int new_e;

  if (order_is_m(v, e, m)) {
    cert = StepCertificate{CertificateKind::Eisenstein, 0, "v(r) = " + format_rat(v)};
    new_e = e * m;
  }

  if (!cert) {
    // Shifted Newton polygon: (x + t)^m - u with v(t) = v(u)/m.
    const RatVal q = v / Rat(m);
    std::vector<TowerElement> bases{lower->one()};
    for (std::size_t k = 1; k <= lower->levels(); ++k) {
      auto g = lower->generator(k);
      bases.push_back(g);
      bases.push_back(g + Rat(1));
      bases.push_back(Rat(1) - g);
    }
    for (const auto& beta : bases) {
      if (cert) break;
      Rat k = q - beta.valuation();
      k.canonicalize();
      if (k.get_den() != 1) continue;
      long kk = k.get_num().get_si();
      for (int sign : {1, -1}) {
        TowerElement t = beta * (Rat(sign) * rpow(Rat(p), kk));
        TowerElement g0 = t.pow(m) - u;
        if (g0.is_zero()) throw Error(ErrorCode::IrreducibilityUnverified, "radicand of '" + name + "' is an m-th power");
        RatVal v0 = g0.valuation();
        if (!order_is_m(v0, e, m)) continue;
        bool single = true;
        RatVal vt = t.valuation();
        for (long j = 1; j < m && single; ++j) {
          Rat c = binomial(Rat(m), static_cast<unsigned long>(j));
          RatVal vj = Rat(vp(c, p)) + Rat(m - j) * vt;
          if (vj < v0 * (Rat(1) - frac(j, m))) single = false;
        }
        if (!single) continue;
        std::ostringstream os;
        os << "shift t = " << t.to_string() << ", v(t^m - r) = " << format_rat(v0);
        cert = StepCertificate{CertificateKind::ShiftedEisenstein, 0, os.str()};
        new_e = e * m;
        break;
      }
    }
  }

  if (!cert && v == 0 && lower->levels() == 0) {
    Rat r = *u.as_rational();
    const long depth = default_config().hensel_depth;
    for (long l : prime_divisors(m))
      if (is_mth_power(r, l, p, depth))
        throw Error(ErrorCode::IrreducibilityUnverified, "radicand of '" + name + "' is a " + std::to_string(l) + "-th power in Q_" + std::to_string(p));
    if (m % 4 == 0 && is_mth_power(-r / Rat(4), 4, p, depth))
      throw Error(ErrorCode::IrreducibilityUnverified, "radicand of '" + name + "' lies in -4 Q_p^4");
    Int mult = ipow(p, static_cast<unsigned long>(vp(Int(m), p)));
    if (p == 2 && m == 2) {
      Int nd = r.get_num() * r.get_den();
      Int md = nd % 4;
      if (md < 0) md += 4;
      if (md == 1) mult = 1;
    }
    cert = StepCertificate{CertificateKind::UnitNonPower, 0, "unit radicand, Hensel test negative for every prime divisor of m"};
    new_e = e * mult;
  }

  if (!cert)
    throw Error(ErrorCode::IrreducibilityUnverified, "no local irreducibility certificate for '" + name + "' (v(r) = " + format_rat(v) + ")");

  auto* t = new Tower(p);
  t->steps_ = lower->steps_;
  t->degrees_ = lower->degrees_;
  t->steps_.push_back(RadicalStep{std::move(name), m, u.coords(), *cert});
  t->degrees_.push_back(lower->degree() * static_cast<std::size_t>(m));
  t->ram_bound_ = new_e;
  t->parent_ = lower;
  return TowerPtr(t);
}

// --------------------------------------------------------- TowerElement

TowerElement::TowerElement(TowerPtr tower, std::vector<Rat> coords) : tower_(std::move(tower)), coords_(std::move(coords)) {
  if (coords_.size() != tower_->degree()) throw Error(ErrorCode::InvalidArgument, "coordinate count does not match tower degree");
  for (auto& q : coords_) q.canonicalize();
}

bool TowerElement::is_zero() const {
  return std::all_of(coords_.begin(), coords_.end(), [](const Rat& q) { return q == 0; });
}

std::optional<Rat> TowerElement::as_rational() const {
  for (std::size_t i = 1; i < coords_.size(); ++i)
    if (coords_[i] != 0) return std::nullopt;
  return coords_[0];
}

TowerElement TowerElement::lift(const TowerPtr& upper) const {
  if (upper.get() == tower_.get()) return *this;
  if (!upper->has_prefix(tower_.get())) throw Error(ErrorCode::InvalidArgument, "element does not live in a prefix of the target tower");
  std::vector<Rat> c(upper->degree());
  std::copy(coords_.begin(), coords_.end(), c.begin());
  return TowerElement(upper, std::move(c));
}

void TowerElement::unify(TowerElement& a, TowerElement& b) {
  if (a.tower_.get() == b.tower_.get()) return;
  if (a.tower_->has_prefix(b.tower_.get())) {
    b = b.lift(a.tower_);
  } else if (b.tower_->has_prefix(a.tower_.get())) {
    a = a.lift(b.tower_);
  } else {
    throw Error(ErrorCode::InvalidArgument, "elements live in unrelated towers");
  }
}

TowerElement TowerElement::operator+(const TowerElement& o) const {
  TowerElement a = *this, b = o;
  unify(a, b);
  for (std::size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] += b.coords_[i];
  return a;
}

TowerElement TowerElement::operator-(const TowerElement& o) const {
  TowerElement a = *this, b = o;
  unify(a, b);
  for (std::size_t i = 0; i < a.coords_.size(); ++i) a.coords_[i] -= b.coords_[i];
  return a;
}

TowerElement TowerElement::operator*(const TowerElement& o) const {
  TowerElement a = *this, b = o;
  unify(a, b);
  const auto& t = *a.tower_;
  return TowerElement(a.tower_, t.mul(t.levels(), a.coords_.data(), b.coords_.data()));
}

TowerElement TowerElement::operator/(const TowerElement& o) const { return *this * o.inverse(); }

TowerElement TowerElement::operator-() const {
  TowerElement a = *this;
  for (auto& c : a.coords_) c = -c;
  return a;
}

TowerElement TowerElement::operator+(const Rat& q) const {
  TowerElement a = *this;
  a.coords_[0] += q;
  return a;
}

TowerElement TowerElement::operator-(const Rat& q) const { return *this + Rat(-q); }

TowerElement TowerElement::operator*(const Rat& q) const {
  TowerElement a = *this;
  for (auto& c : a.coords_) c *= q;
  return a;
}

TowerElement TowerElement::operator/(const Rat& q) const {
  if (q == 0) throw Error(ErrorCode::ZeroElement, "division by zero");
  return *this * (Rat(1) / q);
}

bool TowerElement::operator==(const TowerElement& o) const {
  TowerElement a = *this, b = o;
  unify(a, b);
  return a.coords_ == b.coords_;
}

TowerElement operator+(const Rat& q, const TowerElement& x) { return x + q; }
TowerElement operator-(const Rat& q, const TowerElement& x) { return (-x) + q; }
TowerElement operator*(const Rat& q, const TowerElement& x) { return x * q; }

std::vector<std::vector<Rat>> TowerElement::mult_matrix() const {
  const std::size_t d = coords_.size();
  const auto& t = *tower_;
  std::vector<std::vector<Rat>> m(d, std::vector<Rat>(d));
  std::vector<Rat> basis(d);
  for (std::size_t j = 0; j < d; ++j) {
    std::fill(basis.begin(), basis.end(), Rat(0));
    basis[j] = 1;
    auto col = t.mul(t.levels(), coords_.data(), basis.data());
    for (std::size_t i = 0; i < d; ++i) m[i][j] = col[i];
  }
  return m;
}

Rat determinant(std::vector<std::vector<Rat>> m) {
  const std::size_t n = m.size();
  Rat det = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(m[piv], m[c]);
      det = -det;
    }
    det *= m[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      if (m[r][c] == 0) continue;
      Rat f = m[r][c] / m[c][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
    }
  }
  return det;
}

TowerElement TowerElement::inverse() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "inverse of zero");
  if (auto q = as_rational()) return tower_->rational(Rat(1) / *q);
  auto m = mult_matrix();
  const std::size_t n = m.size();
  std::vector<Rat> rhs(n);
  rhs[0] = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && m[piv][c] == 0) ++piv;
    if (piv == n) throw Error(ErrorCode::ZeroElement, "singular multiplication matrix");
    std::swap(m[piv], m[c]);
    std::swap(rhs[piv], rhs[c]);
    Rat inv = Rat(1) / m[c][c];
    for (std::size_t k = c; k < n; ++k) m[c][k] *= inv;
    rhs[c] *= inv;
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || m[r][c] == 0) continue;
      Rat f = m[r][c];
      for (std::size_t k = c; k < n; ++k) m[r][k] -= f * m[c][k];
      rhs[r] -= f * rhs[c];
    }
  }
  return TowerElement(tower_, std::move(rhs));
}

TowerElement TowerElement::pow(long e) const {
  if (e < 0) return inverse().pow(-e);
  TowerElement r = tower_->one(), b = *this;
  while (e) {
    if (e & 1) r = r * b;
    b = b * b;
    e >>= 1;
  }
  return r;
}

Rat TowerElement::norm() const {
  if (auto q = as_rational()) return rpow(*q, static_cast<long>(coords_.size()));
  return determinant(mult_matrix());
}

RatVal TowerElement::valuation() const {
  if (is_zero()) throw Error(ErrorCode::ZeroElement, "valuation of zero is +infinity");
  if (auto q = as_rational()) return Rat(vp(*q, prime()));
  Rat v(vp(norm(), prime()), static_cast<long>(coords_.size()));
  v.canonicalize();
  return v;
}

std::optional<RatVal> TowerElement::valuation_or_inf() const {
  if (is_zero()) return std::nullopt;
  return valuation();
}

std::string TowerElement::to_string() const {
  const auto& steps = tower_->steps();
  std::ostringstream os;
  bool first = true;
  for (std::size_t idx = 0; idx < coords_.size(); ++idx) {
    if (coords_[idx] == 0) continue;
    std::string mono;
    std::size_t rest = idx;
    for (std::size_t lvl = steps.size(); lvl >= 1; --lvl) {
      std::size_t sub = tower_->degree_at(lvl - 1);
      std::size_t ex = rest / sub;
      rest %= sub;
      if (ex == 0) continue;
      std::string g = steps[lvl - 1].name + (ex > 1 ? "^" + std::to_string(ex) : "");
      mono = mono.empty() ? g : g + "*" + mono;
    }
    if (!first) os << " + ";
    first = false;
    if (mono.empty()) {
      os << coords_[idx].get_str();
    } else if (coords_[idx] == 1) {
      os << mono;
    } else {
      os << "(" << coords_[idx].get_str() << ")*" << mono;
    }
  }
  if (first) os << "0";
  return os.str();
}

// ------------------------------------------------------ power residues

bool is_mth_power(const Rat& u, long m, long p, long hensel_depth) {
  if (u == 0) throw Error(ErrorCode::ZeroElement, "is_mth_power of zero");
  if (m < 2) throw Error(ErrorCode::InvalidArgument, "m must be at least 2");
  long k = vp(u, p);
  if (k % m != 0) return false;
  Rat w = u / rpow(Rat(p), k);
  long vm = vp(Int(m), p);
  long K = p == 2 ? 2 * vm + 3 : 2 * vm + 1;
  K = std::max(K, hensel_depth);
  Int mod = ipow(p, static_cast<unsigned long>(K));
  Int den_inv;
  Int den = w.get_den();
  mpz_invert(den_inv.get_mpz_t(), den.get_mpz_t(), mod.get_mpz_t());
  Int target = (Int(w.get_num()) * den_inv) % mod;
  if (target < 0) target += mod;
  Int e = m, r;
  for (Int x = 1; x < mod; ++x) {
    if (x % p == 0) continue;
    mpz_powm(r.get_mpz_t(), x.get_mpz_t(), e.get_mpz_t(), mod.get_mpz_t());
    if (r == target) return true;
  }
  return false;
}

namespace {

// Rational q is a square in K_0 = Frac W(k), k algebraically closed of
// characteristic 2: even valuation and odd part congruent to 1 mod 4.
bool square_in_K0(const Rat& q) {
  long v = vp(q, 2);
  if (v % 2 != 0) return false;
  Rat u = q / rpow(Rat(2), v);
  Int nd = Int(u.get_num()) * Int(u.get_den());
  Int r = nd % 4;
  if (r < 0) r += 4;
  return r == 1;
}

bool square_in_K2(const Rat& q) { return square_in_K0(q) || square_in_K0(-q); }

// q * i^k with q rational; K_2 = K_0(i), and 2i = (1 + i)^2.
bool square_in_K2_times_i(const Rat& q) { return square_in_K2(q / 2); }

}  // namespace

SquareClassReport square_class_K2_K3(const Rat& d, long p, bool use_minus_i) {
  if (p != 2) throw Error(ErrorCode::WrongPrime, "square classes over K_2, K_3 need p = 2");
  if (d == 0) throw Error(ErrorCode::ZeroElement, "d must be nonzero");
  // d * (-i) = (-d) * i.
  const Rat di_coeff = use_minus_i ? Rat(-d) : d;
  SquareClassReport r{};
  r.di_square_K2 = square_in_K2_times_i(di_coeff);
  // K_3 = K_2(sqrt i): y in K_2 is a square in K_3 iff y or y*i is one in K_2.
  // (d i) * i = -d.
  r.di_square_K3 = r.di_square_K2 || square_in_K2(-di_coeff);
  r.d_square_K2 = square_in_K2(d);
  r.d_square_K3 = r.d_square_K2 || square_in_K2_times_i(d);
  return r;
}

}  // namespace psr

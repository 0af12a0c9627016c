#pragma once

// Independent reference computations used by the unit and acceptance tests.
// Nothing here calls into the library's own algorithms.

#include <gmpxx.h>

#include <map>
#include <vector>

namespace oracle {

using Q = mpq_class;
using Z = mpz_class;

inline long vp(Z x, long p) {
  if (x == 0) return 1L << 30;
  long k = 0;
  if (x < 0) x = -x;
  while (x % p == 0) {
    x /= p;
    ++k;
  }
  return k;
}

inline long vp(const Q& q, long p) { return vp(Z(q.get_num()), p) - vp(Z(q.get_den()), p); }

inline Q canon(Q q) {
  q.canonicalize();
  return q;
}

// Determinant by fraction-field Gaussian elimination.
inline Q det(std::vector<std::vector<Q>> a) {
  const std::size_t n = a.size();
  Q d = 1;
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t piv = c;
    while (piv < n && a[piv][c] == 0) ++piv;
    if (piv == n) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      d = -d;
    }
    d *= a[c][c];
    for (std::size_t r = c + 1; r < n; ++r) {
      Q f = a[r][c] / a[c][c];
      for (std::size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  return d;
}

// Sylvester resultant of f and g, coefficients low degree first.
inline Q resultant(const std::vector<Q>& f, const std::vector<Q>& g) {
  const std::size_t m = f.size() - 1, n = g.size() - 1, N = m + n;
  std::vector<std::vector<Q>> s(N, std::vector<Q>(N));
  for (std::size_t r = 0; r < n; ++r)
    for (std::size_t k = 0; k <= m; ++k) s[r][r + k] = f[m - k];
  for (std::size_t r = 0; r < m; ++r)
    for (std::size_t k = 0; k <= n; ++k) s[n + r][r + k] = g[n - k];
  return det(s);
}

inline Q binom(long n, long k) {
  if (k < 0 || k > n) return 0;
  Z r;
  mpz_bin_uiui(r.get_mpz_t(), n, k);
  return Q(r);
}

// Coefficients of (x + y t)^k as a polynomial in t.
inline std::vector<Q> linear_power(const Q& x, const Q& y, long k) {
  std::vector<Q> out(k + 1);
  for (long i = 0; i <= k; ++i) {
    Q xp = 1, yp = 1;
    for (long j = 0; j < k - i; ++j) xp *= x;
    for (long j = 0; j < i; ++j) yp *= y;
    out[i] = binom(k, i) * xp * yp;
  }
  return out;
}

inline std::vector<Q> poly_mul(const std::vector<Q>& a, const std::vector<Q>& b) {
  std::vector<Q> out(a.size() + b.size() - 1);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

// Lower ramification filtration of Q_p(zeta_{p^n})/Q_p by brute force:
// i(sigma_k) = e * v(zeta^{k-1} - 1), and v(1 - zeta_{p^r}) = 1/phi(p^r).
// Returns |G_i| for i = 0, 1, ..., until the group is trivial.
inline std::vector<Z> cyclotomic_lower_orders(long p, long n) {
  Z pn = 1;
  for (long i = 0; i < n; ++i) pn *= p;
  const Z e = pn / p * (p - 1);
  std::map<long, Z> count_by_i;  // i(sigma) -> number of sigma
  long max_i = 0;
  for (Z k = 2; k <= pn; ++k) {
    if (k % p == 0) continue;
    Z j = k - 1;
    if (j % pn == 0) continue;  // identity
    long t = vp(j, p);
    Z order = pn;
    for (long s = 0; s < t; ++s) order /= p;
    Q v = Q(1) / Q(order / p * (p - 1));  // v(zeta_order - 1)
    Q iq = v * Q(e);
    iq.canonicalize();
    long i = iq.get_num().get_si();
    count_by_i[i] += 1;
    max_i = std::max(max_i, i);
  }
  // G_x = {sigma : i(sigma) >= x + 1}
  std::vector<Z> out;
  for (long x = 0; x <= max_i; ++x) {
    Z c = 1;
    for (const auto& [i, k] : count_by_i)
      if (i >= x + 1) c += k;
    out.push_back(c);
  }
  out.push_back(1);
  return out;
}

// phi(x) = integral_0^x dt / (G_0 : G_t) for integer-indexed lower orders,
// by exact midpoint quadrature on a grid of step 1/steps.
inline Q phi_quadrature(const std::vector<Z>& lower_orders, const Z& degree, const Q& x, long steps = 64) {
  Q acc = 0;
  const Q h(1, steps);
  for (Q t = 0; t < x; t += h) {
    Q mid = t + h / 2;
    Q w = (mid - x > 0) ? x - t : h;
    // G_mid = G_{ceil(mid)} for mid > 0.
    Z c = mid.get_num() / mid.get_den() + (mid.get_num() % mid.get_den() != 0 ? 1 : 0);
    long ci = c.get_si();
    Z ord = ci < static_cast<long>(lower_orders.size()) ? lower_orders[ci] : Z(1);
    acc += w * Q(ord) / Q(degree);
  }
  return canon(acc);
}

}  // namespace oracle

#include "padicsr/cover.hpp"

#include <algorithm>

namespace psr {

namespace {

long capped_vp(const Int& x, long p, long n) {
  if (x == 0) return n;
  return std::min(vp(x, p), n);
}

}  // namespace

CoverSpec branch_signature(long p, long n, const Int& a, const Int& b) {
  if (!is_prime(p)) throw Error(ErrorCode::InvalidArgument, "p = " + std::to_string(p) + " is not prime");
  if (n < 1) throw Error(ErrorCode::InvalidArgument, "n must be at least 1");
  CoverSpec s;
  s.p = p;
  s.n = n;
  s.a_input = a;
  s.b_input = b;
  s.v_a = capped_vp(a, p, n);
  s.v_b = capped_vp(b, p, n);
  s.v_ab = capped_vp(a + b, p, n);
  const int prime_to_p = (s.v_a == 0) + (s.v_b == 0) + (s.v_ab == 0);
  if (prime_to_p < 2)
    throw Error(ErrorCode::Disconnected, "fewer than two of a, b, a+b are prime to p");
  s.indices = {ipow(p, n - s.v_a), ipow(p, n - s.v_b), ipow(p, n - s.v_ab)};
  for (const auto& idx : s.indices)
    if (idx == 1) throw Error(ErrorCode::NotThreePoint, "a ramification index equals 1, so the cover has fewer than three branch points");
  if (p == 2 && n < 2) throw Error(ErrorCode::NotThreePoint, "there are no three-point Z/2-covers");

  Int na = a, nb = b;
  if (s.v_a > 0) {
    // x -> 1 - x swaps the roles of 0 and 1.
    std::swap(na, nb);
    s.normalization.push_back("x -> 1 - x");
  } else if (s.v_ab > 0) {
    // x -> x/(x - 1) swaps 1 and infinity: (a, b) -> (a, -(a + b)).
    nb = -(na + nb);
    s.normalization.push_back("x -> x/(x - 1)");
  }
  s.a = na;
  s.b = nb;
  s.s = n - capped_vp(nb, p, n);
  return s;
}

}  // namespace psr

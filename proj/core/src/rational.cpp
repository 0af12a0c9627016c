#include "padicsr/rational.hpp"

#include <cstdlib>

namespace psr {

std::string_view error_code_name(ErrorCode code) {
  switch (code) {
    case ErrorCode::InvalidArgument: return "InvalidArgument";
    case ErrorCode::IrreducibilityUnverified: return "IrreducibilityUnverified";
    case ErrorCode::ZeroRadicand: return "ZeroRadicand";
    case ErrorCode::ZeroElement: return "ZeroElement";
    case ErrorCode::WrongPrime: return "WrongPrime";
    case ErrorCode::CenterOnBranchLocus: return "CenterOnBranchLocus";
    case ErrorCode::PrecisionExhausted: return "PrecisionExhausted";
    case ErrorCode::ConvergenceViolated: return "ConvergenceViolated";
    case ErrorCode::MalformedFiltration: return "MalformedFiltration";
    case ErrorCode::EmptyList: return "EmptyList";
    case ErrorCode::ConductorDivisibleByP: return "ConductorDivisibleByP";
    case ErrorCode::TermDegreeDivisibleByP: return "TermDegreeDivisibleByP";
    case ErrorCode::RadicandZero: return "RadicandZero";
    case ErrorCode::SearchInconclusive: return "SearchInconclusive";
    case ErrorCode::MissingSigma: return "MissingSigma";
    case ErrorCode::MissingSigmaEff: return "MissingSigmaEff";
    case ErrorCode::EdgeNotOutward: return "EdgeNotOutward";
    case ErrorCode::NegativeDifferent: return "NegativeDifferent";
    case ErrorCode::Disconnected: return "Disconnected";
    case ErrorCode::NotThreePoint: return "NotThreePoint";
    case ErrorCode::UnsupportedCase: return "UnsupportedCase";
    case ErrorCode::CertificationFailed: return "CertificationFailed";
    case ErrorCode::NoSolution: return "NoSolution";
    case ErrorCode::NotFaithful: return "NotFaithful";
  }
  return "Unknown";
}

bool is_prime(long p) {
  if (p < 2) return false;
  for (long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

long vp(const Int& x, long p) {
  if (x == 0) throw Error(ErrorCode::ZeroElement, "v_p(0) is infinite");
  mpz_class q = x, pp = p;
  return static_cast<long>(mpz_remove(q.get_mpz_t(), q.get_mpz_t(), pp.get_mpz_t()));
}

long vp(const Rat& x, long p) {
  if (x == 0) throw Error(ErrorCode::ZeroElement, "v_p(0) is infinite");
  return vp(Int(x.get_num()), p) - vp(Int(x.get_den()), p);
}

Int ipow(long base, unsigned long e) {
  Int r;
  Int b = base;
  mpz_pow_ui(r.get_mpz_t(), b.get_mpz_t(), e);
  return r;
}

Rat rpow(const Rat& x, long e) {
  if (e < 0) {
    if (x == 0) throw Error(ErrorCode::ZeroElement, "negative power of zero");
    return rpow(Rat(1) / x, -e);
  }
  Rat r = 1, b = x;
  auto k = static_cast<unsigned long>(e);
  while (k) {
    if (k & 1) r *= b;
    b *= b;
    k >>= 1;
  }
  return r;
}

Rat binomial(const Rat& x, unsigned long k) {
  Rat r = 1;
  for (unsigned long j = 0; j < k; ++j) {
    r *= (x - Rat(static_cast<long>(j)));
    r /= Rat(static_cast<long>(j + 1));
  }
  return r;
}

std::string format_rat(const Rat& q) {
  Rat c = q;
  c.canonicalize();
  return c.get_num().get_str() + "/" + c.get_den().get_str();
}

Rat parse_rat(std::string_view s) {
  std::string t(s);
  auto slash = t.find('/');
  try {
    if (slash == std::string::npos) {
      Rat r(Int(t, 10));
      return r;
    }
    Int num(t.substr(0, slash), 10);
    Int den(t.substr(slash + 1), 10);
    if (den == 0) throw Error(ErrorCode::InvalidArgument, "zero denominator in '" + t + "'");
    Rat r(num, den);
    r.canonicalize();
    return r;
  } catch (const std::invalid_argument&) {
    throw Error(ErrorCode::InvalidArgument, "not a rational: '" + t + "'");
  }
}

Int cyclotomic_ramification(long p, long level) {
  if (level <= 0) return 1;
  if (p == 2) return ipow(2, static_cast<unsigned long>(level - 1));
  return ipow(p, static_cast<unsigned long>(level - 1)) * (p - 1);
}

}  // namespace psr

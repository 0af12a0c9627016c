#pragma once

#include <gmpxx.h>

#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace psr {

using Int = mpz_class;
using Rat = mpq_class;

// A p-adic valuation normalized so that v(p) = 1.
using RatVal = mpq_class;

enum class ErrorCode {
  InvalidArgument,
  IrreducibilityUnverified,
  ZeroRadicand,
  ZeroElement,
  WrongPrime,
  CenterOnBranchLocus,
  PrecisionExhausted,
  ConvergenceViolated,
  MalformedFiltration,
  EmptyList,
  ConductorDivisibleByP,
  TermDegreeDivisibleByP,
  RadicandZero,
  SearchInconclusive,
  MissingSigma,
  MissingSigmaEff,
  EdgeNotOutward,
  NegativeDifferent,
  Disconnected,
  NotThreePoint,
  UnsupportedCase,
  CertificationFailed,
  NoSolution,
  NotFaithful,
};

std::string_view error_code_name(ErrorCode code);

class Error : public std::runtime_error {
 public:
  Error(ErrorCode code, const std::string& what)
      : std::runtime_error(std::string(error_code_name(code)) + ": " + what), code_(code) {}
  ErrorCode code() const noexcept { return code_; }

 private:
  ErrorCode code_;
};

bool is_prime(long p);

// v_p of a nonzero integer or rational.
long vp(const Int& x, long p);
long vp(const Rat& x, long p);

Int ipow(long base, unsigned long e);
// num/den in lowest terms; mpq_class(num, den) does not reduce.
inline Rat frac(const Int& num, const Int& den) {
  Rat q(num, den);
  q.canonicalize();
  return q;
}

Rat rpow(const Rat& x, long e);

// Falling-factorial binomial C(x, k) for rational x.
Rat binomial(const Rat& x, unsigned long k);

// Always "num/den", also when den is 1. parse_rat also takes a bare integer.
std::string format_rat(const Rat& q);
Rat parse_rat(std::string_view s);

// Valuation in the normalization where a uniformizer of a level with
// absolute ramification index e has valuation 1.
inline Rat uniformizer_view(const RatVal& v, const Int& e) { return v * Rat(e); }

// Absolute ramification index of Q_p(zeta_{p^level}).
Int cyclotomic_ramification(long p, long level);

}  // namespace psr

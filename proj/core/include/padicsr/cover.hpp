#pragma once

#include <array>
#include <string>
#include <vector>

#include "padicsr/rational.hpp"

namespace psr {

// y^{p^n} = c x^a (x - 1)^b, normalized so that 0 and infinity are totally
// ramified and p^s is the ramification index above 1.
struct CoverSpec {
  long p = 0;
  long n = 0;
  Int a_input, b_input;
  Int a, b;  // after normalization
  long v_a = 0, v_b = 0, v_ab = 0;  // of the input exponents, capped at n
  long s = 0;
  std::array<Int, 3> indices;  // above 0, 1, infinity, in input coordinates
  std::vector<std::string> normalization;  // Moebius moves applied, in order

  bool full_branch() const { return s == n; }
};

CoverSpec branch_signature(long p, long n, const Int& a, const Int& b);

}  // namespace psr

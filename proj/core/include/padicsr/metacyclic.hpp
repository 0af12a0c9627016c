#pragma once

#include <array>
#include <string>
#include <vector>

#include "padicsr/graph.hpp"
#include "padicsr/rational.hpp"

namespace psr {

// Z/p^n x| Z/m cover; the quotient Z/m-cover is
// z^m = (x - x_1)^{a_1} (x - x_2)^{a_2} (x - x_3)^{a_3}.
struct MetacyclicSpec {
  long p = 0;
  long n = 0;
  long m = 1;
  std::array<long, 3> a{0, 0, 0};
};

struct PointSignature {
  Int h = 0;
  Int m = 1;
  Rat sigma = 0;
  bool wild = false;
};

struct SignatureSolution {
  std::array<PointSignature, 3> points;
  Rat sum = 0;  // sum of sigma over primitive (tame) points
};

// Throws InvalidArgument for malformed exponents, NotFaithful when no
// faithful action of order m exists, NoSolution when the representatives
// with sigma in (0, 1) sum to 2 (the conjugate character then solves).
SignatureSolution signature_solver(const MetacyclicSpec& spec);

struct QuotientReport {
  std::string type;
  long m_G = 1;
  bool cyclic = true;
  bool faithful = true;
  std::string note;
};

QuotientReport psolvable_quotient(long p, long n, long m_G);

struct ModuliNote {
  bool delegated_to_cyclic = false;
  bool moduli_field_in_Kn = false;
  bool all_tails_primitive = false;
  bool tame_over_Kn = false;
  bool vanishes_at_n = false;
  Rat conductor = 0;
  std::vector<std::string> statements;
};

ModuliNote moduli_and_tails_note(const MetacyclicSpec& spec);

// Primitive tails carrying the tame branch points, wild points on X0.
DecoratedGraph metacyclic_graph_template(const MetacyclicSpec& spec, const SignatureSolution& sol);

}  // namespace psr

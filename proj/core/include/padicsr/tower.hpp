#pragma once

#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "padicsr/rational.hpp"

namespace psr {

class Tower;
class TowerElement;
using TowerPtr = std::shared_ptr<const Tower>;

enum class CertificateKind {
  Eisenstein,         // single Newton segment, slope of exact order m
  ShiftedEisenstein,  // same after x -> x + t
  UnitNonPower,       // unit radicand, not an l-th power for every l | m
};

struct StepCertificate {
  CertificateKind kind;
  Rat shift;  // only meaningful for ShiftedEisenstein (shift = c * p^k * g)
  std::string detail;
};

struct RadicalStep {
  std::string name;
  long exponent;
  std::vector<Rat> radicand;  // coordinates in the level below
  StepCertificate certificate;
};

// A chain of radical extensions Q = F_0 < F_1 < ... with F_k = F_{k-1}(x_k),
// x_k^{m_k} = r_k. Each step carries a certificate that x^m - r_k stays
// irreducible over the p-adic completion, so valuations extend uniquely.
class Tower : public std::enable_shared_from_this<Tower> {
 public:
  static TowerPtr base(long p);
  static TowerPtr adjoin(const TowerPtr& lower, std::string name, long m, const TowerElement& radicand);

  long prime() const { return p_; }
  std::size_t degree() const { return degrees_.back(); }
  std::size_t levels() const { return steps_.size(); }
  std::size_t degree_at(std::size_t level) const { return degrees_.at(level); }
  const std::vector<RadicalStep>& steps() const { return steps_; }
  const TowerPtr& parent() const { return parent_; }
  // A multiple of the absolute ramification index of the top field.
  const Int& ramification_bound() const { return ram_bound_; }

  bool has_prefix(const Tower* other) const;
  std::optional<std::size_t> find_step(const std::string& name) const;

  TowerElement zero() const;
  TowerElement one() const;
  TowerElement rational(const Rat& q) const;
  TowerElement generator(const std::string& name) const;
  TowerElement generator(std::size_t level) const;  // 1-based level

 private:
  explicit Tower(long p) : p_(p) {}

  long p_;
  std::vector<RadicalStep> steps_;
  std::vector<std::size_t> degrees_{1};
  Int ram_bound_ = 1;
  TowerPtr parent_;

  friend class TowerElement;
  std::vector<Rat> mul(std::size_t level, const Rat* a, const Rat* b) const;
};

class TowerElement {
 public:
  TowerElement(TowerPtr tower, std::vector<Rat> coords);

  const TowerPtr& tower() const { return tower_; }
  const std::vector<Rat>& coords() const { return coords_; }
  long prime() const { return tower_->prime(); }

  bool is_zero() const;
  std::optional<Rat> as_rational() const;

  // Embed into a tower that has this element's tower as a prefix.
  TowerElement lift(const TowerPtr& upper) const;

  TowerElement operator+(const TowerElement& o) const;
  TowerElement operator-(const TowerElement& o) const;
  TowerElement operator*(const TowerElement& o) const;
  TowerElement operator/(const TowerElement& o) const;
  TowerElement operator-() const;
  TowerElement operator+(const Rat& q) const;
  TowerElement operator-(const Rat& q) const;
  TowerElement operator*(const Rat& q) const;
  TowerElement operator/(const Rat& q) const;
  bool operator==(const TowerElement& o) const;

  TowerElement inverse() const;
  TowerElement pow(long e) const;

  // Absolute norm to Q, from the multiplication matrix.
  Rat norm() const;
  RatVal valuation() const;
  // nullopt encodes +infinity.
  std::optional<RatVal> valuation_or_inf() const;

  std::string to_string() const;

 private:
  std::vector<std::vector<Rat>> mult_matrix() const;
  static void unify(TowerElement& a, TowerElement& b);

  TowerPtr tower_;
  std::vector<Rat> coords_;
};

TowerElement operator+(const Rat& q, const TowerElement& x);
TowerElement operator-(const Rat& q, const TowerElement& x);
TowerElement operator*(const Rat& q, const TowerElement& x);

// True iff u is an m-th power in Q_p. Hensel modulus exponent is
// max(2 v_p(m) + 1, depth) for odd p and max(2 v_2(m) + 3, depth) for p = 2.
bool is_mth_power(const Rat& u, long m, long p, long hensel_depth = 0);

struct SquareClassReport {
  bool di_square_K2;
  bool di_square_K3;
  bool d_square_K2;
  bool d_square_K3;
};

// Square classes over K_l = K_0(zeta_{2^l}), K_0 with algebraically closed
// residue field. The choice of i (i or -i) does not change the answer.
SquareClassReport square_class_K2_K3(const Rat& d, long p = 2, bool use_minus_i = false);

Rat determinant(std::vector<std::vector<Rat>> m);

}  // namespace psr

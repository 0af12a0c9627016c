#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "padicsr/rational.hpp"
#include "padicsr/tower.hpp"

namespace psr {

enum class ComponentKind { Original, Interior, Tail };
enum class TailKind { None, Primitive, New };

std::string component_kind_name(ComponentKind k);
std::string tail_kind_name(TailKind k);

struct BranchPoint {
  std::string point;  // "0", "1", "inf" or a free label
  Int index;          // ramification index of f above it
};

// Components of Ybar above one component of Xbar.
struct Upstairs {
  Int count = 1;
  long genus = 0;
  long conductor = 0;  // Artin-Schreier conductor, 0 when purely radicial
};

struct Component {
  std::string id;
  long inertia = 0;  // p^inertia-component
  long genus = 0;
  ComponentKind kind = ComponentKind::Interior;
  TailKind tail_kind = TailKind::None;
  std::string center;  // display label of the disk center
  std::optional<TowerElement> center_value;
  std::optional<RatVal> radius_valuation;
  std::vector<BranchPoint> branch_points;  // every branch point specializing here
  std::optional<Rat> sigma;  // sigma_b for tails
  std::optional<Upstairs> upstairs;
  bool low_confidence = false;

  bool etale() const { return inertia == 0; }
};

// A vertex of G' \ G: a branch point whose index is divisible by p.
struct AugmentedVertex {
  std::string id;
  std::string point;
  Int index;
  std::string attached_to;
};

struct GraphEdge {
  std::string source, target;
  std::optional<RatVal> epaisseur;
  std::optional<Rat> sigma_eff;
};

struct Signature {
  std::string node;
  Int h = 0;
  Int m = 1;
  Rat sigma = 0;
  bool logarithmic = false;
  std::vector<Rat> differents;  // per p-power level, where known
};

struct DecoratedGraph {
  long p = 0;
  long n = 0;
  long m_G = 1;
  bool cyclic = true;  // enables the adjacent-inertia and three-neighbor rules
  std::vector<Component> components;
  std::vector<AugmentedVertex> augmented;
  std::vector<GraphEdge> edges;  // both orientations of every node are stored
  std::vector<Signature> signatures;
  bool low_confidence = false;
  std::vector<std::string> notes;

  const Component* find(const std::string& id) const;
  Component* find(const std::string& id);
  const AugmentedVertex* find_augmented(const std::string& id) const;
  const GraphEdge* find_edge(const std::string& s, const std::string& t) const;
  GraphEdge* find_edge(const std::string& s, const std::string& t);
  const Component* original() const;
  // Adds e and its reverse.
  void connect(const std::string& s, const std::string& t, std::optional<RatVal> epaisseur = std::nullopt);
};

struct Violation {
  std::string code;
  std::string where;
  std::string message;
};

std::vector<Violation> validate_structure(const DecoratedGraph& g);
std::vector<Violation> tail_invariant_checks(const DecoratedGraph& g);

// Parent map of the component tree rooted at the original component
// (augmented vertices included); empty when the graph is not a rooted tree.
std::map<std::string, std::string> parent_map(const DecoratedGraph& g);
bool precedes(const DecoratedGraph& g, const std::string& s, const std::string& t);

Rat check_vanishing_cycles(const DecoratedGraph& g);
// Vertices with positive inertia; residual = sum (sigma_eff - 1) - (2g - 2).
std::map<std::string, Rat> check_local_vanishing(const DecoratedGraph& g);
Rat sigma_eff_outward(const DecoratedGraph& g, const GraphEdge& e);
// Fills sigma_eff on every edge from tail invariants and wild branch points.
void decorate_sigma_eff(DecoratedGraph& g);
std::map<std::string, RatVal> effective_different_profile(const DecoratedGraph& g);
// Seed at the original component: (r - 1) + p/(p - 1).
RatVal original_effective_different(const DecoratedGraph& g);

std::string export_dot(const DecoratedGraph& g);

}  // namespace psr

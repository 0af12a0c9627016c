#include "padicsr/graph.hpp"

#include <algorithm>
#include <deque>
#include <set>
#include <sstream>

namespace psr {

std::string component_kind_name(ComponentKind k) {
  switch (k) {
    case ComponentKind::Original: return "original";
    case ComponentKind::Interior: return "interior";
    case ComponentKind::Tail: return "tail";
  }
  return "";
}

std::string tail_kind_name(TailKind k) {
  switch (k) {
    case TailKind::None: return "none";
    case TailKind::Primitive: return "primitive";
    case TailKind::New: return "new";
  }
  return "";
}

const Component* DecoratedGraph::find(const std::string& id) const {
  for (const auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

Component* DecoratedGraph::find(const std::string& id) {
  for (auto& c : components)
    if (c.id == id) return &c;
  return nullptr;
}

const AugmentedVertex* DecoratedGraph::find_augmented(const std::string& id) const {
  for (const auto& a : augmented)
    if (a.id == id) return &a;
  return nullptr;
}

const GraphEdge* DecoratedGraph::find_edge(const std::string& s, const std::string& t) const {
  for (const auto& e : edges)
    if (e.source == s && e.target == t) return &e;
  return nullptr;
}

GraphEdge* DecoratedGraph::find_edge(const std::string& s, const std::string& t) {
  for (auto& e : edges)
    if (e.source == s && e.target == t) return &e;
  return nullptr;
}

const Component* DecoratedGraph::original() const {
  for (const auto& c : components)
    if (c.kind == ComponentKind::Original) return &c;
  return nullptr;
}

void DecoratedGraph::connect(const std::string& s, const std::string& t, std::optional<RatVal> epaisseur) {
  edges.push_back({s, t, epaisseur, std::nullopt});
  edges.push_back({t, s, epaisseur, std::nullopt});
}

namespace {

std::map<std::string, std::vector<std::string>> adjacency(const DecoratedGraph& g, bool components_only) {
  std::map<std::string, std::vector<std::string>> adj;
  for (const auto& e : g.edges) {
    if (components_only && (!g.find(e.source) || !g.find(e.target))) continue;
    adj[e.source].push_back(e.target);
  }
  for (auto& [k, v] : adj) {
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
  }
  return adj;
}

long p_part(const Int& index, long p) { return index == 0 ? 0 : vp(index, p); }

void add(std::vector<Violation>& out, std::string code, std::string where, std::string msg) {
  out.push_back({std::move(code), std::move(where), std::move(msg)});
}

}  // namespace

std::map<std::string, std::string> parent_map(const DecoratedGraph& g) {
  std::map<std::string, std::string> parent;
  const Component* root = g.original();
  if (!root) return {};
  auto adj = adjacency(g, false);
  std::deque<std::string> q{root->id};
  parent[root->id] = "";
  while (!q.empty()) {
    std::string v = q.front();
    q.pop_front();
    for (const auto& w : adj[v]) {
      if (w == parent[v]) continue;
      if (parent.count(w)) return {};  // cycle
      parent[w] = v;
      q.push_back(w);
    }
  }
  return parent;
}

bool precedes(const DecoratedGraph& g, const std::string& s, const std::string& t) {
  auto parent = parent_map(g);
  if (!parent.count(t)) return false;
  for (std::string v = t; !v.empty(); v = parent[v])
    if (v == s) return true;
  return false;
}

std::vector<Violation> validate_structure(const DecoratedGraph& g) {
  std::vector<Violation> out;
  if (g.components.empty()) {
    add(out, "empty-graph", "", "the graph has no components");
    return out;
  }
  long originals = 0;
  for (const auto& c : g.components) originals += c.kind == ComponentKind::Original;
  if (originals != 1) {
    add(out, "original-count", "", "expected exactly one original component, found " + std::to_string(originals));
    return out;
  }

  std::set<std::string> ids;
  for (const auto& c : g.components)
    if (!ids.insert(c.id).second) add(out, "duplicate-id", c.id, "component id used twice");
  for (const auto& a : g.augmented)
    if (!ids.insert(a.id).second) add(out, "duplicate-id", a.id, "augmented vertex id used twice");

  for (const auto& e : g.edges) {
    const std::string where = e.source + "->" + e.target;
    if (!ids.count(e.source) || !ids.count(e.target)) {
      add(out, "dangling-edge", where, "edge endpoint does not exist");
      continue;
    }
    const GraphEdge* r = g.find_edge(e.target, e.source);
    if (!r) {
      add(out, "sigma-antisymmetry", where, "reverse edge missing");
    } else if (e.sigma_eff.has_value() != r->sigma_eff.has_value() || (e.sigma_eff && *e.sigma_eff != -*r->sigma_eff)) {
      add(out, "sigma-antisymmetry", where, "sigma_eff(e) != -sigma_eff(reverse e)");
    }
    bool aug = g.find_augmented(e.source) || g.find_augmented(e.target);
    if (aug && e.sigma_eff && *e.sigma_eff != 0)
      add(out, "augmented-sigma-nonzero", where, "edge to a wild branch point must have sigma_eff 0");
  }
  for (const auto& a : g.augmented) {
    const Component* c = g.find(a.attached_to);
    if (!c || !g.find_edge(a.attached_to, a.id)) {
      add(out, "branch-specialization", a.id, "augmented vertex is not attached to a component");
      continue;
    }
    if (p_part(a.index, g.p) != c->inertia)
      add(out, "branch-specialization", a.id,
          "branch point of index " + a.index.get_str() + " specializes to a p^" + std::to_string(c->inertia) + "-component");
  }
  for (const auto& c : g.components)
    for (const auto& b : c.branch_points)
      if (p_part(b.index, g.p) != c.inertia)
        add(out, "branch-specialization", c.id,
            "branch point " + b.point + " of index " + b.index.get_str() + " lies on a p^" + std::to_string(c.inertia) + "-component");

  // Tree check on components.
  auto adj = adjacency(g, true);
  std::size_t undirected = 0;
  for (const auto& [v, ws] : adj) undirected += ws.size();
  undirected /= 2;
  std::set<std::string> seen;
  std::deque<std::string> q{g.original()->id};
  seen.insert(g.original()->id);
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    for (const auto& w : adj[v])
      if (seen.insert(w).second) q.push_back(w);
  }
  if (seen.size() != g.components.size() || undirected + 1 != g.components.size()) {
    add(out, "not-a-tree", "", "components do not form a tree");
    return out;
  }
  auto parent = parent_map(g);

  for (const auto& c : g.components) {
    const auto& nb = adj[c.id];
    const std::size_t deg = nb.size();
    const bool is_tail = c.kind == ComponentKind::Tail;
    if (c.etale() && (!is_tail || deg != 1)) add(out, "etale-non-tail", c.id, "etale component is not a tail");
    if (is_tail && deg != 1) add(out, "tail-degree", c.id, "tail meets " + std::to_string(deg) + " components");
    if (!is_tail && c.kind != ComponentKind::Original && deg == 1)
      add(out, "tail-degree", c.id, "component meeting one other component is not marked as a tail");
    if (is_tail && c.tail_kind == TailKind::None && c.etale())
      add(out, "tail-degree", c.id, "etale tail must be new or primitive");
    if (is_tail && deg == 1) {
      const Component* w = g.find(nb.front());
      if (w && w->inertia <= c.inertia)
        add(out, "tail-neighbor-inertia", c.id, "a p^a-tail must meet a p^b-component with b > a");
    }
    const std::string& par = parent[c.id];
    if (!par.empty()) {
      const Component* pc = g.find(par);
      if (pc && c.inertia > pc->inertia)
        add(out, "non-monotonic", c.id, "inertia increases moving outward from " + par);
    }
    if (g.cyclic) {
      bool larger = false;
      for (const auto& w : nb) {
        const Component* wc = g.find(w);
        if (!wc) continue;
        if (wc->inertia >= c.inertia + 2)
          add(out, "inertia-jump>=2", c.id + "-" + w, "p^" + std::to_string(c.inertia) + "-component meets a p^" + std::to_string(wc->inertia) + "-component");
        larger = larger || wc->inertia > c.inertia;
      }
      if (c.branch_points.empty() && !larger && deg < 3)
        add(out, "three-neighbor", c.id, "component without branch points or larger neighbor meets fewer than three components");
    }
  }
  return out;
}

std::vector<Violation> tail_invariant_checks(const DecoratedGraph& g) {
  std::vector<Violation> out;
  const Rat floor_new = Rat(1) + Rat(1, g.m_G);
  for (const auto& c : g.components) {
    if (c.kind != ComponentKind::Tail) continue;
    if (!c.etale()) {
      if (!c.sigma) {
        add(out, "missing-sigma", c.id, "inseparable tail without sigma_b");
      } else if (Rat s = *c.sigma; s.canonicalize(), s.get_den() != 1) {
        add(out, "inseparable-sigma-nonintegral", c.id, "sigma_b = " + format_rat(*c.sigma) + " is not an integer");
      }
      if (g.m_G > 1) add(out, "psolvable-inseparable-tail", c.id, "m_G > 1 forbids inseparable tails");
      continue;
    }
    if (c.tail_kind == TailKind::New) {
      if (!c.sigma) {
        add(out, "missing-sigma", c.id, "new tail without sigma_b");
      } else if (*c.sigma < floor_new) {
        add(out, "new-tail-sigma-low", c.id, "sigma_b = " + format_rat(*c.sigma) + " < 1 + 1/m");
      }
      if (g.m_G > 1) add(out, "psolvable-new-tail", c.id, "m_G > 1 forbids new tails");
    } else if (c.tail_kind == TailKind::Primitive && !c.sigma) {
      add(out, "missing-sigma", c.id, "primitive tail without sigma_b");
    }
  }
  return out;
}

Rat check_vanishing_cycles(const DecoratedGraph& g) {
  Rat sum = 0;
  for (const auto& c : g.components) {
    if (c.kind != ComponentKind::Tail || !c.etale()) continue;
    if (!c.sigma) throw Error(ErrorCode::MissingSigma, "etale tail " + c.id + " has no sigma_b");
    if (c.tail_kind == TailKind::New) sum += *c.sigma - 1;
    else sum += *c.sigma;
  }
  return sum - 1;
}

std::map<std::string, Rat> check_local_vanishing(const DecoratedGraph& g) {
  std::map<std::string, Rat> res;
  for (const auto& c : g.components) {
    if (c.inertia < 1) continue;
    Rat sum = 0;
    for (const auto& e : g.edges) {
      if (e.source != c.id) continue;
      if (!e.sigma_eff) throw Error(ErrorCode::MissingSigmaEff, "edge " + e.source + "->" + e.target + " has no sigma_eff");
      sum += *e.sigma_eff - 1;
    }
    res[c.id] = sum - Rat(2 * c.genus - 2);
  }
  return res;
}

Rat sigma_eff_outward(const DecoratedGraph& g, const GraphEdge& e) {
  auto parent = parent_map(g);
  if (parent.empty() || !parent.count(e.target) || parent[e.target] != e.source)
    throw Error(ErrorCode::EdgeNotOutward, e.source + "->" + e.target + " does not point away from the original component");
  if (g.find_augmented(e.target)) return 0;
  Rat sigma = 1;
  for (const auto& c : g.components) {
    if (!precedes(g, e.target, c.id)) continue;
    if (c.kind == ComponentKind::Tail && c.etale()) {
      if (!c.sigma) throw Error(ErrorCode::MissingSigma, "etale tail " + c.id + " has no sigma_b");
      sigma += *c.sigma - 1;
    }
  }
  for (const auto& a : g.augmented)
    if (precedes(g, e.target, a.id)) sigma -= 1;
  return sigma;
}

void decorate_sigma_eff(DecoratedGraph& g) {
  auto parent = parent_map(g);
  if (parent.empty()) throw Error(ErrorCode::InvalidArgument, "graph is not a rooted tree");
  for (auto& e : g.edges) {
    if (parent.count(e.target) && parent[e.target] == e.source) {
      e.sigma_eff = sigma_eff_outward(g, e);
    }
  }
  for (auto& e : g.edges) {
    if (parent.count(e.source) && parent[e.source] == e.target) {
      const GraphEdge* r = g.find_edge(e.target, e.source);
      e.sigma_eff = -*r->sigma_eff;
    }
  }
  // Inseparable tails carry sigma_b = sigma_eff of their edge.
  for (auto& c : g.components) {
    if (c.kind != ComponentKind::Tail || c.etale()) continue;
    const GraphEdge* in = g.find_edge(parent[c.id], c.id);
    if (in && in->sigma_eff) c.sigma = *in->sigma_eff;
  }
}

RatVal original_effective_different(const DecoratedGraph& g) {
  const Component* o = g.original();
  if (!o) throw Error(ErrorCode::InvalidArgument, "no original component");
  return Rat(o->inertia - 1) + frac(g.p, g.p - 1);
}

std::map<std::string, RatVal> effective_different_profile(const DecoratedGraph& g) {
  auto parent = parent_map(g);
  if (parent.empty()) throw Error(ErrorCode::InvalidArgument, "graph is not a rooted tree");
  std::map<std::string, RatVal> delta;
  const Component* o = g.original();
  delta[o->id] = original_effective_different(g);
  std::deque<std::string> q{o->id};
  while (!q.empty()) {
    auto v = q.front();
    q.pop_front();
    for (const auto& e : g.edges) {
      if (e.source != v || !g.find(e.target) || parent[e.target] != v) continue;
      if (!e.sigma_eff || !e.epaisseur)
        throw Error(ErrorCode::MissingSigmaEff, "edge " + e.source + "->" + e.target + " lacks sigma_eff or epaisseur");
      RatVal d = delta[v] - *e.sigma_eff * *e.epaisseur;
      const Component* c = g.find(e.target);
      if (d < 0) throw Error(ErrorCode::NegativeDifferent, "effective different below 0 at " + c->id);
      if (c->etale() && d != 0)
        throw Error(ErrorCode::NegativeDifferent, "effective different at etale tail " + c->id + " is " + format_rat(d) + ", not 0");
      delta[c->id] = d;
      q.push_back(c->id);
    }
  }
  return delta;
}

namespace {

std::string dot_quote(const std::string& s) {
  std::string o = "\"";
  for (char ch : s) {
    if (ch == '"' || ch == '\\') o += '\\';
    o += ch;
  }
  return o + "\"";
}

}  // namespace

std::string export_dot(const DecoratedGraph& g) {
  std::ostringstream os;
  os << "graph stable_reduction {\n";
  os << "  label=" << dot_quote("p=" + std::to_string(g.p) + " n=" + std::to_string(g.n)) << ";\n";
  for (const auto& c : g.components) {
    std::string label = c.id + "\\ni=" + std::to_string(c.inertia);
    if (c.radius_valuation) label += "\\nr=" + format_rat(*c.radius_valuation);
    if (c.kind == ComponentKind::Tail) label += "\\n" + tail_kind_name(c.tail_kind) + " tail";
    os << "  " << dot_quote(c.id) << " [shape=box,label=\"";
    for (char ch : label) os << (ch == '"' ? '\'' : ch);
    os << "\"];\n";
  }
  for (const auto& a : g.augmented)
    os << "  " << dot_quote(a.id) << " [shape=circle,label=" << dot_quote(a.point + "bar") << "];\n";
  auto parent = parent_map(g);
  for (const auto& e : g.edges) {
    bool outward = parent.empty() ? e.source < e.target : (parent.count(e.target) && parent[e.target] == e.source);
    if (!outward) continue;
    std::string label;
    if (e.sigma_eff) label += "sigma_eff=" + format_rat(*e.sigma_eff);
    if (e.epaisseur) label += (label.empty() ? "" : ", ") + std::string("eps=") + format_rat(*e.epaisseur);
    os << "  " << dot_quote(e.source) << " -- " << dot_quote(e.target);
    if (!label.empty()) os << " [label=" << dot_quote(label) << "]";
    os << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace psr

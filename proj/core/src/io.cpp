#include "padicsr/io.hpp"

#include <json.hpp>

namespace psr {

using json = nlohmann::ordered_json;

namespace {

json rat(const Rat& q) { return format_rat(q); }

json opt_rat(const std::optional<Rat>& q) { return q ? rat(*q) : json(nullptr); }

Rat get_rat(const json& j) {
  if (j.is_string()) return parse_rat(j.get<std::string>());
  if (j.is_number_integer()) return Rat(j.get<long>());
  throw Error(ErrorCode::InvalidArgument, "expected a \"num/den\" string");
}

std::optional<Rat> get_opt_rat(const json& j, const char* key) {
  if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
  return get_rat(j.at(key));
}

Int get_int(const json& j) {
  if (j.is_number_integer()) return Int(j.get<long>());
  if (j.is_string()) return Int(j.get<std::string>());
  throw Error(ErrorCode::InvalidArgument, "expected an integer");
}

json parse(const std::string& doc) {
  try {
    return json::parse(doc);
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("malformed JSON: ") + e.what());
  }
}

template <class F>
auto guarded(F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const json::exception& e) {
    throw Error(ErrorCode::InvalidArgument, std::string("unexpected JSON shape: ") + e.what());
  }
}

json tower_json(const Tower& t) {
  json steps = json::array();
  for (const auto& s : t.steps()) {
    json coords = json::array();
    for (const auto& c : s.radicand) coords.push_back(rat(c));
    steps.push_back({{"name", s.name}, {"exponent", s.exponent}, {"radicand", coords}});
  }
  return {{"prime", t.prime()}, {"steps", steps}};
}

TowerPtr tower_of(const json& j) {
  TowerPtr t = Tower::base(j.at("prime").get<long>());
  for (const auto& s : j.at("steps")) {
    std::vector<Rat> coords;
    for (const auto& c : s.at("radicand")) coords.push_back(get_rat(c));
    if (coords.size() != t->degree()) throw Error(ErrorCode::InvalidArgument, "radicand has the wrong number of coordinates");
    t = Tower::adjoin(t, s.at("name").get<std::string>(), s.at("exponent").get<long>(), TowerElement(t, coords));
  }
  return t;
}

json element_json(const TowerElement& x) {
  json coords = json::array();
  for (const auto& c : x.coords()) coords.push_back(rat(c));
  return {{"tower", tower_json(*x.tower())}, {"coords", coords}, {"display", x.to_string()}};
}

TowerElement element_of(const json& j) {
  TowerPtr t = tower_of(j.at("tower"));
  std::vector<Rat> coords;
  for (const auto& c : j.at("coords")) coords.push_back(get_rat(c));
  if (coords.size() != t->degree()) throw Error(ErrorCode::InvalidArgument, "element has the wrong number of coordinates");
  return TowerElement(t, coords);
}

json spec_json(const CoverSpec& s) {
  return {{"p", s.p},
          {"n", s.n},
          {"a", s.a_input.get_str()},
          {"b", s.b_input.get_str()},
          {"normalized_a", s.a.get_str()},
          {"normalized_b", s.b.get_str()},
          {"v_a", s.v_a},
          {"v_b", s.v_b},
          {"v_a_plus_b", s.v_ab},
          {"s", s.s},
          {"indices", {s.indices[0].get_str(), s.indices[1].get_str(), s.indices[2].get_str()}},
          {"normalization", s.normalization}};
}

json verdict_json(const ReductionVerdict& v) {
  json j = {{"kind", verdict_kind_name(v.kind)}};
  if (v.certified()) {
    j["count"] = v.count.get_str();
    j[v.kind == VerdictKind::SplitsZ4 ? "first_upper_jump" : "conductor"] = v.conductor;
    j["condition"] = v.condition;
  } else {
    j["reason"] = v.reason;
  }
  json w = json::array();
  for (const auto& [name, val] : v.witnesses) w.push_back({name, val ? rat(*val) : json("inf")});
  j["witnesses"] = w;
  j["tail_bound"] = opt_rat(v.tail_bound);
  return j;
}

json profile_json(const ReductionVerdict& v) {
  json pr = json::array();
  for (const auto& [l, val] : v.profile) pr.push_back({l, val ? rat(*val) : json("inf")});
  return pr;
}

json conductor_value_json(const ConductorValue& c) {
  json j = {{"kind", conductor_kind_name(c.kind)}};
  if (c.kind != ConductorKind::Unknown) j["value"] = rat(c.value);
  if (c.kind == ConductorKind::Bound) j["strict"] = c.strict;
  return j;
}

ConductorKind conductor_kind_of(const std::string& s) {
  if (s == "exact") return ConductorKind::Exact;
  if (s == "bound") return ConductorKind::Bound;
  return ConductorKind::Unknown;
}

json graph_json(const DecoratedGraph& g) {
  json comps = json::array();
  for (const auto& c : g.components) {
    json bps = json::array();
    for (const auto& b : c.branch_points) bps.push_back({{"point", b.point}, {"index", b.index.get_str()}});
    json cj = {{"id", c.id},
               {"inertia", c.inertia},
               {"genus", c.genus},
               {"kind", component_kind_name(c.kind)},
               {"tail_kind", tail_kind_name(c.tail_kind)},
               {"etale", c.etale()},
               {"center", c.center},
               {"center_value", c.center_value ? element_json(*c.center_value) : json(nullptr)},
               {"radius_valuation", opt_rat(c.radius_valuation)},
               {"branch_points", bps},
               {"sigma", opt_rat(c.sigma)},
               {"low_confidence", c.low_confidence}};
    if (c.upstairs)
      cj["upstairs"] = {{"count", c.upstairs->count.get_str()}, {"genus", c.upstairs->genus}, {"conductor", c.upstairs->conductor}};
    else
      cj["upstairs"] = nullptr;
    comps.push_back(cj);
  }
  json aug = json::array();
  for (const auto& a : g.augmented)
    aug.push_back({{"id", a.id}, {"point", a.point}, {"index", a.index.get_str()}, {"attached_to", a.attached_to}});
  json edges = json::array();
  for (const auto& e : g.edges)
    edges.push_back({{"source", e.source}, {"target", e.target}, {"epaisseur", opt_rat(e.epaisseur)}, {"sigma_eff", opt_rat(e.sigma_eff)}});
  json sigs = json::array();
  for (const auto& s : g.signatures) {
    json d = json::array();
    for (const auto& x : s.differents) d.push_back(rat(x));
    sigs.push_back({{"node", s.node}, {"h", s.h.get_str()}, {"m", s.m.get_str()}, {"sigma", rat(s.sigma)}, {"logarithmic", s.logarithmic}, {"differents", d}});
  }
  return {{"prime", g.p},
          {"n", g.n},
          {"mG", g.m_G},
          {"cyclic", g.cyclic},
          {"low_confidence", g.low_confidence},
          {"components", comps},
          {"augmented", aug},
          {"edges", edges},
          {"signatures", sigs},
          {"notes", g.notes}};
}

ComponentKind component_kind_of(const std::string& s) {
  if (s == "original") return ComponentKind::Original;
  if (s == "tail") return ComponentKind::Tail;
  if (s == "interior") return ComponentKind::Interior;
  throw Error(ErrorCode::InvalidArgument, "unknown component kind '" + s + "'");
}

TailKind tail_kind_of(const std::string& s) {
  if (s == "primitive") return TailKind::Primitive;
  if (s == "new") return TailKind::New;
  if (s == "none") return TailKind::None;
  throw Error(ErrorCode::InvalidArgument, "unknown tail kind '" + s + "'");
}

DecoratedGraph graph_of(const json& j) {
  DecoratedGraph g;
  g.p = j.at("prime").get<long>();
  g.n = j.at("n").get<long>();
  g.m_G = j.value("mG", 1L);
  g.cyclic = j.value("cyclic", g.m_G == 1);
  g.low_confidence = j.value("low_confidence", false);
  for (const auto& cj : j.at("components")) {
    Component c;
    c.id = cj.at("id").get<std::string>();
    c.inertia = cj.at("inertia").get<long>();
    c.genus = cj.value("genus", 0L);
    c.kind = component_kind_of(cj.at("kind").get<std::string>());
    c.tail_kind = tail_kind_of(cj.value("tail_kind", std::string("none")));
    c.center = cj.value("center", std::string());
    if (cj.contains("center_value") && !cj.at("center_value").is_null()) c.center_value = element_of(cj.at("center_value"));
    c.radius_valuation = get_opt_rat(cj, "radius_valuation");
    if (cj.contains("branch_points"))
      for (const auto& b : cj.at("branch_points")) c.branch_points.push_back({b.at("point").get<std::string>(), get_int(b.at("index"))});
    c.sigma = get_opt_rat(cj, "sigma");
    c.low_confidence = cj.value("low_confidence", false);
    if (cj.contains("upstairs") && !cj.at("upstairs").is_null()) {
      const auto& u = cj.at("upstairs");
      c.upstairs = Upstairs{get_int(u.at("count")), u.at("genus").get<long>(), u.at("conductor").get<long>()};
    }
    g.components.push_back(c);
  }
  if (j.contains("augmented"))
    for (const auto& a : j.at("augmented"))
      g.augmented.push_back({a.at("id").get<std::string>(), a.at("point").get<std::string>(), get_int(a.at("index")),
                             a.at("attached_to").get<std::string>()});
  for (const auto& e : j.at("edges"))
    g.edges.push_back({e.at("source").get<std::string>(), e.at("target").get<std::string>(), get_opt_rat(e, "epaisseur"), get_opt_rat(e, "sigma_eff")});
  if (j.contains("signatures"))
    for (const auto& s : j.at("signatures")) {
      Signature sg;
      sg.node = s.at("node").get<std::string>();
      sg.h = get_int(s.at("h"));
      sg.m = get_int(s.at("m"));
      sg.sigma = get_rat(s.at("sigma"));
      sg.logarithmic = s.value("logarithmic", false);
      if (s.contains("differents"))
        for (const auto& d : s.at("differents")) sg.differents.push_back(get_rat(d));
      g.signatures.push_back(sg);
    }
  if (j.contains("notes")) g.notes = j.at("notes").get<std::vector<std::string>>();
  return g;
}

json radicand_json(const Radicand& r) {
  switch (r.kind) {
    case Radicand::Kind::Rational: return {{"kind", "rational"}, {"value", rat(r.value)}};
    case Radicand::Kind::Valuation: return {{"kind", "valuation"}, {"valuation", rat(r.valuation)}};
    case Radicand::Kind::Opaque: return {{"kind", "opaque"}};
  }
  return nullptr;
}

Radicand radicand_of(const json& j) {
  const std::string k = j.value("kind", std::string("opaque"));
  if (k == "rational") return Radicand::rational(get_rat(j.at("value")));
  if (k == "valuation") return Radicand::with_valuation(get_rat(j.at("valuation")));
  if (k == "opaque") return Radicand::opaque();
  throw Error(ErrorCode::InvalidArgument, "unknown radicand kind '" + k + "'");
}

StepKind step_kind_of(const std::string& s) {
  if (s == "Cyclotomic") return StepKind::Cyclotomic;
  if (s == "KummerRadical") return StepKind::KummerRadical;
  if (s == "Tame") return StepKind::Tame;
  throw Error(ErrorCode::InvalidArgument, "unknown step kind '" + s + "'");
}

json field_tower_json(const FieldTower& t) {
  json steps = json::array();
  for (const auto& s : t.steps) {
    json sj = {{"kind", step_kind_name(s.kind)}, {"level", s.level}, {"m", s.m}, {"label", s.label}, {"radicand", radicand_json(s.radicand)}};
    sj["over_step"] = s.over_step ? json(*s.over_step) : json(nullptr);
    sj["asserted_strict_bound"] = opt_rat(s.asserted_strict_bound);
    sj["rule"] = s.rule;
    steps.push_back(sj);
  }
  json j = {{"prime", t.p}, {"n", t.n}, {"case", t.case_label}, {"steps", steps}};
  j["source_ab"] = t.source_ab ? json{t.source_ab->first.get_str(), t.source_ab->second.get_str()} : json(nullptr);
  j["moduli_field_note"] = t.moduli_field_note;
  return j;
}

FieldTower field_tower_of(const json& j) {
  FieldTower t;
  t.p = j.at("prime").get<long>();
  t.n = j.at("n").get<long>();
  t.case_label = j.value("case", std::string());
  for (const auto& sj : j.at("steps")) {
    FieldStep s;
    s.kind = step_kind_of(sj.at("kind").get<std::string>());
    s.level = sj.value("level", 0L);
    s.m = sj.value("m", 1L);
    s.label = sj.value("label", std::string());
    if (sj.contains("radicand")) s.radicand = radicand_of(sj.at("radicand"));
    if (sj.contains("over_step") && !sj.at("over_step").is_null()) s.over_step = sj.at("over_step").get<std::size_t>();
    s.asserted_strict_bound = get_opt_rat(sj, "asserted_strict_bound");
    s.rule = sj.value("rule", std::string());
    t.steps.push_back(s);
  }
  if (j.contains("source_ab") && !j.at("source_ab").is_null())
    t.source_ab = std::make_pair(get_int(j.at("source_ab").at(0)), get_int(j.at("source_ab").at(1)));
  t.moduli_field_note = j.value("moduli_field_note", std::string());
  return t;
}

json conductor_report_json(const ConductorReport& r) {
  json facts = json::array();
  for (const auto& f : r.facts) facts.push_back({{"statement", f.statement}, {"expected", f.expected}, {"actual", f.actual}, {"holds", f.holds}});
  return {{"conductor", conductor_value_json(r.conductor)}, {"vanishes_at_n", r.vanishes_at_n}, {"detail", r.detail}, {"facts", facts}};
}

json violations_json(const std::vector<Violation>& v) {
  json a = json::array();
  for (const auto& x : v) a.push_back({{"code", x.code}, {"where", x.where}, {"message", x.message}});
  return a;
}

}  // namespace

std::string tower_to_json(const Tower& t) { return tower_json(t).dump(2); }

TowerPtr tower_from_json(const std::string& doc) {
  return guarded([&] { return tower_of(parse(doc)); });
}

std::string cover_spec_to_json(const CoverSpec& s) { return spec_json(s).dump(2); }

std::string verdict_to_json(const ReductionVerdict& v) { return verdict_json(v).dump(2); }

std::string certify_to_json(const CoverSpec& s, const NewTailLocus& locus, const ReductionVerdict& v) {
  json j = {{"spec", spec_json(s)},
            {"disk", {{"center", locus.d.to_string()}, {"center_formula", locus.description}, {"scale_valuation", rat(locus.v_e)}}},
            {"verdict", verdict_json(v)},
            {"profile", profile_json(v)}};
  return j.dump(2);
}

std::string graph_to_json(const DecoratedGraph& g) { return graph_json(g).dump(2); }

DecoratedGraph graph_from_json(const std::string& doc) {
  return guarded([&] { return graph_of(parse(doc)); });
}

std::string violations_to_json(const std::vector<Violation>& v) { return violations_json(v).dump(2); }

std::string field_tower_to_json(const FieldTower& t) { return field_tower_json(t).dump(2); }

FieldTower field_tower_from_json(const std::string& doc) {
  return guarded([&] { return field_tower_of(parse(doc)); });
}

std::string conductor_report_to_json(const ConductorReport& r) { return conductor_report_json(r).dump(2); }

std::string report_to_json(const StableModelReport& r) {
  json certs = json::array();
  for (const auto& c : r.tail_certificates)
    certs.push_back({{"component", c.component}, {"verdict", verdict_json(c.verdict)}, {"profile", profile_json(c.verdict)}});
  json checks = {{"violations", violations_json(r.violations)},
                 {"vanishing_cycles_residual", rat(r.vanishing_residual)},
                 {"local_vanishing_ok", r.local_vanishing_ok},
                 {"telescoping_ok", r.telescoping_ok}};
  json j = {{"spec", spec_json(r.spec)},
            {"graph", graph_json(r.graph)},
            {"tail_certificates", certs},
            {"tower", field_tower_json(r.tower)},
            {"conductor", conductor_report_json(r.conductor)},
            {"moduli_field_note", r.moduli_field_note},
            {"checks", checks},
            {"all_certified", r.all_certified()}};
  return j.dump(2);
}

std::string signature_to_json(const MetacyclicSpec& spec, const SignatureSolution& s) {
  json pts = json::array();
  for (int i = 0; i < 3; ++i) {
    const auto& p = s.points[i];
    pts.push_back({{"a", spec.a[i]}, {"h", p.h.get_str()}, {"m", p.m.get_str()}, {"sigma", rat(p.sigma)}, {"wild", p.wild}});
  }
  json j = {{"p", spec.p}, {"n", spec.n}, {"m", spec.m}, {"points", pts}, {"primitive_sigma_sum", rat(s.sum)}};
  return j.dump(2);
}

}  // namespace psr

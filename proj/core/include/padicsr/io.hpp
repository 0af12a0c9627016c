#pragma once

#include <string>

#include "padicsr/analyzer.hpp"
#include "padicsr/graph.hpp"
#include "padicsr/metacyclic.hpp"
#include "padicsr/ramification.hpp"
#include "padicsr/series.hpp"
#include "padicsr/tower.hpp"

namespace psr {

// All documents are JSON text; numbers that are exact rationals are "num/den"
// strings. Parsers throw Error(InvalidArgument) on malformed input.

std::string tower_to_json(const Tower& t);
TowerPtr tower_from_json(const std::string& doc);

std::string cover_spec_to_json(const CoverSpec& s);
std::string verdict_to_json(const ReductionVerdict& v);
// {"disk": {...}, "verdict": {...}, "profile": [[l, "v"], ...]}
std::string certify_to_json(const CoverSpec& s, const NewTailLocus& locus, const ReductionVerdict& v);

std::string graph_to_json(const DecoratedGraph& g);
DecoratedGraph graph_from_json(const std::string& doc);
std::string violations_to_json(const std::vector<Violation>& v);

std::string field_tower_to_json(const FieldTower& t);
FieldTower field_tower_from_json(const std::string& doc);
std::string conductor_report_to_json(const ConductorReport& r);

std::string report_to_json(const StableModelReport& r);
std::string signature_to_json(const MetacyclicSpec& spec, const SignatureSolution& s);

}  // namespace psr

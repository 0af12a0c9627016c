#include <CLI11.hpp>

#include <cstdlib>
#include <fstream>
#include <future>
#include <iomanip>
#include <iostream>
#include <random>
#include <sstream>

#include "padicsr/analyzer.hpp"
#include "padicsr/io.hpp"
#include "padicsr/metacyclic.hpp"

namespace {

constexpr int kOk = 0;
constexpr int kFailed = 1;
constexpr int kUsage = 2;

std::string slurp(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read " + path);
  std::ostringstream os;
  os << in.rdbuf();
  return os.str();
}

void spill(const std::string& path, const std::string& text) {
  std::ofstream out(path);
  if (!out) throw std::invalid_argument("cannot write " + path);
  out << text;
  if (text.empty() || text.back() != '\n') out << '\n';
}

struct SpecArgs {
  long p = 0, n = 0;
  std::string a, b;
};

void add_spec_options(CLI::App* cmd, SpecArgs& s) {
  cmd->add_option("--p", s.p, "prime p")->required();
  cmd->add_option("--n", s.n, "exponent n of the cyclic group Z/p^n")->required();
  cmd->add_option("--a", s.a, "exponent a in y^(p^n) = c x^a (x-1)^b")->required();
  cmd->add_option("--b", s.b, "exponent b")->required();
}

psr::CoverSpec to_spec(const SpecArgs& s) { return psr::branch_signature(s.p, s.n, psr::Int(s.a), psr::Int(s.b)); }

// Graph-level identities as violations, for validate-graph.
std::vector<psr::Violation> identity_violations(const psr::DecoratedGraph& g) {
  std::vector<psr::Violation> out;
  try {
    psr::Rat r = psr::check_vanishing_cycles(g);
    if (r != 0) out.push_back({"vanishing-cycles", "", "residual " + psr::format_rat(r)});
  } catch (const psr::Error& e) {
    out.push_back({"missing-sigma", "", e.what()});
  }
  try {
    for (const auto& [id, r] : psr::check_local_vanishing(g))
      if (r != 0) out.push_back({"local-vanishing", id, "residual " + psr::format_rat(r)});
  } catch (const psr::Error& e) {
    out.push_back({"missing-sigma-eff", "", e.what()});
  }
  return out;
}

struct BatchRow {
  long n, s;
  int runs = 0, certified = 0;
  std::string first_failure;
};

BatchRow run_cell(long p, long n, long s, int samples, unsigned seed) {
  BatchRow row{n, s};
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<long> unit(1, 200);
  const psr::Int pns = psr::ipow(p, n - s);
  int guard = 0;
  while (row.runs < samples && guard++ < 100 * samples) {
    psr::Int a = unit(rng), b = psr::Int(unit(rng)) * pns;
    if (a % p == 0 || (b / pns) % p == 0 || (a + b) % p == 0) continue;
    ++row.runs;
    try {
      auto rep = psr::analyze(psr::branch_signature(p, n, a, b));
      if (rep.all_certified()) ++row.certified;
      else if (row.first_failure.empty()) row.first_failure = "a=" + a.get_str() + " b=" + b.get_str();
    } catch (const std::exception& e) {
      if (row.first_failure.empty()) row.first_failure = e.what();
    }
  }
  return row;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Exact stable reduction of three-point Z/p^n covers y^(p^n) = c x^a (x-1)^b"};
  app.require_subcommand(1);
  long truncation = 0, hensel = 0;
  app.add_option("--truncation", truncation, "series truncation L (overrides PADIC_SR_TRUNCATION)")->check(CLI::PositiveNumber);
  app.add_option("--hensel-depth", hensel, "Hensel modulus exponent (overrides PADIC_SR_HENSEL_DEPTH)")->check(CLI::PositiveNumber);

  SpecArgs an;
  std::string json_out, dot_out;
  auto* analyze = app.add_subcommand("analyze", "stable reduction report");
  add_spec_options(analyze, an);
  analyze->add_option("--json", json_out, "write the report here instead of stdout");
  analyze->add_option("--dot", dot_out, "write the component graph as DOT");

  SpecArgs ce;
  auto* certify = app.add_subcommand("certify", "certify the new-tail torsor reduction");
  add_spec_options(certify, ce);

  std::string graph_path;
  auto* validate = app.add_subcommand("validate-graph", "check a graph JSON document against the structural rules");
  validate->add_option("graph", graph_path, "graph JSON file")->required();

  std::string tower_path;
  SpecArgs co;
  auto* conductor = app.add_subcommand("conductor", "conductor bound of a field tower");
  conductor->add_option("tower", tower_path, "FieldTower JSON file");
  conductor->add_option("--p", co.p, "build the tower of this cover instead");
  conductor->add_option("--n", co.n);
  conductor->add_option("--a", co.a);
  conductor->add_option("--b", co.b);

  psr::MetacyclicSpec ms;
  auto* signature = app.add_subcommand("signature", "deformation-datum signatures of a metacyclic cover");
  signature->add_option("--p", ms.p)->required();
  signature->add_option("--n", ms.n)->required();
  signature->add_option("--m", ms.m)->required();
  signature->add_option("--a1", ms.a[0])->required();
  signature->add_option("--a2", ms.a[1])->required();
  signature->add_option("--a3", ms.a[2])->required();

  long bp = 0, n_max = 0;
  int samples = 5, jobs = 1;
  unsigned seed = 1;
  auto* batch = app.add_subcommand("batch", "grid of random covers, one row per (n, s)");
  batch->add_option("--p", bp)->required();
  batch->add_option("--n-max", n_max)->required()->check(CLI::Range(1, 6));
  batch->add_option("--samples", samples, "covers per cell")->check(CLI::Range(1, 1000));
  batch->add_option("--seed", seed);
  batch->add_option("--jobs", jobs, "cells analyzed concurrently")->check(CLI::Range(1, 64));

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? kOk : kUsage;
  }
  if (truncation > 0) setenv("PADIC_SR_TRUNCATION", std::to_string(truncation).c_str(), 1);
  if (hensel > 0) setenv("PADIC_SR_HENSEL_DEPTH", std::to_string(hensel).c_str(), 1);

  try {
    if (*analyze) {
      auto rep = psr::analyze(to_spec(an));
      std::string doc = psr::report_to_json(rep);
      if (json_out.empty()) std::cout << doc << "\n";
      else spill(json_out, doc);
      if (!dot_out.empty()) spill(dot_out, psr::export_dot(rep.graph));
      return rep.all_certified() ? kOk : kFailed;
    }
    if (*certify) {
      auto spec = to_spec(ce);
      auto v = psr::certify_tail(spec);
      std::cout << psr::certify_to_json(spec, psr::new_tail_locus(spec), v) << "\n";
      return v.certified() ? kOk : kFailed;
    }
    if (*validate) {
      auto g = psr::graph_from_json(slurp(graph_path));
      auto v = psr::validate_structure(g);
      for (auto& x : psr::tail_invariant_checks(g)) v.push_back(x);
      for (auto& x : identity_violations(g)) v.push_back(x);
      std::cout << psr::violations_to_json(v) << "\n";
      return v.empty() ? kOk : kFailed;
    }
    if (*conductor) {
      psr::FieldTower t;
      if (!tower_path.empty()) {
        t = psr::field_tower_from_json(slurp(tower_path));
      } else if (co.p && co.n && !co.a.empty() && !co.b.empty()) {
        t = psr::stab_field_tower(to_spec(co));
      } else {
        std::cerr << "conductor: give a tower file or --p --n --a --b\n";
        return kUsage;
      }
      auto r = psr::conductor_bound(t, t.n);
      std::cout << psr::conductor_report_to_json(r) << "\n";
      return r.vanishes_at_n ? kOk : kFailed;
    }
    if (*signature) {
      auto s = psr::signature_solver(ms);
      std::cout << psr::signature_to_json(ms, s) << "\n";
      return kOk;
    }
    if (*batch) {
      std::vector<std::pair<long, long>> cells;
      for (long n = 1; n <= n_max; ++n)
        for (long s = 1; s <= (bp == 2 ? n - 1 : n); ++s)
          if (!(bp == 2 && n < 2)) cells.emplace_back(n, s);
      std::vector<BatchRow> rows;
      for (std::size_t k = 0; k < cells.size(); k += jobs) {
        std::vector<std::future<BatchRow>> fs;
        for (std::size_t c = k; c < std::min(cells.size(), k + jobs); ++c)
          fs.push_back(std::async(std::launch::async, run_cell, bp, cells[c].first, cells[c].second, samples, seed + unsigned(c)));
        for (auto& f : fs) rows.push_back(f.get());
      }
      bool ok = true;
      std::cout << std::left << std::setw(4) << "n" << std::setw(4) << "s" << std::setw(8) << "runs" << std::setw(11) << "certified"
                << "first failure\n";
      for (const auto& r : rows) {
        std::cout << std::setw(4) << r.n << std::setw(4) << r.s << std::setw(8) << r.runs << std::setw(11) << r.certified
                  << r.first_failure << "\n";
        ok = ok && r.certified == r.runs;
      }
      return ok ? kOk : kFailed;
    }
  } catch (const psr::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return e.code() == psr::ErrorCode::InvalidArgument || e.code() == psr::ErrorCode::Disconnected ||
                   e.code() == psr::ErrorCode::NotThreePoint || e.code() == psr::ErrorCode::NotFaithful
               ? kUsage
               : kFailed;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kUsage;
  }
  return kUsage;
}

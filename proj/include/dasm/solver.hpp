#pragma once

// Priority graphs and the priority-matching solvers. The naive variant runs
// plain maximal b-matchings per priority level and is kept for its
// counterexample value; the smart variant runs the reserved matching first
// and is stable for every weight in [0,1].

#include <string>
#include <vector>

#include <json.hpp>

#include "dasm/core.hpp"
#include "dasm/io.hpp"
#include "dasm/reserved.hpp"

namespace dasm {

// Edge strata over applicant-employer pairs, pairwise disjoint:
//   g0 - affiliate pairs with full mutual interest,
//   g1 - non-affiliate pairs interested in each other,
//   g2 - affiliate pairs where only the employer's own interest holds,
//   g3 - affiliate pairs where only the placement interest holds.
// Every stratum requires the applicant's interest.
struct PriorityGraphs {
  std::vector<Edge> g0, g1, g2, g3;  // (applicant, employer), sorted by (e,a)
};

inline PriorityGraphs build_priority_graphs(const Instance& inst) {
  PriorityGraphs g;
  for (int e = 0; e < inst.m; ++e) {
    for (int a = 0; a < inst.n; ++a) {
      if (!inst.pr_a(a, e)) continue;
      if (inst.is_affiliate(a, e)) {
        int own = inst.pr_e_own(e, a);
        int placement = inst.pr_e_aff(a, e);
        if (own && placement)
          g.g0.emplace_back(a, e);
        else if (own)
          g.g2.emplace_back(a, e);
        else if (placement)
          g.g3.emplace_back(a, e);
      } else if (inst.pr_e_own(e, a)) {
        g.g1.emplace_back(a, e);
      }
    }
  }
  return g;
}

struct PhaseTrace {
  std::string name;
  std::vector<Edge> graph;  // edges considered, in scan order
  std::vector<int> residual_quota_applicant;
  std::vector<int> residual_quota_employer;
  std::vector<Edge> chosen;
};

struct SolveResult {
  Matching matching;
  std::vector<PhaseTrace> phases;
};

enum class Algorithm { Smart, Naive };

namespace detail {

// Applicants occupy vertex ids [0,n), employers [n,n+m).
inline std::vector<Edge> lift(const std::vector<Edge>& pairs, int n) {
  std::vector<Edge> out;
  out.reserve(pairs.size());
  for (auto [a, e] : pairs) out.emplace_back(a, n + e);
  return out;
}

inline void apply_phase(const std::vector<Edge>& chosen, int n, Matching& mu,
                        std::vector<int>& residual_a,
                        std::vector<int>& residual_e) {
  for (auto [a, ev] : chosen) {
    int e = ev - n;
    mu.add(a, e);
    --residual_a[a];
    --residual_e[e];
  }
}

inline PhaseTrace make_trace(const std::string& name,
                             const std::vector<Edge>& graph, int n,
                             const std::vector<int>& residual_a,
                             const std::vector<int>& residual_e,
                             const std::vector<Edge>& chosen_lifted) {
  PhaseTrace tr;
  tr.name = name;
  tr.graph = graph;
  tr.residual_quota_applicant = residual_a;
  tr.residual_quota_employer = residual_e;
  for (auto [a, ev] : chosen_lifted) tr.chosen.emplace_back(a, ev - n);
  return tr;
}

}  // namespace detail

// Plain PriorityMatch: greedy maximal b-matching on g0, g1, g2, g3 in that
// order with residual quotas carried forward. Not guaranteed stable.
inline SolveResult priority_match_traced(const Instance& inst) {
  PriorityGraphs g = build_priority_graphs(inst);
  int n = inst.n;
  std::vector<int> residual_a = inst.quota_applicant;
  std::vector<int> residual_e = inst.quota_employer;
  Matching mu(inst.n, inst.m);
  SolveResult result;

  const std::vector<Edge>* graphs[4] = {&g.g0, &g.g1, &g.g2, &g.g3};
  const char* names[4] = {"g0", "g1", "g2", "g3"};
  for (int phase = 0; phase < 4; ++phase) {
    std::vector<int> quota(n + inst.m);
    for (int a = 0; a < n; ++a) quota[a] = residual_a[a];
    for (int e = 0; e < inst.m; ++e) quota[n + e] = residual_e[e];
    BMatching bm =
        greedy_maximal(n + inst.m, detail::lift(*graphs[phase], n), quota);
    result.phases.push_back(detail::make_trace(
        names[phase], *graphs[phase], n, residual_a, residual_e, bm.chosen));
    detail::apply_phase(bm.chosen, n, mu, residual_a, residual_e);
  }
  result.matching = mu;
  return result;
}

// SmartPriorityMatch: a reserved maximal b-matching on g1 protects enough of
// each employer's g0 neighborhood, then plain maximal matchings on g0, g2,
// g3 with residual quotas. Output does not depend on the valuation weight.
inline SolveResult smart_priority_match_traced(const Instance& inst) {
  PriorityGraphs g = build_priority_graphs(inst);
  int n = inst.n;

  std::vector<std::vector<int>> n0(inst.m);
  for (auto [a, e] : g.g0) n0[e].push_back(a);

  ReservedProblem reserved;
  reserved.num_vertices = n + inst.m;
  reserved.edges = detail::lift(g.g1, n);
  reserved.quota.assign(n + inst.m, 0);
  for (int a = 0; a < n; ++a) reserved.quota[a] = inst.quota_applicant[a];
  for (int e = 0; e < inst.m; ++e) {
    int protected_count = std::min(static_cast<int>(n0[e].size()),
                                   inst.quota_employer[e]);
    reserved.quota[n + e] = inst.quota_employer[e] - protected_count;
    reserved.sets.push_back(n0[e]);
    reserved.reservation.push_back(protected_count);
  }

  std::vector<int> residual_a = inst.quota_applicant;
  std::vector<int> residual_e = inst.quota_employer;
  Matching mu(inst.n, inst.m);
  SolveResult result;

  BMatching m1 = greedy_reserved(reserved);
  result.phases.push_back(detail::make_trace("reserved_g1", g.g1, n,
                                             residual_a, residual_e,
                                             m1.chosen));
  detail::apply_phase(m1.chosen, n, mu, residual_a, residual_e);

  const std::vector<Edge>* graphs[3] = {&g.g0, &g.g2, &g.g3};
  const char* names[3] = {"g0", "g2", "g3"};
  for (int phase = 0; phase < 3; ++phase) {
    std::vector<int> quota(n + inst.m);
    for (int a = 0; a < n; ++a) quota[a] = residual_a[a];
    for (int e = 0; e < inst.m; ++e) quota[n + e] = residual_e[e];
    BMatching bm =
        greedy_maximal(n + inst.m, detail::lift(*graphs[phase], n), quota);
    result.phases.push_back(detail::make_trace(
        names[phase], *graphs[phase], n, residual_a, residual_e, bm.chosen));
    detail::apply_phase(bm.chosen, n, mu, residual_a, residual_e);
  }
  result.matching = mu;
  return result;
}

inline Matching priority_match(const Instance& inst) {
  return priority_match_traced(inst).matching;
}

inline Matching smart_priority_match(const Instance& inst) {
  return smart_priority_match_traced(inst).matching;
}

inline SolveResult solve(const Instance& inst, Algorithm algorithm) {
  return algorithm == Algorithm::Smart ? smart_priority_match_traced(inst)
                                       : priority_match_traced(inst);
}

inline json trace_to_json(const Instance& inst, const SolveResult& result) {
  json phases = json::array();
  for (const auto& tr : result.phases) {
    json edges = json::array();
    for (auto [a, e] : tr.graph)
      edges.push_back(json::array(
          {inst.applicant_names[a], inst.employer_names[e]}));
    json chosen = json::array();
    for (auto [a, e] : tr.chosen)
      chosen.push_back(json::array(
          {inst.applicant_names[a], inst.employer_names[e]}));
    json quota = json::object();
    for (int a = 0; a < inst.n; ++a)
      quota[inst.applicant_names[a]] = tr.residual_quota_applicant[a];
    for (int e = 0; e < inst.m; ++e)
      quota[inst.employer_names[e]] = tr.residual_quota_employer[e];
    phases.push_back(json{{"phase", tr.name},
                          {"graph", std::move(edges)},
                          {"residual_quota", std::move(quota)},
                          {"chosen", std::move(chosen)}});
  }
  return json{{"phases", std::move(phases)}};
}

}  // namespace dasm

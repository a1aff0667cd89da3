#pragma once

// Brute-force ground truth for tiny instances: enumerate all valid matchings,
// classify stability, and cross-check the solver and the integer-program
// encoding against the blocking verifier.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include <json.hpp>

#include "dasm/blocking.hpp"
#include "dasm/core.hpp"
#include "dasm/ilp.hpp"
#include "dasm/io.hpp"
#include "dasm/solver.hpp"

namespace dasm {

inline constexpr int kDefaultPairCap = 12;

namespace detail {

inline void enumerate_rec(const Instance& inst,
                          const std::vector<std::pair<int, int>>& pairs,
                          std::size_t i, Matching& mu,
                          std::vector<int>& deg_a, std::vector<int>& deg_e,
                          const std::function<bool(const Matching&)>& visit,
                          bool& keep_going) {
  if (!keep_going) return;
  if (i == pairs.size()) {
    keep_going = visit(mu);
    return;
  }
  auto [a, e] = pairs[i];
  // exclude pair i
  enumerate_rec(inst, pairs, i + 1, mu, deg_a, deg_e, visit, keep_going);
  if (!keep_going) return;
  // include pair i when quotas permit
  if (deg_a[a] < inst.quota_applicant[a] &&
      deg_e[e] < inst.quota_employer[e]) {
    mu.add(a, e);
    ++deg_a[a];
    ++deg_e[e];
    enumerate_rec(inst, pairs, i + 1, mu, deg_a, deg_e, visit, keep_going);
    mu.remove(a, e);
    --deg_a[a];
    --deg_e[e];
  }
}

}  // namespace detail

// Visits every valid matching exactly once, deterministic order
// (depth-first include/exclude over the (a,e)-sorted pair list).
inline void for_each_matching(const Instance& inst,
                              const std::function<bool(const Matching&)>& visit,
                              int pair_cap = kDefaultPairCap) {
  if (static_cast<std::int64_t>(inst.n) * inst.m > pair_cap)
    throw InstanceTooLarge("instance exceeds the enumeration cap of " +
                           std::to_string(pair_cap) + " potential pairs");
  std::vector<std::pair<int, int>> pairs;
  for (int a = 0; a < inst.n; ++a)
    for (int e = 0; e < inst.m; ++e) pairs.emplace_back(a, e);
  Matching mu(inst.n, inst.m);
  std::vector<int> deg_a(inst.n, 0), deg_e(inst.m, 0);
  bool keep_going = true;
  detail::enumerate_rec(inst, pairs, 0, mu, deg_a, deg_e, visit, keep_going);
}

inline std::vector<Matching> enumerate_matchings(
    const Instance& inst, int pair_cap = kDefaultPairCap) {
  std::vector<Matching> out;
  for_each_matching(
      inst,
      [&](const Matching& mu) {
        out.push_back(mu);
        return true;
      },
      pair_cap);
  return out;
}

inline std::vector<Matching> stable_set(const Instance& inst,
                                        const Lambda& lambda,
                                        int pair_cap = kDefaultPairCap) {
  std::vector<Matching> out;
  for_each_matching(
      inst,
      [&](const Matching& mu) {
        if (is_stable(inst, mu, lambda)) out.push_back(mu);
        return true;
      },
      pair_cap);
  return out;
}

struct MonotonicityObservation {
  Lambda lambda_hi;
  Lambda lambda_lo;
  Matching matching;
  bool stable_hi = false;
  bool stable_lo = false;
};

struct StabilityReport {
  std::string instance_digest;
  Lambda lambda;
  std::int64_t total_matchings = 0;
  std::vector<Matching> stable_matchings;
  bool solver_output_stable = false;
  bool ilp_agreement = false;
  // Counterexamples to "stable at the larger weight implies stable at the
  // smaller" across the probe weights; recorded, never asserted.
  std::vector<MonotonicityObservation> monotonicity_observations;
};

// Asserted checks: (a) the solver's matching is stable at the given weight;
// (b) at weight 1, the verifier and the integer program agree on every
// matching. Monotonicity across the probe weights is only observed.
inline StabilityReport cross_check(const Instance& inst, const Lambda& lambda,
                                   int pair_cap = kDefaultPairCap) {
  StabilityReport report;
  report.instance_digest = instance_digest(inst);
  report.lambda = lambda;

  Matching solved = smart_priority_match(inst);
  report.solver_output_stable = is_stable(inst, solved, lambda);

  IlpModel model = build_model(inst);
  Lambda one = Lambda::one();
  bool agreement = true;

  const std::vector<Lambda> probes = {Lambda::zero(), Lambda::epsilon(),
                                      Lambda::rational(1, 4),
                                      Lambda::rational(1, 2), Lambda::one()};

  for_each_matching(
      inst,
      [&](const Matching& mu) {
        ++report.total_matchings;
        if (is_stable(inst, mu, lambda)) report.stable_matchings.push_back(mu);
        if (check_matching(model, mu).empty() != is_stable(inst, mu, one))
          agreement = false;
        std::vector<bool> stable(probes.size());
        for (std::size_t i = 0; i < probes.size(); ++i)
          stable[i] = is_stable(inst, mu, probes[i]);
        for (std::size_t hi = 0; hi < probes.size(); ++hi)
          for (std::size_t lo = 0; lo < hi; ++lo)
            if (stable[hi] && !stable[lo])
              report.monotonicity_observations.push_back(
                  {probes[hi], probes[lo], mu, true, false});
        return true;
      },
      pair_cap);

  report.ilp_agreement = agreement;
  return report;
}

inline json report_to_json(const Instance& inst,
                           const StabilityReport& report) {
  json doc;
  doc["instance_digest"] = report.instance_digest;
  doc["lambda"] = report.lambda.to_string();
  doc["total_matchings"] = report.total_matchings;
  json stable = json::array();
  for (const auto& mu : report.stable_matchings)
    stable.push_back(matching_to_json(inst, mu)["matches"]);
  doc["stable_matchings"] = std::move(stable);
  doc["solver_output_stable"] = report.solver_output_stable;
  doc["ilp_agreement"] = report.ilp_agreement;
  json obs = json::array();
  for (const auto& o : report.monotonicity_observations)
    obs.push_back(json{{"lambda_hi", o.lambda_hi.to_string()},
                       {"lambda_lo", o.lambda_lo.to_string()},
                       {"matching", matching_to_json(inst, o.matching)["matches"]},
                       {"stable_hi", o.stable_hi},
                       {"stable_lo", o.stable_lo}});
  doc["monotonicity_observations"] = std::move(obs);
  return doc;
}

}  // namespace dasm

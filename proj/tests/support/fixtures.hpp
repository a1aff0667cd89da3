#pragma once

// Shared test fixtures and random-input helpers.

#include <cstdint>
#include <string>
#include <vector>

#include "dasm/core.hpp"
#include "dasm/generator.hpp"
#include "dasm/io.hpp"

namespace dasm::test {

// Two applicants, two employers, both applicants affiliated with e1, all
// quotas 1. Every preference is 1 except pr_{e1}^{a2}(e2), pr_{e2}^{e2}(a2)
// and pr_{a2}(e2). A naive greedy on the top priority stratum can match
// (a1,e1) and strand a2, which a2 and e1 then profitably undo; the
// alternative {(a1,e2),(a2,e1)} is stable at every weight.
inline Instance priority_trap() {
  RawInstance raw;
  raw.applicants = {"a1", "a2"};
  raw.employers = {"e1", "e2"};
  raw.affiliation["e1"] = {"a1", "a2"};
  raw.affiliation["e2"] = {};
  for (const auto& name : {"a1", "a2", "e1", "e2"}) raw.quota[name] = 1;
  for (const auto& a : {"a1", "a2"})
    for (const auto& e : {"e1", "e2"}) raw.pref_applicant[a][e] = 1;
  for (const auto& e : {"e1", "e2"})
    for (const auto& a : {"a1", "a2"}) raw.pref_employer_own[e][a] = 1;
  for (const auto& a : {"a1", "a2"})
    for (const auto& e : {"e1", "e2"})
      raw.pref_employer_affiliate["e1"][a][e] = 1;
  raw.pref_employer_affiliate["e1"]["a2"]["e2"] = 0;
  raw.pref_employer_own["e2"]["a2"] = 0;
  raw.pref_applicant["a2"]["e2"] = 0;
  return validate_instance(raw);
}

// Two employers where e2 has zero capacity, each side of the market liking
// everyone. {(a2,e1)} is unstable for every positive weight because e1
// prefers swapping in its own affiliate a1; a sequential max-weight matching
// can still pick it.
inline Instance zero_capacity_trap() {
  RawInstance raw;
  raw.applicants = {"a1", "a2"};
  raw.employers = {"e1", "e2"};
  raw.affiliation["e1"] = {"a1"};
  raw.affiliation["e2"] = {"a2"};
  raw.quota = {{"a1", 1}, {"a2", 1}, {"e1", 1}, {"e2", 0}};
  for (const auto& a : {"a1", "a2"})
    for (const auto& e : {"e1", "e2"}) raw.pref_applicant[a][e] = 1;
  for (const auto& e : {"e1", "e2"})
    for (const auto& a : {"a1", "a2"}) raw.pref_employer_own[e][a] = 1;
  for (const auto& e : {"e1", "e2"}) raw.pref_employer_affiliate["e1"]["a1"][e] = 1;
  for (const auto& e : {"e1", "e2"}) raw.pref_employer_affiliate["e2"]["a2"][e] = 1;
  return validate_instance(raw);
}

inline Matching pairs_by_name(const Instance& inst,
                              const std::vector<std::pair<std::string,
                                                          std::string>>& kv) {
  std::vector<std::pair<int, int>> pairs;
  for (const auto& [a_name, e_name] : kv) {
    int a = -1, e = -1;
    for (int i = 0; i < inst.n; ++i)
      if (inst.applicant_names[i] == a_name) a = i;
    for (int j = 0; j < inst.m; ++j)
      if (inst.employer_names[j] == e_name) e = j;
    pairs.emplace_back(a, e);
  }
  return Matching::from_pairs(inst.n, inst.m, pairs);
}

// Small random market with every table drawn independently; affiliation
// blocks need not be uniform in size.
inline Instance random_instance(SplitMix64& rng, int max_n = 5, int max_m = 4,
                                int max_quota = 3) {
  int m = 1 + static_cast<int>(rng.below(max_m));
  int n = 1 + static_cast<int>(rng.below(max_n));
  RawInstance raw;
  for (int a = 0; a < n; ++a) raw.applicants.push_back("a" + std::to_string(a));
  for (int e = 0; e < m; ++e) raw.employers.push_back("e" + std::to_string(e));
  for (int e = 0; e < m; ++e) raw.affiliation[raw.employers[e]] = {};
  std::vector<int> owner(n);
  for (int a = 0; a < n; ++a) {
    owner[a] = static_cast<int>(rng.below(m));
    raw.affiliation[raw.employers[owner[a]]].push_back(raw.applicants[a]);
  }
  for (int a = 0; a < n; ++a)
    raw.quota[raw.applicants[a]] = static_cast<int>(rng.below(max_quota + 1));
  for (int e = 0; e < m; ++e)
    raw.quota[raw.employers[e]] = static_cast<int>(rng.below(max_quota + 1));
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < m; ++e)
      raw.pref_applicant[raw.applicants[a]][raw.employers[e]] =
          static_cast<int>(rng.below(2));
  for (int e = 0; e < m; ++e)
    for (int a = 0; a < n; ++a)
      raw.pref_employer_own[raw.employers[e]][raw.applicants[a]] =
          static_cast<int>(rng.below(2));
  for (int a = 0; a < n; ++a)
    for (int e = 0; e < m; ++e)
      raw.pref_employer_affiliate[raw.employers[owner[a]]][raw.applicants[a]]
                                 [raw.employers[e]] =
          static_cast<int>(rng.below(2));
  return validate_instance(raw);
}

// Random valid matching: shuffled pair insertions respecting quotas.
inline Matching random_matching(SplitMix64& rng, const Instance& inst) {
  std::vector<std::pair<int, int>> all;
  for (int a = 0; a < inst.n; ++a)
    for (int e = 0; e < inst.m; ++e) all.emplace_back(a, e);
  for (std::size_t i = all.size(); i > 1; --i)
    std::swap(all[i - 1], all[rng.below(i)]);
  Matching mu(inst.n, inst.m);
  std::vector<int> deg_a(inst.n, 0), deg_e(inst.m, 0);
  for (auto [a, e] : all) {
    if (rng.below(2) == 0) continue;
    if (deg_a[a] >= inst.quota_applicant[a]) continue;
    if (deg_e[e] >= inst.quota_employer[e]) continue;
    mu.add(a, e);
    ++deg_a[a];
    ++deg_e[e];
  }
  return mu;
}

}  // namespace dasm::test

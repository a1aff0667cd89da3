#pragma once

// Potential blocking tuples, swapped matchings, the six blocking conditions,
// and the stability verdict with witness.

#include <functional>
#include <optional>
#include <utility>
#include <vector>

#include <json.hpp>

#include "dasm/core.hpp"
#include "dasm/io.hpp"

namespace dasm {

// Tuple slot: a real agent index or the empty agent. The empty agent carries
// no side or affiliation and has zero capacity; it is a dedicated sentinel,
// never a real index.
struct Slot {
  int idx = -1;

  static Slot gamma() { return Slot{-1}; }
  static Slot of(int i) { return Slot{i}; }
  bool is_gamma() const { return idx < 0; }
  bool is_real() const { return idx >= 0; }

  friend bool operator==(const Slot&, const Slot&) = default;
};

// Six-slot witness (a, a', a'', e, e', e''): a and e are the pivot pair,
// a'/e' the dropped matches, a''/e'' the rematches. Primed and double-primed
// slots may hold the empty agent.
struct PotentialBlockingTuple {
  int a = 0;
  Slot a_prime;
  Slot a_dprime;
  int e = 0;
  Slot e_prime;
  Slot e_dprime;

  friend bool operator==(const PotentialBlockingTuple&,
                         const PotentialBlockingTuple&) = default;
};

// N_mu^A and N_mu^E: agents with remaining capacity.
inline std::pair<std::vector<int>, std::vector<int>> free_agents(
    const Instance& inst, const Matching& mu) {
  std::vector<int> free_a, free_e;
  for (int a = 0; a < inst.n; ++a)
    if (static_cast<int>(mu.fwd[a].size()) < inst.quota_applicant[a])
      free_a.push_back(a);
  for (int e = 0; e < inst.m; ++e)
    if (static_cast<int>(mu.bwd[e].size()) < inst.quota_employer[e])
      free_e.push_back(e);
  return {free_a, free_e};
}

// Conditions 1-7 of the potential-blocking-tuple definition, checked against
// a concrete matching.
inline bool is_potential_tuple(const Instance& inst, const Matching& mu,
                               const PotentialBlockingTuple& t) {
  if (t.a < 0 || t.a >= inst.n) return false;
  if (t.e < 0 || t.e >= inst.m) return false;
  if (mu.has(t.a, t.e)) return false;

  auto a_free = [&](int a) {
    return static_cast<int>(mu.fwd[a].size()) < inst.quota_applicant[a];
  };
  auto e_free = [&](int e) {
    return static_cast<int>(mu.bwd[e].size()) < inst.quota_employer[e];
  };

  if (t.a_prime.is_gamma()) {
    if (!e_free(t.e)) return false;
  } else {
    if (t.a_prime.idx >= inst.n || !mu.has(t.a_prime.idx, t.e)) return false;
  }
  if (t.e_prime.is_gamma()) {
    if (!a_free(t.a)) return false;
  } else {
    if (t.e_prime.idx >= inst.m || !mu.has(t.a, t.e_prime.idx)) return false;
  }

  if (t.e_prime.is_gamma()) {
    if (!t.a_dprime.is_gamma()) return false;
  } else if (t.a_dprime.is_real()) {
    int a2 = t.a_dprime.idx;
    if (a2 >= inst.n) return false;
    bool in_pool = a_free(a2) || t.a_dprime == t.a_prime;
    if (!in_pool) return false;
    if (mu.has(a2, t.e_prime.idx)) return false;
  }
  if (t.a_prime.is_gamma()) {
    if (!t.e_dprime.is_gamma()) return false;
  } else if (t.e_dprime.is_real()) {
    int e2 = t.e_dprime.idx;
    if (e2 >= inst.m) return false;
    bool in_pool = e_free(e2) || t.e_dprime == t.e_prime;
    if (!in_pool) return false;
    if (mu.has(t.a_prime.idx, e2)) return false;
  }

  bool pair_a = t.a_dprime.is_real() && t.a_dprime == t.a_prime;
  bool pair_e = t.e_dprime.is_real() && t.e_dprime == t.e_prime;
  return pair_a == pair_e;
}

// mu with (a,e') and (a',e) broken, (a,e) formed, and the rematches
// (a',e'') and (a'',e') formed when the respective slots are real.
inline Matching swapped_matching(const Instance& inst, const Matching& mu,
                                 const PotentialBlockingTuple& t) {
  if (!is_potential_tuple(inst, mu, t))
    throw InvalidTuple("not a potential blocking tuple for this matching");
  Matching out = mu;
  if (t.e_prime.is_real()) out.remove(t.a, t.e_prime.idx);
  if (t.a_prime.is_real()) out.remove(t.a_prime.idx, t.e);
  out.add(t.a, t.e);
  if (t.e_dprime.is_real()) out.add(t.a_prime.idx, t.e_dprime.idx);
  if (t.a_dprime.is_real()) out.add(t.a_dprime.idx, t.e_prime.idx);
  return out;
}

namespace detail {

// Exact valuation deltas for the six conditions, avoiding matching copies.
// Agreement with the recompute-from-scratch path is property-tested.
inline bool blocks_fast(const Instance& inst, const Matching& mu,
                        const PotentialBlockingTuple& t,
                        const Lambda& lambda) {
  (void)mu;
  int a = t.a, e = t.e;
  // Condition 1: a strictly prefers mu' (gains e, loses e').
  int pa_gain = inst.pr_a(a, e);
  int pa_loss = t.e_prime.is_real() ? inst.pr_a(a, t.e_prime.idx) : 0;
  if (pa_gain <= pa_loss) return false;

  // Condition 2: e strictly prefers mu'.
  std::int64_t own = inst.pr_e_own(e, a);
  std::int64_t aff = 0;
  if (t.a_prime.is_real()) own -= inst.pr_e_own(e, t.a_prime.idx);
  if (inst.is_affiliate(a, e)) {
    aff += inst.pr_e_aff(a, e);
    if (t.e_prime.is_real()) aff -= inst.pr_e_aff(a, t.e_prime.idx);
  }
  if (t.a_prime.is_real() && inst.is_affiliate(t.a_prime.idx, e)) {
    aff -= inst.pr_e_aff(t.a_prime.idx, e);
    if (t.e_dprime.is_real())
      aff += inst.pr_e_aff(t.a_prime.idx, t.e_dprime.idx);
  }
  if (t.a_dprime.is_real() && t.a_dprime != t.a_prime &&
      inst.is_affiliate(t.a_dprime.idx, e))
    aff += inst.pr_e_aff(t.a_dprime.idx, t.e_prime.idx);
  if (compare_scores({own, aff}, {0, 0}, lambda) <= 0) return false;

  // Conditions 3 and 6: the formed pair (a', e'') must be wanted by both.
  if (t.a_prime.is_real() && t.e_dprime.is_real()) {
    int ap = t.a_prime.idx, edd = t.e_dprime.idx;
    if (inst.pr_a(ap, edd) != 1) return false;
    std::int64_t own6 = inst.pr_e_own(edd, ap);
    std::int64_t aff6 =
        inst.is_affiliate(ap, edd) ? inst.pr_e_aff(ap, edd) : 0;
    if (compare_scores({own6, aff6}, {0, 0}, lambda) <= 0) return false;
  }
  // Conditions 4 and 5: the formed pair (a'', e') must be wanted by both.
  if (t.a_dprime.is_real() && t.e_prime.is_real()) {
    int add = t.a_dprime.idx, ep = t.e_prime.idx;
    if (inst.pr_a(add, ep) != 1) return false;
    std::int64_t own4 = inst.pr_e_own(ep, add);
    std::int64_t aff4 =
        inst.is_affiliate(add, ep) ? inst.pr_e_aff(add, ep) : 0;
    if (compare_scores({own4, aff4}, {0, 0}, lambda) <= 0) return false;
  }
  return true;
}

}  // namespace detail

// Reference blocking check: every condition evaluated by comparing full
// valuations of the relevant agent (conditions 3-6 within the mu' context,
// against mu' with the formed pair removed).
inline bool is_blocking(const Instance& inst, const Matching& mu,
                        const PotentialBlockingTuple& t,
                        const Lambda& lambda) {
  Matching mu_prime = swapped_matching(inst, mu, t);  // throws InvalidTuple

  if (!prefers(inst, applicant(t.a), mu_prime, mu, lambda)) return false;
  if (!prefers(inst, employer(t.e), mu_prime, mu, lambda)) return false;

  if (t.a_prime.is_real() && t.e_dprime.is_real()) {
    Matching without = mu_prime;
    without.remove(t.a_prime.idx, t.e_dprime.idx);
    if (!prefers(inst, applicant(t.a_prime.idx), mu_prime, without, lambda))
      return false;
    if (!prefers(inst, employer(t.e_dprime.idx), mu_prime, without, lambda))
      return false;
  }
  if (t.a_dprime.is_real() && t.e_prime.is_real()) {
    Matching without = mu_prime;
    without.remove(t.a_dprime.idx, t.e_prime.idx);
    if (!prefers(inst, employer(t.e_prime.idx), mu_prime, without, lambda))
      return false;
    if (!prefers(inst, applicant(t.a_dprime.idx), mu_prime, without, lambda))
      return false;
  }
  return true;
}

namespace detail {

// Visits every potential blocking tuple in deterministic order: a ascending,
// e ascending, then a' / e' / a'' / e'' with the empty agent ordered first.
// Stops early when the visitor returns false.
inline void for_each_potential_tuple(
    const Instance& inst, const Matching& mu,
    const std::function<bool(const PotentialBlockingTuple&)>& visit) {
  auto [free_a, free_e] = free_agents(inst, mu);

  for (int a = 0; a < inst.n; ++a) {
    bool a_has_room =
        static_cast<int>(mu.fwd[a].size()) < inst.quota_applicant[a];
    for (int e = 0; e < inst.m; ++e) {
      if (mu.has(a, e)) continue;
      bool e_has_room =
          static_cast<int>(mu.bwd[e].size()) < inst.quota_employer[e];

      std::vector<Slot> a_primes;
      if (e_has_room) a_primes.push_back(Slot::gamma());
      for (int ap : mu.bwd[e]) a_primes.push_back(Slot::of(ap));

      std::vector<Slot> e_primes;
      if (a_has_room) e_primes.push_back(Slot::gamma());
      for (int ep : mu.fwd[a]) e_primes.push_back(Slot::of(ep));

      for (const Slot& a_prime : a_primes) {
        for (const Slot& e_prime : e_primes) {
          std::vector<Slot> a_dprimes{Slot::gamma()};
          if (e_prime.is_real()) {
            std::vector<int> pool = free_a;
            if (a_prime.is_real() &&
                !std::binary_search(pool.begin(), pool.end(), a_prime.idx))
              pool.insert(std::upper_bound(pool.begin(), pool.end(),
                                           a_prime.idx),
                          a_prime.idx);
            for (int cand : pool)
              if (!mu.has(cand, e_prime.idx))
                a_dprimes.push_back(Slot::of(cand));
          }
          std::vector<Slot> e_dprimes{Slot::gamma()};
          if (a_prime.is_real()) {
            std::vector<int> pool = free_e;
            if (e_prime.is_real() &&
                !std::binary_search(pool.begin(), pool.end(), e_prime.idx))
              pool.insert(std::upper_bound(pool.begin(), pool.end(),
                                           e_prime.idx),
                          e_prime.idx);
            for (int cand : pool)
              if (!mu.has(a_prime.idx, cand))
                e_dprimes.push_back(Slot::of(cand));
          }
          for (const Slot& a_dprime : a_dprimes) {
            bool pair_a = a_prime.is_real() && a_dprime == a_prime;
            for (const Slot& e_dprime : e_dprimes) {
              bool pair_e = e_prime.is_real() && e_dprime == e_prime;
              if (pair_a != pair_e) continue;
              PotentialBlockingTuple t{a,       a_prime, a_dprime,
                                       e,       e_prime, e_dprime};
              if (!visit(t)) return;
            }
          }
        }
      }
    }
  }
}

}  // namespace detail

// Every tuple satisfying the definition, each exactly once, in enumeration
// order.
inline std::vector<PotentialBlockingTuple> enumerate_potential_tuples(
    const Instance& inst, const Matching& mu) {
  std::vector<PotentialBlockingTuple> out;
  detail::for_each_potential_tuple(inst, mu,
                                   [&](const PotentialBlockingTuple& t) {
                                     out.push_back(t);
                                     return true;
                                   });
  return out;
}

// First blocking tuple in enumeration order; absent means stable.
inline std::optional<PotentialBlockingTuple> find_blocking_tuple(
    const Instance& inst, const Matching& mu, const Lambda& lambda) {
  std::optional<PotentialBlockingTuple> found;
  detail::for_each_potential_tuple(
      inst, mu, [&](const PotentialBlockingTuple& t) {
        if (detail::blocks_fast(inst, mu, t, lambda)) {
          found = t;
          return false;
        }
        return true;
      });
  return found;
}

inline bool is_stable(const Instance& inst, const Matching& mu,
                      const Lambda& lambda) {
  return !find_blocking_tuple(inst, mu, lambda).has_value();
}

inline json tuple_to_json(const Instance& inst,
                          const PotentialBlockingTuple& t) {
  auto a_name = [&](const Slot& s) {
    return s.is_real() ? json(inst.applicant_names[s.idx]) : json(nullptr);
  };
  auto e_name = [&](const Slot& s) {
    return s.is_real() ? json(inst.employer_names[s.idx]) : json(nullptr);
  };
  json doc;
  doc["a"] = inst.applicant_names[t.a];
  doc["a_prime"] = a_name(t.a_prime);
  doc["a_dprime"] = a_name(t.a_dprime);
  doc["e"] = inst.employer_names[t.e];
  doc["e_prime"] = e_name(t.e_prime);
  doc["e_dprime"] = e_name(t.e_dprime);
  return doc;
}

// {"stable", "lambda", "witness", "mu_prime"} verdict report.
inline json verdict_report(const Instance& inst, const Matching& mu,
                           const Lambda& lambda) {
  json doc;
  doc["lambda"] = lambda.to_string();
  auto witness = find_blocking_tuple(inst, mu, lambda);
  doc["stable"] = !witness.has_value();
  if (witness) {
    doc["witness"] = tuple_to_json(inst, *witness);
    doc["mu_prime"] =
        matching_to_json(inst, swapped_matching(inst, mu, *witness));
  } else {
    doc["witness"] = nullptr;
    doc["mu_prime"] = nullptr;
  }
  return doc;
}

}  // namespace dasm

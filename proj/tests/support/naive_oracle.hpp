#pragma once

// Unpruned test oracle: every 6-slot combination over (A u {gamma})^3 x
// (E u {gamma})^3 is filtered through the literal tuple conditions, with no
// enumeration shortcuts. Only usable on tiny markets.

#include <optional>
#include <vector>

#include "dasm/blocking.hpp"
#include "dasm/core.hpp"

namespace dasm::test {

inline std::vector<PotentialBlockingTuple> naive_potential_tuples(
    const Instance& inst, const Matching& mu) {
  std::vector<Slot> a_slots{Slot::gamma()}, e_slots{Slot::gamma()};
  for (int a = 0; a < inst.n; ++a) a_slots.push_back(Slot::of(a));
  for (int e = 0; e < inst.m; ++e) e_slots.push_back(Slot::of(e));

  std::vector<PotentialBlockingTuple> out;
  for (int a = 0; a < inst.n; ++a)
    for (int e = 0; e < inst.m; ++e)
      for (const Slot& ap : a_slots)
        for (const Slot& ep : e_slots)
          for (const Slot& add : a_slots)
            for (const Slot& edd : e_slots) {
              PotentialBlockingTuple t{a, ap, add, e, ep, edd};
              if (is_potential_tuple(inst, mu, t)) out.push_back(t);
            }
  return out;
}

inline std::optional<PotentialBlockingTuple> naive_find_blocking(
    const Instance& inst, const Matching& mu, const Lambda& lambda) {
  for (const auto& t : naive_potential_tuples(inst, mu))
    if (is_blocking(inst, mu, t, lambda)) return t;
  return std::nullopt;
}

}  // namespace dasm::test

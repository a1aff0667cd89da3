#include <catch2/catch_amalgamated.hpp>

#include <algorithm>
#include <set>

#include "dasm/blocking.hpp"
#include "dasm/generator.hpp"
#include "support/fixtures.hpp"
#include "support/naive_oracle.hpp"

using namespace dasm;
using test::pairs_by_name;
using test::priority_trap;

namespace {

const PotentialBlockingTuple kTrapWitness{1, Slot::of(0), Slot::gamma(),
                                          0, Slot::gamma(), Slot::of(1)};

}  // namespace

TEST_CASE("free agents are exactly those below quota", "[blocking]") {
  Instance inst = priority_trap();
  auto [fa0, fe0] = free_agents(inst, Matching(2, 2));
  CHECK(fa0 == std::vector<int>{0, 1});
  CHECK(fe0 == std::vector<int>{0, 1});

  auto [fa1, fe1] = free_agents(inst, pairs_by_name(inst, {{"a1", "e1"}}));
  CHECK(fa1 == std::vector<int>{1});
  CHECK(fe1 == std::vector<int>{1});

  // a zero-quota agent is never free
  Instance zq = test::zero_capacity_trap();
  auto [fa2, fe2] = free_agents(zq, Matching(2, 2));
  CHECK(fe2 == std::vector<int>{0});
}

TEST_CASE("enumeration on the trap fixture contains the witness",
          "[blocking]") {
  Instance inst = priority_trap();
  Matching mu = pairs_by_name(inst, {{"a1", "e1"}});
  auto tuples = enumerate_potential_tuples(inst, mu);
  CHECK(std::find(tuples.begin(), tuples.end(), kTrapWitness) != tuples.end());
  for (const auto& t : tuples) CHECK(is_potential_tuple(inst, mu, t));
}

TEST_CASE("enumeration of an empty market is empty", "[blocking]") {
  Instance inst = validate_instance(RawInstance{});
  CHECK(enumerate_potential_tuples(inst, Matching(0, 0)).empty());
}

TEST_CASE("enumeration matches the unpruned filter", "[blocking]") {
  SplitMix64 rng(31);
  for (int round = 0; round < 40; ++round) {
    Instance inst = test::random_instance(rng, 3, 3, 2);
    Matching mu = test::random_matching(rng, inst);
    auto fast = enumerate_potential_tuples(inst, mu);
    auto naive = test::naive_potential_tuples(inst, mu);
    std::sort(fast.begin(), fast.end(), [](const auto& x, const auto& y) {
      return std::tie(x.a, x.a_prime.idx, x.a_dprime.idx, x.e, x.e_prime.idx,
                      x.e_dprime.idx) <
             std::tie(y.a, y.a_prime.idx, y.a_dprime.idx, y.e, y.e_prime.idx,
                      y.e_dprime.idx);
    });
    std::sort(naive.begin(), naive.end(), [](const auto& x, const auto& y) {
      return std::tie(x.a, x.a_prime.idx, x.a_dprime.idx, x.e, x.e_prime.idx,
                      x.e_dprime.idx) <
             std::tie(y.a, y.a_prime.idx, y.a_dprime.idx, y.e, y.e_prime.idx,
                      y.e_dprime.idx);
    });
    REQUIRE(fast.size() == naive.size());
    CHECK(fast == naive);
  }
}

TEST_CASE("enumeration is duplicate-free and deterministic", "[blocking]") {
  SplitMix64 rng(37);
  for (int round = 0; round < 20; ++round) {
    Instance inst = test::random_instance(rng, 4, 3, 2);
    Matching mu = test::random_matching(rng, inst);
    auto first = enumerate_potential_tuples(inst, mu);
    auto second = enumerate_potential_tuples(inst, mu);
    CHECK(first == second);
    auto key = [](const PotentialBlockingTuple& t) {
      return std::make_tuple(t.a, t.a_prime.idx, t.a_dprime.idx, t.e,
                             t.e_prime.idx, t.e_dprime.idx);
    };
    std::set<std::tuple<int, int, int, int, int, int>> seen;
    for (const auto& t : first) CHECK(seen.insert(key(t)).second);
  }
}

TEST_CASE("swapped matching applies breaks and rematches", "[blocking]") {
  Instance inst = priority_trap();
  Matching mu = pairs_by_name(inst, {{"a1", "e1"}});
  Matching swapped = swapped_matching(inst, mu, kTrapWitness);
  CHECK(swapped == pairs_by_name(inst, {{"a2", "e1"}, {"a1", "e2"}}));

  // all primed slots empty: pure addition
  PotentialBlockingTuple addition{1, Slot::gamma(), Slot::gamma(),
                                  1, Slot::gamma(), Slot::gamma()};
  Matching grown = swapped_matching(inst, mu, addition);
  CHECK(grown == pairs_by_name(inst, {{"a1", "e1"}, {"a2", "e2"}}));

  PotentialBlockingTuple bogus{0, Slot::gamma(), Slot::gamma(),
                               0, Slot::gamma(), Slot::gamma()};
  CHECK_THROWS_AS(swapped_matching(inst, mu, bogus), InvalidTuple);
}

TEST_CASE("swapped matchings of potential tuples are valid matchings",
          "[blocking]") {
  SplitMix64 rng(41);
  int checked = 0;
  while (checked < 1000) {
    Instance inst = test::random_instance(rng);
    Matching mu = test::random_matching(rng, inst);
    auto tuples = enumerate_potential_tuples(inst, mu);
    if (tuples.empty()) continue;
    for (std::size_t i = 0; i < tuples.size() && checked < 1000;
         i += 1 + rng.below(3), ++checked) {
      Matching swapped = swapped_matching(inst, mu, tuples[i]);
      REQUIRE(is_valid_matching(inst, swapped));
    }
  }
}

TEST_CASE("trap fixture blocking verdicts", "[blocking]") {
  Instance inst = priority_trap();
  Matching mu = pairs_by_name(inst, {{"a1", "e1"}});
  CHECK(is_blocking(inst, mu, kTrapWitness, Lambda::one()));
  CHECK(is_blocking(inst, mu, kTrapWitness, Lambda::epsilon()));
  CHECK_FALSE(is_blocking(inst, mu, kTrapWitness, Lambda::zero()));

  auto witness = find_blocking_tuple(inst, mu, Lambda::one());
  REQUIRE(witness.has_value());
  CHECK(*witness == kTrapWitness);
  CHECK_FALSE(is_stable(inst, mu, Lambda::one()));

  Matching good = pairs_by_name(inst, {{"a2", "e1"}, {"a1", "e2"}});
  for (const Lambda& lam : {Lambda::zero(), Lambda::rational(1, 2),
                            Lambda::one(), Lambda::epsilon()}) {
    CHECK(is_stable(inst, good, lam));
  }
}

TEST_CASE("a disliked pivot employer cannot block", "[blocking]") {
  // condition 1 fails whenever the applicant dislikes the new employer
  SplitMix64 rng(47);
  for (int round = 0; round < 30; ++round) {
    Instance inst = test::random_instance(rng, 3, 3, 2);
    Matching mu = test::random_matching(rng, inst);
    for (const auto& t : enumerate_potential_tuples(inst, mu)) {
      if (inst.pr_a(t.a, t.e) == 0)
        CHECK_FALSE(is_blocking(inst, mu, t, Lambda::one()));
    }
  }
}

TEST_CASE("weight sensitivity: the same tuple blocks at one, not at epsilon",
          "[blocking]") {
  // pivot employer trades (2,0) down to (1,2): gains at weight 1, loses
  // lexicographically. RawInstance built so that e0 drops a liked own match
  // for a disliked one while two affiliate placements appear.
  RawInstance raw;
  raw.applicants = {"x", "y"};
  raw.employers = {"e", "f"};
  raw.affiliation["e"] = {"x", "y"};
  raw.affiliation["f"] = {};
  raw.quota = {{"x", 1}, {"y", 1}, {"e", 1}, {"f", 1}};
  raw.pref_applicant["x"] = {{"e", 1}, {"f", 1}};
  raw.pref_applicant["y"] = {{"e", 1}, {"f", 0}};
  raw.pref_employer_own["e"] = {{"x", 1}, {"y", 0}};
  raw.pref_employer_own["f"] = {{"x", 1}, {"y", 0}};
  raw.pref_employer_affiliate["e"]["x"] = {{"e", 0}, {"f", 1}};
  raw.pref_employer_affiliate["e"]["y"] = {{"e", 1}, {"f", 0}};
  Instance inst = validate_instance(raw);
  Matching mu = pairs_by_name(inst, {{"x", "e"}});
  // y and e match; x moves to f: e goes from (1,0) to (0,2)... compute both
  PotentialBlockingTuple t{1, Slot::of(0), Slot::gamma(),
                           0, Slot::gamma(), Slot::of(1)};
  REQUIRE(is_potential_tuple(inst, mu, t));
  EmployerScore before = valuation_employer(inst, mu, 0);
  EmployerScore after =
      valuation_employer(inst, swapped_matching(inst, mu, t), 0);
  CHECK(before.own_liked > after.own_liked);
  CHECK(after.own_liked + after.affiliate_liked >
        before.own_liked + before.affiliate_liked);
  CHECK(is_blocking(inst, mu, t, Lambda::one()));
  CHECK_FALSE(is_blocking(inst, mu, t, Lambda::epsilon()));
}

TEST_CASE("fast path and reference path agree tuple by tuple", "[blocking]") {
  SplitMix64 rng(53);
  const Lambda lambdas[4] = {Lambda::zero(), Lambda::rational(1, 2),
                             Lambda::one(), Lambda::epsilon()};
  for (int round = 0; round < 60; ++round) {
    Instance inst = test::random_instance(rng, 4, 3, 2);
    Matching mu = test::random_matching(rng, inst);
    for (const auto& t : enumerate_potential_tuples(inst, mu))
      for (const Lambda& lam : lambdas)
        CHECK(detail::blocks_fast(inst, mu, t, lam) ==
              is_blocking(inst, mu, t, lam));
  }
}

TEST_CASE("verifier agrees with the unpruned oracle", "[blocking]") {
  SplitMix64 rng(59);
  const Lambda lambdas[3] = {Lambda::zero(), Lambda::one(), Lambda::epsilon()};
  for (int round = 0; round < 40; ++round) {
    Instance inst = test::random_instance(rng, 3, 3, 2);
    Matching mu = test::random_matching(rng, inst);
    for (const Lambda& lam : lambdas) {
      auto fast = find_blocking_tuple(inst, mu, lam);
      auto naive = test::naive_find_blocking(inst, mu, lam);
      CHECK(fast.has_value() == naive.has_value());
      if (fast) {
        // witness soundness
        CHECK(is_blocking(inst, mu, *fast, lam));
        CHECK(is_potential_tuple(inst, mu, *fast));
      }
    }
  }
}

TEST_CASE("stability on degenerate markets", "[blocking]") {
  Instance empty = validate_instance(RawInstance{});
  CHECK(is_stable(empty, Matching(0, 0), Lambda::one()));

  // mutual interest with spare capacity blocks the empty matching
  Instance inst = priority_trap();
  auto witness = find_blocking_tuple(inst, Matching(2, 2), Lambda::one());
  CHECK(witness.has_value());
}

TEST_CASE("verdict report shape", "[blocking]") {
  Instance inst = priority_trap();
  Matching mu = pairs_by_name(inst, {{"a1", "e1"}});
  json verdict = verdict_report(inst, mu, Lambda::one());
  CHECK(verdict["stable"] == false);
  CHECK(verdict["lambda"] == "1");
  CHECK(verdict["witness"]["a"] == "a2");
  CHECK(verdict["witness"]["a_prime"] == "a1");
  CHECK(verdict["witness"]["a_dprime"].is_null());
  CHECK(verdict["witness"]["e"] == "e1");
  CHECK(verdict["witness"]["e_prime"].is_null());
  CHECK(verdict["witness"]["e_dprime"] == "e2");
  CHECK(verdict["mu_prime"]["matches"].size() == 2);

  json stable = verdict_report(
      inst, pairs_by_name(inst, {{"a2", "e1"}, {"a1", "e2"}}), Lambda::one());
  CHECK(stable["stable"] == true);
  CHECK(stable["witness"].is_null());
}

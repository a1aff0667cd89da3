#pragma once

// Uniform random instance generator. Each preference list is an independent
// uniform random permutation of its domain with the top ceil(t*L) entries
// approved. Deterministic in the seed via a self-contained PRNG so fixtures
// reproduce across platforms.

#include <cmath>
#include <cstdint>
#include <numeric>
#include <string>
#include <vector>

#include <json.hpp>

#include "dasm/core.hpp"
#include "dasm/io.hpp"

namespace dasm {

inline constexpr const char* kPrngId = "splitmix64-fisher-yates-v1";

// splitmix64: public-domain 64-bit mixer (Vigna), one 64-bit word of state.
struct SplitMix64 {
  std::uint64_t state = 0;

  explicit SplitMix64(std::uint64_t seed) : state(seed) {}

  std::uint64_t next() {
    std::uint64_t z = (state += 0x9E3779B97F4A7C15ULL);
    z = (z ^ (z >> 30)) * 0xBF58476D1CE4E5B9ULL;
    z = (z ^ (z >> 27)) * 0x94D049BB133111EBULL;
    return z ^ (z >> 31);
  }

  // Uniform in [0, bound) by rejection, bias-free.
  std::uint64_t below(std::uint64_t bound) {
    std::uint64_t threshold = (0 - bound) % bound;
    for (;;) {
      std::uint64_t r = next();
      if (r >= threshold) return r % bound;
    }
  }
};

struct GenParams {
  int m = 0;       // employers
  int ratio = 0;   // affiliates per employer; n = m * ratio
  int q = 0;       // applicant capacity; employer capacity = q * ratio
  double t = 0.5;  // approval threshold in (0,1)
  std::uint64_t seed = 0;

  void check() const {
    if (m < 0 || ratio < 0 || q < 0)
      throw ParamOutOfRange("m, ratio and q must be nonnegative");
    if (!(t > 0.0) || !(t < 1.0))
      throw ParamOutOfRange("threshold must lie strictly between 0 and 1");
  }
};

// ceil(t*L) with a nudge against binary rounding of exact multiples.
inline int approvals_for(double t, int len) {
  if (len <= 0) return 0;
  int k = static_cast<int>(std::ceil(t * static_cast<double>(len) - 1e-9));
  if (k < 0) k = 0;
  if (k > len) k = len;
  return k;
}

namespace detail {

// Random permutation of 0..len-1; the first k entries are the approvals.
inline void approve_top(SplitMix64& rng, double t, int len,
                        std::uint8_t* row) {
  std::vector<int> perm(len);
  std::iota(perm.begin(), perm.end(), 0);
  for (int i = len - 1; i > 0; --i) {
    int j = static_cast<int>(rng.below(static_cast<std::uint64_t>(i) + 1));
    std::swap(perm[i], perm[j]);
  }
  int k = approvals_for(t, len);
  for (int i = 0; i < k; ++i) row[perm[i]] = 1;
}

}  // namespace detail

inline Instance generate(const GenParams& p) {
  p.check();
  Instance inst;
  inst.m = p.m;
  inst.n = p.m * p.ratio;
  inst.applicant_names.resize(inst.n);
  inst.employer_names.resize(inst.m);
  for (int a = 0; a < inst.n; ++a)
    inst.applicant_names[a] = "a" + std::to_string(a);
  for (int e = 0; e < inst.m; ++e)
    inst.employer_names[e] = "e" + std::to_string(e);

  // Consecutive blocks of `ratio` applicants per employer.
  inst.aff.assign(inst.m, {});
  inst.owner.assign(inst.n, -1);
  for (int e = 0; e < inst.m; ++e)
    for (int i = 0; i < p.ratio; ++i) {
      int a = e * p.ratio + i;
      inst.aff[e].push_back(a);
      inst.owner[a] = e;
    }

  inst.quota_applicant.assign(inst.n, p.q);
  inst.quota_employer.assign(inst.m, p.q * p.ratio);

  inst.pref_applicant.assign(static_cast<std::size_t>(inst.n) * inst.m, 0);
  inst.pref_employer_own.assign(static_cast<std::size_t>(inst.m) * inst.n, 0);
  inst.pref_employer_affiliate.assign(
      static_cast<std::size_t>(inst.n) * inst.m, 0);

  SplitMix64 rng(p.seed);
  for (int a = 0; a < inst.n; ++a)
    detail::approve_top(rng, p.t, inst.m, &inst.pref_applicant[a * inst.m]);
  for (int e = 0; e < inst.m; ++e)
    detail::approve_top(rng, p.t, inst.n, &inst.pref_employer_own[e * inst.n]);
  for (int e = 0; e < inst.m; ++e)
    for (int a : inst.aff[e])
      detail::approve_top(rng, p.t, inst.m,
                          &inst.pref_employer_affiliate[a * inst.m]);
  return inst;
}

inline json gen_meta(const GenParams& p) {
  return json{{"params",
               json{{"m", p.m}, {"ratio", p.ratio}, {"q", p.q}, {"t", p.t}}},
              {"seed", p.seed},
              {"prng", kPrngId}};
}

}  // namespace dasm

#pragma once

// Core market model for dichotomous affiliate matching: agents, quotas,
// preference tables, matchings, and the weighted valuation semantics.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace dasm {

struct DasmError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct DisjointCoverViolation : DasmError {
  using DasmError::DasmError;
};
struct IncompletePreferences : DasmError {
  using DasmError::DasmError;
};
struct NegativeQuota : DasmError {
  using DasmError::DasmError;
};
struct UnknownAgentReference : DasmError {
  using DasmError::DasmError;
};
struct DuplicateAgentName : DasmError {
  using DasmError::DasmError;
};
struct UnknownAgent : DasmError {
  using DasmError::DasmError;
};
struct InvalidTuple : DasmError {
  using DasmError::DasmError;
};
struct InstanceTooLarge : DasmError {
  using DasmError::DasmError;
};
struct ParamOutOfRange : DasmError {
  using DasmError::DasmError;
};
struct DimensionMismatch : DasmError {
  using DasmError::DasmError;
};
struct IoFailure : DasmError {
  using DasmError::DasmError;
};
struct UnknownEdge : DasmError {
  using DasmError::DasmError;
};

enum class Side { Applicant, Employer };

struct AgentId {
  Side side;
  int index;

  friend bool operator==(const AgentId&, const AgentId&) = default;
};

inline AgentId applicant(int i) { return {Side::Applicant, i}; }
inline AgentId employer(int j) { return {Side::Employer, j}; }

// Valuation weight: an exact rational in [0,1] or the symbolic infinitesimal
// epsilon (lexicographic regime). Never a float; stability verdicts are
// equality-sensitive.
struct Lambda {
  enum class Kind { Rational, Epsilon };
  Kind kind = Kind::Rational;
  std::int64_t num = 1;
  std::int64_t den = 1;

  static Lambda rational(std::int64_t p, std::int64_t q) {
    if (q < 1 || p < 0 || p > q)
      throw ParamOutOfRange("lambda must be a rational in [0,1]");
    return Lambda{Kind::Rational, p, q};
  }
  static Lambda zero() { return rational(0, 1); }
  static Lambda one() { return rational(1, 1); }
  static Lambda epsilon() { return Lambda{Kind::Epsilon, 0, 1}; }

  bool is_epsilon() const { return kind == Kind::Epsilon; }
  bool is_zero() const { return kind == Kind::Rational && num == 0; }

  std::string to_string() const {
    if (is_epsilon()) return "eps";
    if (num == 0) return "0";
    if (num == den) return "1";
    return std::to_string(num) + "/" + std::to_string(den);
  }

  // Accepts "0", "1", "eps" or "p/q".
  static Lambda parse(const std::string& text) {
    if (text == "eps" || text == "epsilon") return epsilon();
    auto slash = text.find('/');
    try {
      if (slash == std::string::npos) {
        std::size_t used = 0;
        long long v = std::stoll(text, &used);
        if (used != text.size()) throw ParamOutOfRange("bad lambda: " + text);
        return rational(v, 1);
      }
      std::size_t used_p = 0, used_q = 0;
      long long p = std::stoll(text.substr(0, slash), &used_p);
      long long q = std::stoll(text.substr(slash + 1), &used_q);
      if (used_p != slash || used_q != text.size() - slash - 1)
        throw ParamOutOfRange("bad lambda: " + text);
      return rational(p, q);
    } catch (const std::invalid_argument&) {
      throw ParamOutOfRange("bad lambda: " + text);
    } catch (const std::out_of_range&) {
      throw ParamOutOfRange("bad lambda: " + text);
    }
  }
};

// Employer valuation kept as the (own, affiliate) count pair so a single
// valuation pass serves every lambda.
struct EmployerScore {
  std::int64_t own_liked = 0;
  std::int64_t affiliate_liked = 0;

  friend bool operator==(const EmployerScore&, const EmployerScore&) = default;
};

// Three-way comparison of employer scores under a weight. Rational p/q
// compares own*q + p*aff exactly; epsilon compares lexicographically.
inline int compare_scores(const EmployerScore& lhs, const EmployerScore& rhs,
                          const Lambda& lambda) {
  if (lambda.is_epsilon()) {
    if (lhs.own_liked != rhs.own_liked)
      return lhs.own_liked < rhs.own_liked ? -1 : 1;
    if (lhs.affiliate_liked != rhs.affiliate_liked)
      return lhs.affiliate_liked < rhs.affiliate_liked ? -1 : 1;
    return 0;
  }
  __int128 a = static_cast<__int128>(lhs.own_liked) * lambda.den +
               static_cast<__int128>(lambda.num) * lhs.affiliate_liked;
  __int128 b = static_cast<__int128>(rhs.own_liked) * lambda.den +
               static_cast<__int128>(lambda.num) * rhs.affiliate_liked;
  if (a != b) return a < b ? -1 : 1;
  return 0;
}

// The full market: agent sets, affiliation cover, quotas, and the three
// dichotomous preference tables. Immutable after validation; all operations
// on it are pure.
struct Instance {
  int n = 0;  // applicants
  int m = 0;  // employers

  std::vector<std::string> applicant_names;
  std::vector<std::string> employer_names;

  // aff: employer -> sorted applicant indices; owner: applicant -> employer.
  std::vector<std::vector<int>> aff;
  std::vector<int> owner;

  std::vector<int> quota_applicant;
  std::vector<int> quota_employer;

  // pr_a(e), pr_e^e(a), and pr_e^a(e') flattened to n*m / m*n / n*m tables.
  // The affiliate table is indexed by applicant because the cover assigns
  // each applicant exactly one owning employer.
  std::vector<std::uint8_t> pref_applicant;           // [a*m + e]
  std::vector<std::uint8_t> pref_employer_own;        // [e*n + a]
  std::vector<std::uint8_t> pref_employer_affiliate;  // [a*m + e]

  int pr_a(int a, int e) const { return pref_applicant[a * m + e]; }
  int pr_e_own(int e, int a) const { return pref_employer_own[e * n + a]; }
  // Preference of aff_owner(a) about a being matched with e.
  int pr_e_aff(int a, int e) const { return pref_employer_affiliate[a * m + e]; }

  int aff_owner(int a) const { return owner[a]; }
  bool is_affiliate(int a, int e) const { return owner[a] == e; }

  bool structurally_equal(const Instance& o) const {
    return n == o.n && m == o.m && applicant_names == o.applicant_names &&
           employer_names == o.employer_names && aff == o.aff &&
           quota_applicant == o.quota_applicant &&
           quota_employer == o.quota_employer &&
           pref_applicant == o.pref_applicant &&
           pref_employer_own == o.pref_employer_own &&
           pref_employer_affiliate == o.pref_employer_affiliate;
  }
};

// Bidirectionally consistent many-to-many assignment. Partner lists are kept
// sorted; duplicates are representable so that validity checking can reject
// them.
struct Matching {
  std::vector<std::vector<int>> fwd;  // applicant -> employers
  std::vector<std::vector<int>> bwd;  // employer -> applicants

  Matching() = default;
  Matching(int n, int m) : fwd(n), bwd(m) {}

  static Matching from_pairs(int n, int m,
                             const std::vector<std::pair<int, int>>& pairs) {
    Matching mu(n, m);
    for (auto [a, e] : pairs) {
      if (a < 0 || a >= n || e < 0 || e >= m)
        throw UnknownAgentReference("matching pair out of range");
      mu.fwd[a].push_back(e);
      mu.bwd[e].push_back(a);
    }
    mu.normalize();
    return mu;
  }

  void normalize() {
    for (auto& v : fwd) std::sort(v.begin(), v.end());
    for (auto& v : bwd) std::sort(v.begin(), v.end());
  }

  bool has(int a, int e) const {
    const auto& v = fwd[a];
    return std::binary_search(v.begin(), v.end(), e);
  }

  void add(int a, int e) {
    auto& f = fwd[a];
    f.insert(std::upper_bound(f.begin(), f.end(), e), e);
    auto& b = bwd[e];
    b.insert(std::upper_bound(b.begin(), b.end(), a), a);
  }

  void remove(int a, int e) {
    auto& f = fwd[a];
    auto it = std::find(f.begin(), f.end(), e);
    if (it != f.end()) f.erase(it);
    auto& b = bwd[e];
    auto jt = std::find(b.begin(), b.end(), a);
    if (jt != b.end()) b.erase(jt);
  }

  std::size_t size() const {
    std::size_t total = 0;
    for (const auto& v : fwd) total += v.size();
    return total;
  }

  std::vector<std::pair<int, int>> pairs() const {
    std::vector<std::pair<int, int>> out;
    for (int a = 0; a < static_cast<int>(fwd.size()); ++a)
      for (int e : fwd[a]) out.emplace_back(a, e);
    return out;
  }

  friend bool operator==(const Matching&, const Matching&) = default;
};

inline void check_applicant(const Instance& inst, int a) {
  if (a < 0 || a >= inst.n) throw UnknownAgent("unknown applicant index");
}

inline void check_employer(const Instance& inst, int e) {
  if (e < 0 || e >= inst.m) throw UnknownAgent("unknown employer index");
}

inline bool is_valid_matching(const Instance& inst, const Matching& mu) {
  if (static_cast<int>(mu.fwd.size()) != inst.n ||
      static_cast<int>(mu.bwd.size()) != inst.m)
    return false;
  for (int a = 0; a < inst.n; ++a) {
    const auto& v = mu.fwd[a];
    if (static_cast<int>(v.size()) > inst.quota_applicant[a]) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= inst.m) return false;
      if (i > 0 && v[i] == v[i - 1]) return false;  // duplicate pair
    }
  }
  for (int e = 0; e < inst.m; ++e) {
    const auto& v = mu.bwd[e];
    if (static_cast<int>(v.size()) > inst.quota_employer[e]) return false;
    for (std::size_t i = 0; i < v.size(); ++i) {
      if (v[i] < 0 || v[i] >= inst.n) return false;
      if (i > 0 && v[i] == v[i - 1]) return false;
    }
  }
  // forward/backward agreement
  for (int a = 0; a < inst.n; ++a)
    for (int e : mu.fwd[a]) {
      const auto& b = mu.bwd[e];
      if (!std::binary_search(b.begin(), b.end(), a)) return false;
    }
  for (int e = 0; e < inst.m; ++e)
    for (int a : mu.bwd[e]) {
      const auto& f = mu.fwd[a];
      if (!std::binary_search(f.begin(), f.end(), e)) return false;
    }
  return true;
}

// val_a: number of a's matches that a likes.
inline std::int64_t valuation_applicant(const Instance& inst,
                                        const Matching& mu, int a) {
  check_applicant(inst, a);
  std::int64_t total = 0;
  for (int e : mu.fwd[a]) total += inst.pr_a(a, e);
  return total;
}

// val_e as the (own, affiliate) pair; the weighted value own + lambda*aff is
// realized only through score comparison.
inline EmployerScore valuation_employer(const Instance& inst,
                                        const Matching& mu, int e) {
  check_employer(inst, e);
  EmployerScore s;
  for (int a : mu.bwd[e]) s.own_liked += inst.pr_e_own(e, a);
  for (int a : inst.aff[e])
    for (int e_star : mu.fwd[a]) s.affiliate_liked += inst.pr_e_aff(a, e_star);
  return s;
}

// Strict preference of mu1 over mu2. Applicants ignore lambda.
inline bool prefers(const Instance& inst, AgentId agent, const Matching& mu1,
                    const Matching& mu2, const Lambda& lambda) {
  if (agent.side == Side::Applicant) {
    return valuation_applicant(inst, mu1, agent.index) >
           valuation_applicant(inst, mu2, agent.index);
  }
  EmployerScore s1 = valuation_employer(inst, mu1, agent.index);
  EmployerScore s2 = valuation_employer(inst, mu2, agent.index);
  return compare_scores(s1, s2, lambda) > 0;
}

}  // namespace dasm

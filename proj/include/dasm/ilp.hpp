#pragma once

// Integer-program encoding of stability at weight 1. Binary variables z_{e,a}
// say whether a pair is matched; per-agent residual indicators u_v are forced
// to 1 whenever v sits strictly below quota and let single rows express
// "matched, or somebody is full" escapes exactly. Feasible points project
// onto exactly the stable matchings.

#include <cstdint>
#include <sstream>
#include <string>
#include <vector>

#include "dasm/blocking.hpp"
#include "dasm/core.hpp"

namespace dasm {

struct VarRef {
  enum class Kind { Z, ResidualApplicant, ResidualEmployer, One };
  Kind kind = Kind::One;
  int e = -1;
  int a = -1;

  static VarRef z(int e, int a) { return {Kind::Z, e, a}; }
  static VarRef residual_a(int a) { return {Kind::ResidualApplicant, -1, a}; }
  static VarRef residual_e(int e) { return {Kind::ResidualEmployer, e, -1}; }
  static VarRef one() { return {}; }

  std::string name() const {
    switch (kind) {
      case Kind::Z:
        return "z_e" + std::to_string(e) + "_a" + std::to_string(a);
      case Kind::ResidualApplicant:
        return "u_a" + std::to_string(a);
      case Kind::ResidualEmployer:
        return "u_e" + std::to_string(e);
      case Kind::One:
        return "1";
    }
    return "?";
  }

  friend bool operator==(const VarRef&, const VarRef&) = default;
};

struct Term {
  std::int64_t coef = 0;
  VarRef var;
};

enum class Sense { LE, GE };

enum class Family {
  Binary,
  EmployerQuota,
  ApplicantQuota,
  CapacityLink,
  Stability1,
  Stability2,
  Stability3,
  Stability4,
  Stability5,
  Stability6,
  Stability7,
  Stability8,
  Stability9,
};

inline const char* family_name(Family f) {
  switch (f) {
    case Family::Binary: return "binary";
    case Family::EmployerQuota: return "employer_quota";
    case Family::ApplicantQuota: return "applicant_quota";
    case Family::CapacityLink: return "capacity_link";
    case Family::Stability1: return "stability1";
    case Family::Stability2: return "stability2";
    case Family::Stability3: return "stability3";
    case Family::Stability4: return "stability4";
    case Family::Stability5: return "stability5";
    case Family::Stability6: return "stability6";
    case Family::Stability7: return "stability7";
    case Family::Stability8: return "stability8";
    case Family::Stability9: return "stability9";
  }
  return "?";
}

struct LinearConstraint {
  std::vector<Term> terms;
  Sense sense = Sense::GE;
  std::int64_t rhs = 0;
  Family family = Family::Stability1;
  int ordinal = 0;
  // Generating tuple, for stability families.
  PotentialBlockingTuple provenance;
  bool has_provenance = false;

  std::string name() const {
    return std::string(family_name(family)) + "_" + std::to_string(ordinal);
  }
};

struct IlpModel {
  int n = 0;
  int m = 0;
  std::vector<int> quota_applicant;
  std::vector<int> quota_employer;
  std::vector<LinearConstraint> constraints;

  std::vector<VarRef> variables() const {
    std::vector<VarRef> vars;
    for (int e = 0; e < m; ++e)
      for (int a = 0; a < n; ++a) vars.push_back(VarRef::z(e, a));
    for (int a = 0; a < n; ++a) vars.push_back(VarRef::residual_a(a));
    for (int e = 0; e < m; ++e) vars.push_back(VarRef::residual_e(e));
    return vars;
  }
};

namespace detail {

struct ModelBuilder {
  const Instance& inst;
  IlpModel model;
  int ordinals[16] = {};

  explicit ModelBuilder(const Instance& instance) : inst(instance) {
    model.n = inst.n;
    model.m = inst.m;
    model.quota_applicant = inst.quota_applicant;
    model.quota_employer = inst.quota_employer;
  }

  void push(Family family, std::vector<Term> terms, Sense sense,
            std::int64_t rhs) {
    LinearConstraint c;
    c.terms = std::move(terms);
    c.sense = sense;
    c.rhs = rhs;
    c.family = family;
    c.ordinal = ordinals[static_cast<int>(family)]++;
    model.constraints.push_back(std::move(c));
  }

  void push_stability(Family family, std::vector<Term> terms,
                      PotentialBlockingTuple provenance) {
    LinearConstraint c;
    c.terms = std::move(terms);
    c.sense = Sense::GE;
    c.rhs = 1;
    c.family = family;
    c.ordinal = ordinals[static_cast<int>(family)]++;
    c.provenance = provenance;
    c.has_provenance = true;
    model.constraints.push_back(std::move(c));
  }

  // Kept in the big-M shape: coef*bracket-terms plus one capacity sum.
  void push_stability_sum(Family family, std::int64_t big,
                          std::vector<Term> bracket, std::int64_t ones,
                          std::vector<Term> sum,
                          PotentialBlockingTuple provenance) {
    LinearConstraint c;
    for (Term& t : bracket) {
      t.coef *= big;
      c.terms.push_back(t);
    }
    if (ones != 0) c.terms.push_back({big * ones, VarRef::one()});
    for (Term& t : sum) c.terms.push_back(t);
    c.sense = Sense::GE;
    c.rhs = big;
    c.family = family;
    c.ordinal = ordinals[static_cast<int>(family)]++;
    c.provenance = provenance;
    c.has_provenance = true;
    model.constraints.push_back(std::move(c));
  }

  std::vector<Term> employer_fill(int e) const {
    std::vector<Term> sum;
    for (int a = 0; a < inst.n; ++a) sum.push_back({1, VarRef::z(e, a)});
    return sum;
  }
  std::vector<Term> applicant_fill(int a) const {
    std::vector<Term> sum;
    for (int e = 0; e < inst.m; ++e) sum.push_back({1, VarRef::z(e, a)});
    return sum;
  }

  // Exact employer-preference margin of the swap described by the tuple, at
  // weight 1; the tuple blocks for the employer iff this is >= 1.
  int employer_margin(int a, int e, int a_prime, int e_prime, int a_dprime,
                      int e_dprime) const {
    int delta = inst.pr_e_own(e, a);
    if (a_prime >= 0) delta -= inst.pr_e_own(e, a_prime);
    if (inst.is_affiliate(a, e)) {
      delta += inst.pr_e_aff(a, e);
      if (e_prime >= 0) delta -= inst.pr_e_aff(a, e_prime);
    }
    if (a_prime >= 0 && inst.is_affiliate(a_prime, e)) {
      delta -= inst.pr_e_aff(a_prime, e);
      if (e_dprime >= 0) delta += inst.pr_e_aff(a_prime, e_dprime);
    }
    if (a_dprime >= 0 && a_dprime != a_prime &&
        inst.is_affiliate(a_dprime, e))
      delta += inst.pr_e_aff(a_dprime, e_prime);
    return delta;
  }

  // Both sides want the formed pair (x, y), at weight 1.
  bool pair_wanted(int x, int y) const {
    if (inst.pr_a(x, y) != 1) return false;
    int gain = inst.pr_e_own(y, x);
    if (inst.is_affiliate(x, y)) gain += inst.pr_e_aff(x, y);
    return gain >= 1;
  }

  static Slot real(int idx) { return Slot::of(idx); }

  void build() {
    for (int e = 0; e < inst.m; ++e)
      if (inst.n > 0)
        push(Family::EmployerQuota, employer_fill(e), Sense::LE,
             inst.quota_employer[e]);
    for (int a = 0; a < inst.n; ++a)
      if (inst.m > 0)
        push(Family::ApplicantQuota, applicant_fill(a), Sense::LE,
             inst.quota_applicant[a]);

    // u_v is forced to 1 whenever v is below quota.
    for (int a = 0; a < inst.n; ++a) {
      auto terms = applicant_fill(a);
      terms.push_back({inst.quota_applicant[a], VarRef::residual_a(a)});
      push(Family::CapacityLink, std::move(terms), Sense::GE,
           inst.quota_applicant[a]);
    }
    for (int e = 0; e < inst.m; ++e) {
      auto terms = employer_fill(e);
      terms.push_back({inst.quota_employer[e], VarRef::residual_e(e)});
      push(Family::CapacityLink, std::move(terms), Sense::GE,
           inst.quota_employer[e]);
    }

    family1();
    family2();
    family3();
    family4();
    family5();
    family6();
    family7();
    family8();
    family9();
  }

  // Both pivot agents undermatched, no breaks.
  void family1() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        if (employer_margin(a, e, -1, -1, -1, -1) < 1) continue;
        push_stability(
            Family::Stability1,
            {{1, VarRef::z(e, a)},
             {-1, VarRef::residual_e(e)},
             {-1, VarRef::residual_a(a)},
             {2, VarRef::one()}},
            PotentialBlockingTuple{a, Slot::gamma(), Slot::gamma(), e,
                                   Slot::gamma(), Slot::gamma()});
      }
  }

  // e undermatched; a drops e'.
  void family2() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ep = 0; ep < inst.m; ++ep) {
          if (ep == e || inst.pr_a(a, ep) != 0) continue;
          if (employer_margin(a, e, -1, ep, -1, -1) < 1) continue;
          push_stability_sum(
              Family::Stability2, inst.quota_employer[e],
              {{1, VarRef::z(e, a)}, {-1, VarRef::z(ep, a)}}, 1,
              employer_fill(e),
              PotentialBlockingTuple{a, Slot::gamma(), Slot::gamma(), e,
                                     real(ep), Slot::gamma()});
        }
      }
  }

  // a undermatched; e drops a'.
  void family3() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ap = 0; ap < inst.n; ++ap) {
          if (ap == a) continue;
          if (employer_margin(a, e, ap, -1, -1, -1) < 1) continue;
          push_stability_sum(
              Family::Stability3, inst.quota_applicant[a],
              {{1, VarRef::z(e, a)}, {-1, VarRef::z(e, ap)}}, 1,
              applicant_fill(a),
              PotentialBlockingTuple{a, real(ap), Slot::gamma(), e,
                                     Slot::gamma(), Slot::gamma()});
        }
      }
  }

  // Mutual drop, nobody rematches.
  void family4() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ap = 0; ap < inst.n; ++ap) {
          if (ap == a) continue;
          for (int ep = 0; ep < inst.m; ++ep) {
            if (ep == e || inst.pr_a(a, ep) != 0) continue;
            if (employer_margin(a, e, ap, ep, -1, -1) < 1) continue;
            push_stability(
                Family::Stability4,
                {{1, VarRef::z(e, a)},
                 {-1, VarRef::z(e, ap)},
                 {-1, VarRef::z(ep, a)},
                 {2, VarRef::one()}},
                PotentialBlockingTuple{a, real(ap), Slot::gamma(), e,
                                       real(ep), Slot::gamma()});
          }
        }
      }
  }

  // Mutual drop; a' rematches with undermatched e''.
  void family5() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ap = 0; ap < inst.n; ++ap) {
          if (ap == a) continue;
          for (int ep = 0; ep < inst.m; ++ep) {
            if (ep == e || inst.pr_a(a, ep) != 0) continue;
            for (int edd = 0; edd < inst.m; ++edd) {
              if (edd == e || edd == ep) continue;
              if (!pair_wanted(ap, edd)) continue;
              if (employer_margin(a, e, ap, ep, -1, edd) < 1) continue;
              push_stability_sum(
                  Family::Stability5, inst.quota_employer[edd],
                  {{1, VarRef::z(e, a)},
                   {-1, VarRef::z(e, ap)},
                   {-1, VarRef::z(ep, a)},
                   {1, VarRef::z(edd, ap)}},
                  2, employer_fill(edd),
                  PotentialBlockingTuple{a, real(ap), Slot::gamma(), e,
                                         real(ep), real(edd)});
            }
          }
        }
      }
  }

  // Mutual drop; e' rematches with undermatched a''.
  void family6() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ap = 0; ap < inst.n; ++ap) {
          if (ap == a) continue;
          for (int ep = 0; ep < inst.m; ++ep) {
            if (ep == e || inst.pr_a(a, ep) != 0) continue;
            for (int add = 0; add < inst.n; ++add) {
              if (add == a || add == ap) continue;
              if (!pair_wanted(add, ep)) continue;
              if (employer_margin(a, e, ap, ep, add, -1) < 1) continue;
              push_stability_sum(
                  Family::Stability6, inst.quota_applicant[add],
                  {{1, VarRef::z(e, a)},
                   {-1, VarRef::z(e, ap)},
                   {-1, VarRef::z(ep, a)},
                   {1, VarRef::z(ep, add)}},
                  2, applicant_fill(add),
                  PotentialBlockingTuple{a, real(ap), real(add), e, real(ep),
                                         Slot::gamma()});
            }
          }
        }
      }
  }

  // Mutual drop; both rematch: either a' and e' pair up, or both rematch
  // with distinct undermatched agents.
  void family7() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ap = 0; ap < inst.n; ++ap) {
          if (ap == a) continue;
          for (int ep = 0; ep < inst.m; ++ep) {
            if (ep == e || inst.pr_a(a, ep) != 0) continue;
            for (int add = 0; add < inst.n; ++add) {
              if (add == a) continue;
              bool pair_up = add == ap;
              for (int edd = 0; edd < inst.m; ++edd) {
                if (edd == e) continue;
                if ((edd == ep) != pair_up) continue;
                if (!pair_wanted(ap, edd) || !pair_wanted(add, ep)) continue;
                if (employer_margin(a, e, ap, ep, add, edd) < 1) continue;
                PotentialBlockingTuple t{a,        real(ap), real(add),
                                         e,        real(ep), real(edd)};
                if (pair_up) {
                  push_stability(Family::Stability7,
                                 {{1, VarRef::z(e, a)},
                                  {-1, VarRef::z(e, ap)},
                                  {-1, VarRef::z(ep, a)},
                                  {1, VarRef::z(ep, ap)},
                                  {2, VarRef::one()}},
                                 t);
                } else {
                  push_stability(Family::Stability7,
                                 {{1, VarRef::z(e, a)},
                                  {-1, VarRef::z(e, ap)},
                                  {-1, VarRef::z(ep, a)},
                                  {1, VarRef::z(ep, add)},
                                  {1, VarRef::z(edd, ap)},
                                  {-1, VarRef::residual_a(add)},
                                  {-1, VarRef::residual_e(edd)},
                                  {4, VarRef::one()}},
                                 t);
                }
              }
            }
          }
        }
      }
  }

  // e undermatched; a drops e'; e' rematches with undermatched a''.
  void family8() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ep = 0; ep < inst.m; ++ep) {
          if (ep == e || inst.pr_a(a, ep) != 0) continue;
          for (int add = 0; add < inst.n; ++add) {
            if (add == a) continue;
            if (!pair_wanted(add, ep)) continue;
            if (employer_margin(a, e, -1, ep, add, -1) < 1) continue;
            push_stability(Family::Stability8,
                           {{1, VarRef::z(e, a)},
                            {-1, VarRef::z(ep, a)},
                            {1, VarRef::z(ep, add)},
                            {-1, VarRef::residual_e(e)},
                            {-1, VarRef::residual_a(add)},
                            {3, VarRef::one()}},
                           PotentialBlockingTuple{a, Slot::gamma(), real(add),
                                                  e, real(ep), Slot::gamma()});
          }
        }
      }
  }

  // a undermatched; e drops a'; a' rematches with undermatched e''.
  void family9() {
    for (int a = 0; a < inst.n; ++a)
      for (int e = 0; e < inst.m; ++e) {
        if (inst.pr_a(a, e) != 1) continue;
        for (int ap = 0; ap < inst.n; ++ap) {
          if (ap == a) continue;
          for (int edd = 0; edd < inst.m; ++edd) {
            if (edd == e) continue;
            if (!pair_wanted(ap, edd)) continue;
            if (employer_margin(a, e, ap, -1, -1, edd) < 1) continue;
            push_stability(Family::Stability9,
                           {{1, VarRef::z(e, a)},
                            {-1, VarRef::z(e, ap)},
                            {1, VarRef::z(edd, ap)},
                            {-1, VarRef::residual_a(a)},
                            {-1, VarRef::residual_e(edd)},
                            {3, VarRef::one()}},
                           PotentialBlockingTuple{a, real(ap), Slot::gamma(),
                                                  e, Slot::gamma(),
                                                  real(edd)});
          }
        }
      }
  }
};

}  // namespace detail

inline IlpModel build_model(const Instance& inst) {
  detail::ModelBuilder builder(inst);
  builder.build();
  return builder.model;
}

// Substitutes z from the matching and the canonical residual indicators
// (u_v = 1 iff v is below quota), returning every violated constraint.
inline std::vector<LinearConstraint> check_matching(const IlpModel& model,
                                                    const Matching& mu) {
  if (static_cast<int>(mu.fwd.size()) != model.n ||
      static_cast<int>(mu.bwd.size()) != model.m)
    throw DimensionMismatch("matching does not fit the model's market");

  auto value = [&](const VarRef& v) -> std::int64_t {
    switch (v.kind) {
      case VarRef::Kind::Z:
        return mu.has(v.a, v.e) ? 1 : 0;
      case VarRef::Kind::ResidualApplicant:
        return static_cast<int>(mu.fwd[v.a].size()) <
                       model.quota_applicant[v.a]
                   ? 1
                   : 0;
      case VarRef::Kind::ResidualEmployer:
        return static_cast<int>(mu.bwd[v.e].size()) <
                       model.quota_employer[v.e]
                   ? 1
                   : 0;
      case VarRef::Kind::One:
        return 1;
    }
    return 0;
  };

  std::vector<LinearConstraint> violated;
  for (const auto& c : model.constraints) {
    std::int64_t lhs = 0;
    for (const auto& term : c.terms) lhs += term.coef * value(term.var);
    bool ok = c.sense == Sense::LE ? lhs <= c.rhs : lhs >= c.rhs;
    if (!ok) violated.push_back(c);
  }
  return violated;
}

// LP-format text: constant objective, one named row per constraint, Binary
// section listing every variable. Byte-deterministic for a given instance.
inline std::string export_lp(const IlpModel& model) {
  std::ostringstream out;
  out << "Minimize\n obj: 0\nSubject To\n";
  for (const auto& c : model.constraints) {
    std::int64_t constant = 0;
    std::ostringstream row;
    bool first = true;
    for (const auto& term : c.terms) {
      if (term.var.kind == VarRef::Kind::One) {
        constant += term.coef;
        continue;
      }
      std::int64_t coef = term.coef;
      if (coef == 0) continue;
      if (first) {
        if (coef < 0) row << "- ";
        first = false;
      } else {
        row << (coef < 0 ? " - " : " + ");
      }
      std::int64_t mag = coef < 0 ? -coef : coef;
      if (mag != 1) row << mag << " ";
      row << term.var.name();
    }
    if (first) row << "0 " << (model.n > 0 && model.m > 0
                                   ? VarRef::z(0, 0).name()
                                   : std::string("x"));
    out << " " << c.name() << ": " << row.str()
        << (c.sense == Sense::LE ? " <= " : " >= ") << (c.rhs - constant)
        << "\n";
  }
  out << "Binary\n";
  for (const auto& v : model.variables()) out << " " << v.name() << "\n";
  out << "End\n";
  return out.str();
}

}  // namespace dasm

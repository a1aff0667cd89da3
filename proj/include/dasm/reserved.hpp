#pragma once

// Maximal b-matching and reserved maximal b-matching via linear-time greedy.
// A reservation r(S) on a vertex set S requires that at least r(S) vertices
// of S stay strictly below their quota.

#include <cstdint>
#include <utility>
#include <vector>

#include "dasm/core.hpp"

namespace dasm {

using Edge = std::pair<int, int>;

struct ReservedProblem {
  int num_vertices = 0;
  std::vector<Edge> edges;  // scanned in this order
  std::vector<int> quota;
  std::vector<std::vector<int>> sets;  // may overlap
  std::vector<int> reservation;        // parallel to sets

  void check() const {
    if (static_cast<int>(quota.size()) != num_vertices)
      throw DimensionMismatch("quota size mismatch");
    for (int q : quota)
      if (q < 0) throw NegativeQuota("negative vertex quota");
    for (auto [u, v] : edges) {
      if (u < 0 || u >= num_vertices || v < 0 || v >= num_vertices)
        throw UnknownEdge("edge endpoint out of range");
      if (u == v) throw UnknownEdge("self-loop");
    }
    if (sets.size() != reservation.size())
      throw DimensionMismatch("reservation size mismatch");
    for (std::size_t s = 0; s < sets.size(); ++s) {
      if (reservation[s] < 0 ||
          reservation[s] > static_cast<int>(sets[s].size()))
        throw ParamOutOfRange("reservation exceeds set size");
      for (int v : sets[s])
        if (v < 0 || v >= num_vertices)
          throw UnknownEdge("set member out of range");
    }
  }
};

struct BMatching {
  std::vector<Edge> chosen;
};

struct GreedyStats {
  std::int64_t edges_scanned = 0;
  std::int64_t work_units = 0;  // quota checks + affiliation-set inspections
};

namespace detail {

inline std::vector<std::vector<int>> sets_by_vertex(const ReservedProblem& p) {
  std::vector<std::vector<int>> owner(p.num_vertices);
  for (std::size_t s = 0; s < p.sets.size(); ++s)
    for (int v : p.sets[s]) owner[v].push_back(static_cast<int>(s));
  return owner;
}

}  // namespace detail

inline bool s_contains(const std::vector<int>& set, int v) {
  for (int x : set)
    if (x == v) return true;
  return false;
}

// Scans edges in input order, adding each edge unless it would overfill a
// quota or drop some affiliation below its reserved count of unfilled
// vertices. Both endpoints are checked jointly before insertion: an edge may
// fill both at once.
inline BMatching greedy_reserved(const ReservedProblem& p,
                                 GreedyStats* stats = nullptr) {
  p.check();
  std::vector<int> degree(p.num_vertices, 0);
  // unfilled[s] = |{v in S : degree(v) < quota(v)}|
  std::vector<int> unfilled(p.sets.size(), 0);
  for (std::size_t s = 0; s < p.sets.size(); ++s)
    for (int v : p.sets[s])
      if (p.quota[v] > 0) ++unfilled[s];
  auto owner = detail::sets_by_vertex(p);

  BMatching result;
  GreedyStats local;
  for (auto [u, v] : p.edges) {
    ++local.edges_scanned;
    local.work_units += 2;
    if (degree[u] >= p.quota[u] || degree[v] >= p.quota[v]) continue;

    bool fills_u = degree[u] + 1 == p.quota[u];
    bool fills_v = degree[v] + 1 == p.quota[v];
    // Count the newly filled endpoints per set; u and v may share a set.
    bool ok = true;
    if (fills_u) {
      for (int s : owner[u]) {
        ++local.work_units;
        int drop = 1 + ((fills_v && s_contains(p.sets[s], v)) ? 1 : 0);
        if (unfilled[s] - drop < p.reservation[s]) {
          ok = false;
          break;
        }
      }
    }
    if (ok && fills_v) {
      for (int s : owner[v]) {
        ++local.work_units;
        if (fills_u && s_contains(p.sets[s], u)) continue;  // counted above
        if (unfilled[s] - 1 < p.reservation[s]) {
          ok = false;
          break;
        }
      }
    }
    if (!ok) continue;

    ++degree[u];
    ++degree[v];
    if (fills_u)
      for (int s : owner[u]) --unfilled[s];
    if (fills_v)
      for (int s : owner[v]) --unfilled[s];
    result.chosen.emplace_back(u, v);
  }
  if (stats) *stats = local;
  return result;
}

inline std::vector<int> degrees_of(const ReservedProblem& p,
                                   const BMatching& m) {
  std::vector<int> degree(p.num_vertices, 0);
  for (auto [u, v] : m.chosen) {
    if (u < 0 || u >= p.num_vertices || v < 0 || v >= p.num_vertices)
      throw UnknownEdge("matching edge out of range");
    ++degree[u];
    ++degree[v];
  }
  return degree;
}

inline bool is_reserved_b_matching(const ReservedProblem& p,
                                   const BMatching& m) {
  auto degree = degrees_of(p, m);
  for (int v = 0; v < p.num_vertices; ++v)
    if (degree[v] > p.quota[v]) return false;
  for (std::size_t s = 0; s < p.sets.size(); ++s) {
    int unfilled = 0;
    for (int v : p.sets[s])
      if (degree[v] < p.quota[v]) ++unfilled;
    if (unfilled < p.reservation[s]) return false;
  }
  return true;
}

// True iff no edge outside m can be added without breaking a quota or
// reservation constraint. Each occurrence of a chosen edge exempts one
// occurrence in the edge list, so multigraph inputs behave sensibly.
inline bool is_maximal(const ReservedProblem& p, const BMatching& m) {
  auto degree = degrees_of(p, m);
  std::vector<int> unfilled(p.sets.size(), 0);
  for (std::size_t s = 0; s < p.sets.size(); ++s)
    for (int v : p.sets[s])
      if (degree[v] < p.quota[v]) ++unfilled[s];

  std::vector<Edge> chosen_sorted = m.chosen;
  std::sort(chosen_sorted.begin(), chosen_sorted.end());

  auto consume_if_chosen = [&](Edge e) {
    auto it =
        std::lower_bound(chosen_sorted.begin(), chosen_sorted.end(), e);
    if (it != chosen_sorted.end() && *it == e) {
      chosen_sorted.erase(it);
      return true;
    }
    return false;
  };

  for (auto edge : p.edges) {
    auto [u, v] = edge;
    if (consume_if_chosen(edge)) continue;
    if (degree[u] >= p.quota[u] || degree[v] >= p.quota[v]) continue;
    bool fills_u = degree[u] + 1 == p.quota[u];
    bool fills_v = degree[v] + 1 == p.quota[v];
    bool blocked = false;
    for (std::size_t s = 0; s < p.sets.size() && !blocked; ++s) {
      int drop = 0;
      if (fills_u && s_contains(p.sets[s], u)) ++drop;
      if (fills_v && s_contains(p.sets[s], v)) ++drop;
      if (drop > 0 && unfilled[s] - drop < p.reservation[s]) blocked = true;
    }
    if (!blocked) return false;  // this edge is addable
  }
  return true;
}

// Plain maximal b-matching: reserved greedy with no affiliation sets.
inline BMatching greedy_maximal(int num_vertices,
                                const std::vector<Edge>& edges,
                                const std::vector<int>& quota,
                                GreedyStats* stats = nullptr) {
  ReservedProblem p;
  p.num_vertices = num_vertices;
  p.edges = edges;
  p.quota = quota;
  return greedy_reserved(p, stats);
}

}  // namespace dasm

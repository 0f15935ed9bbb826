#pragma once

#include <algorithm>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "minkray/errors.hpp"

namespace minkray {

struct FiniteHypergraph {
  int vertex_count = 0;
  std::vector<std::set<int>> edges;

  static FiniteHypergraph make(int vertex_count, std::vector<std::set<int>> edges) {
    if (vertex_count < 0) throw Error(errc::bad_input, "negative vertex count");
    for (const auto& e : edges) {
      if (e.empty()) throw Error(errc::bad_input, "empty edge");
      for (int v : e)
        if (v < 0 || v >= vertex_count)
          throw Error(errc::bad_input, "edge vertex " + std::to_string(v) + " out of range");
    }
    return {vertex_count, std::move(edges)};
  }
};

inline std::size_t intersection_size(const std::set<int>& a, const std::set<int>& b) {
  const std::set<int>& small = a.size() <= b.size() ? a : b;
  const std::set<int>& big = a.size() <= b.size() ? b : a;
  std::size_t c = 0;
  for (int v : small) c += big.count(v);
  return c;
}

/// Core of an edge: the intersection of e with every edge sharing at least
/// k vertices with it (e itself always participates, so the core is a
/// subset of e).
inline std::set<int> edge_core(const FiniteHypergraph& h, int e, int k) {
  if (k < 1) throw Error(errc::bad_input, "k must be >= 1");
  if (e < 0 || e >= static_cast<int>(h.edges.size()))
    throw Error(errc::bad_input, "edge index out of range");
  std::set<int> core = h.edges[e];
  for (int f = 0; f < static_cast<int>(h.edges.size()); ++f) {
    if (f == e) continue;
    if (intersection_size(h.edges[e], h.edges[f]) < static_cast<std::size_t>(k)) continue;
    std::set<int> next;
    std::set_intersection(core.begin(), core.end(), h.edges[f].begin(), h.edges[f].end(),
                          std::inserter(next, next.begin()));
    core = std::move(next);
  }
  return core;
}

struct CoreCheckResult {
  bool ok = true;
  std::optional<std::pair<int, int>> counterexample;
};

/// Checks the core dichotomy on all edge pairs: distinct cores share fewer
/// than k vertices. The dichotomy always holds, so a counterexample
/// indicates an implementation bug.
inline CoreCheckResult core_disjointness_check(const FiniteHypergraph& h, int k) {
  std::vector<std::set<int>> cores;
  cores.reserve(h.edges.size());
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) cores.push_back(edge_core(h, e, k));
  for (std::size_t a = 0; a < cores.size(); ++a)
    for (std::size_t b = a + 1; b < cores.size(); ++b) {
      if (cores[a] == cores[b]) continue;
      if (intersection_size(cores[a], cores[b]) >= static_cast<std::size_t>(k))
        return {false, std::make_pair(static_cast<int>(a), static_cast<int>(b))};
    }
  return {true, std::nullopt};
}

struct PeelResult {
  bool success = false;
  std::string failure_reason;
  std::vector<std::vector<int>> transversals;  // t disjoint transversals of the cores
  std::vector<int> colouring;                  // vertex -> 1..t (redundant vertices get 1)
};

/// Builds t disjoint transversals of the core hypergraph by greedy peeling
/// (repeatedly taking the unused vertex hitting the most uncovered cores)
/// and colours vertices by their transversal; leftovers get colour 1. Every
/// original edge then contains all t colours. Requires every core to have at
/// least t vertices; greedy failures on adversarial instances are reported,
/// not hidden.
inline PeelResult peel_transversals(const FiniteHypergraph& h, int k, int t) {
  if (t < 1) throw Error(errc::bad_input, "colour count must be >= 1");
  std::vector<std::set<int>> cores;
  for (int e = 0; e < static_cast<int>(h.edges.size()); ++e) {
    std::set<int> c = edge_core(h, e, k);
    if (static_cast<int>(c.size()) < t)
      throw Error(errc::infeasible_core,
                  "core of edge " + std::to_string(e) + " has " + std::to_string(c.size()) +
                      " vertices, fewer than the requested " + std::to_string(t) + " colours");
    cores.push_back(std::move(c));
  }
  // Deduplicate: equal cores are the same constraint.
  std::sort(cores.begin(), cores.end());
  cores.erase(std::unique(cores.begin(), cores.end()), cores.end());

  PeelResult res;
  // membership counts steer ties: versatile vertices are kept for later rounds
  std::vector<int> membership(h.vertex_count, 0);
  for (const auto& c : cores)
    for (int v : c) ++membership[v];
  std::vector<bool> used(h.vertex_count, false);
  for (int round = 0; round < t; ++round) {
    std::vector<bool> hit(cores.size(), false);
    std::vector<int> transversal;
    for (;;) {
      std::size_t uncovered = 0;
      for (bool b : hit)
        if (!b) ++uncovered;
      if (uncovered == 0) break;
      int best_v = -1;
      std::size_t best_cover = 0;
      for (int v = 0; v < h.vertex_count; ++v) {
        if (used[v]) continue;
        std::size_t cover = 0;
        for (std::size_t c = 0; c < cores.size(); ++c)
          if (!hit[c] && cores[c].count(v)) ++cover;
        if (cover > best_cover ||
            (cover == best_cover && cover > 0 && membership[v] < membership[best_v])) {
          best_cover = cover;
          best_v = v;
        }
      }
      if (best_v < 0) {
        res.success = false;
        res.failure_reason = "greedy peeling ran out of fresh vertices in round " +
                             std::to_string(round + 1);
        return res;
      }
      used[best_v] = true;
      transversal.push_back(best_v);
      for (std::size_t c = 0; c < cores.size(); ++c)
        if (cores[c].count(best_v)) hit[c] = true;
    }
    res.transversals.push_back(std::move(transversal));
  }
  res.success = true;
  res.colouring.assign(h.vertex_count, 1);
  for (int round = 0; round < t; ++round)
    for (int v : res.transversals[round]) res.colouring[v] = round + 1;
  return res;
}

}  // namespace minkray

#pragma once

#include <stdexcept>
#include <string>
#include <vector>

#include "ssr/lp.hpp"
#include "ssr/verify.hpp"

namespace ssr {

/**
 * Raised when a point handed to the extraction pipeline fails one of the
 * structural properties every point of the full constraint system has.
 * Reaching this from a solver-produced point means a bug, never bad input.
 */
struct PointNotInP : std::runtime_error {
  explicit PointNotInP(const std::string& property)
      : std::runtime_error("point lacks a feasibility-region property: " +
                           property) {}
};

/**
 * Self-duality of feasible points, a consequence of the degree rows and
 * no-weak-block rows holding together: wherever x puts mass on an edge,
 * (a) that edge's no-weak-block row is tight, and (b) no edge tied with it
 * at either endpoint carries mass.
 */
inline void check_self_duality(const Instance& inst, const RationalVector& x) {
  for (const Constraint& row : build_base_constraints(inst)) {
    if (row.tag.kind != RowKind::NoWeakBlock) continue;
    const Edge e = row.tag.edge;
    if (x[e] == 0) continue;
    if (row.lhs(x) != 1)
      throw PointNotInP("tight support row (" + row.tag.str() + ")");
    for (Vertex v : {e.u, e.v})
      for (Vertex w = 0; w < inst.vertex_count(); ++w) {
        if (w == v || w == e.other(v)) continue;
        const Edge f(v, w);
        if (inst.compare(v, f, e) == Cmp::Equal && x[f] != 0)
          throw PointNotInP("no mass on edges tied with a support edge");
      }
  }
}

/**
 * Per-vertex view of a feasible point: the support, the unique "half edge"
 * where the vertex's preference-ordered mass crosses one half, the partner
 * across it, and — for vertices whose half edges do not pair up — the
 * unique predecessor pointing at them and its half edge.
 */
struct HalfStructure {
  std::vector<EdgeSet> support;   // edges at v carrying mass
  std::vector<Edge> half;         // half edge of v
  std::vector<Vertex> partner;    // other endpoint of half[v]
  std::vector<char> mutual;       // partner[partner[v]] == v
  std::vector<Vertex> pred;       // unique w with partner[w] == v; -1 if mutual
  std::vector<Edge> prev_half;    // half[pred[v]], or half[v] if mutual
};

inline HalfStructure half_structure(const Instance& inst,
                                    const RationalVector& x) {
  const int n = inst.vertex_count();
  if (x.vertex_count() != n)
    throw std::invalid_argument("point dimension does not match instance");
  if (!x.nonnegative()) throw PointNotInP("nonnegative entries");
  for (const Constraint& row : build_base_constraints(inst))
    if (!row.satisfied_by(x))
      throw PointNotInP("base row holds: " + row.tag.str());
  check_self_duality(inst, x);

  const Rat half_mass(1, 2);
  HalfStructure hs;
  hs.support.resize(n);
  hs.half.resize(n);
  hs.partner.assign(n, -1);
  hs.mutual.assign(n, 0);
  hs.pred.assign(n, -1);
  hs.prev_half.resize(n);

  for (Vertex v = 0; v < n; ++v) {
    for (Edge e : inst.incident(v))
      if (x[e] > 0) hs.support[v].insert(e);
    for (Edge e : hs.support[v])
      for (Edge f : hs.support[v])
        if (e < f && inst.compare(v, e, f) == Cmp::Equal)
          throw PointNotInP("support is strictly ordered at vertex " +
                            std::to_string(v + 1));
    int hits = 0;
    for (Edge e : hs.support[v]) {
      const Rat above = x.sum(inst.upper_set(v, e, /*strict=*/true));
      if (above < half_mass && half_mass <= above + x[e]) {
        hs.half[v] = e;
        ++hits;
      }
    }
    if (hits != 1)
      throw PointNotInP("unique half edge at vertex " + std::to_string(v + 1));
    hs.partner[v] = hs.half[v].other(v);
  }
  for (Vertex v = 0; v < n; ++v)
    hs.mutual[v] = (hs.partner[hs.partner[v]] == v);

  for (Vertex v = 0; v < n; ++v) {
    if (hs.mutual[v]) {
      hs.prev_half[v] = hs.half[v];
      continue;
    }
    if (hs.mutual[hs.partner[v]])
      throw PointNotInP("partner map keeps non-mutual vertices non-mutual");
    if (x.sum(inst.upper_set(v, hs.half[v], /*strict=*/false)) != half_mass)
      throw PointNotInP("mass down to the half edge is exactly one half at " +
                        std::to_string(v + 1));
    for (Vertex w = 0; w < n; ++w)
      if (!hs.mutual[w] && hs.partner[w] == v) {
        if (hs.pred[v] != -1)
          throw PointNotInP("unique predecessor at vertex " +
                            std::to_string(v + 1));
        hs.pred[v] = w;
      }
    if (hs.pred[v] == -1)
      throw PointNotInP("unique predecessor at vertex " +
                        std::to_string(v + 1));
    hs.prev_half[v] = hs.half[hs.pred[v]];
    if (inst.compare(v, hs.half[v], hs.prev_half[v]) != Cmp::Better)
      throw PointNotInP("half edge beats the predecessor's half edge at " +
                        std::to_string(v + 1));
    if (x.sum(inst.upper_set(v, hs.prev_half[v], /*strict=*/true)) !=
        half_mass)
      throw PointNotInP(
          "mass strictly above the predecessor's half edge is one half at " +
          std::to_string(v + 1));
  }
  return hs;
}

/**
 * Candidate troublemakers: edges outside the half-edge set that both
 * endpoints place strictly below their own half edge but no lower than
 * their predecessor's.  These are exactly the edges that could weakly
 * block the matching if the two sides were picked inconsistently, so they
 * join the graph that the final two-coloring must keep bipartite.
 */
inline EdgeSet block_set(const Instance& inst, const HalfStructure& hs) {
  EdgeSet half_edges;
  for (Edge e : hs.half) half_edges.insert(e);
  EdgeSet out;
  for (Edge e : inst.all_edges()) {
    if (half_edges.contains(e)) continue;
    bool ok = true;
    for (Vertex v : {e.u, e.v})
      if (inst.compare(v, hs.half[v], e) != Cmp::Better ||
          !inst.at_least_as_good(v, e, hs.prev_half[v]))
        ok = false;
    if (ok) out.insert(e);
  }
  return out;
}

/**
 * Global structure built on top of the half edges: the mutual pairs, the
 * even partner-cycles through everyone else, and a two-coloring of the
 * graph of half edges plus block candidates.  Vertices with picked[v] set
 * contribute their half edge to the final matching.
 */
struct Decomposition {
  EdgeSet half_edges;                       // every half[v]
  EdgeSet mutual_edges;                     // half edges of mutual pairs
  std::vector<std::vector<Vertex>> cycles;  // partner-cycles, non-mutual only
  std::vector<char> picked;                 // one colour class
};

inline Decomposition build_decomposition(const Instance& inst,
                                         const HalfStructure& hs) {
  const int n = static_cast<int>(hs.half.size());
  Decomposition dec;
  for (Edge e : hs.half) dec.half_edges.insert(e);
  for (Vertex v = 0; v < n; ++v)
    if (hs.mutual[v]) dec.mutual_edges.insert(hs.half[v]);

  std::vector<char> visited(n, 0);
  EdgeSet cycle_edges;
  for (Vertex s = 0; s < n; ++s) {
    if (hs.mutual[s] || visited[s]) continue;
    std::vector<Vertex> cyc;
    Vertex v = s;
    while (!visited[v]) {
      visited[v] = 1;
      cyc.push_back(v);
      cycle_edges.insert(hs.half[v]);
      v = hs.partner[v];
    }
    if (v != s)
      throw PointNotInP("partner map decomposes non-mutual vertices "
                        "into cycles");
    if (cyc.size() % 2 != 0) throw PointNotInP("partner-cycles have even length");
    for (std::size_t i = 0; i < cyc.size(); ++i) {
      const Vertex at = cyc[i];
      const Vertex before = cyc[(i + cyc.size() - 1) % cyc.size()];
      if (inst.compare(at, Edge(at, hs.partner[at]), Edge(before, at)) !=
          Cmp::Better)
        throw PointNotInP("each cycle stop strictly prefers its own half "
                          "edge to its predecessor's");
    }
    dec.cycles.push_back(std::move(cyc));
  }
  if (unite(dec.mutual_edges, cycle_edges) != dec.half_edges ||
      difference(dec.mutual_edges, cycle_edges) != dec.mutual_edges)
    throw PointNotInP("half edges split into mutual pairs and cycles");

  // Two-colour the graph of half edges and block candidates.
  const EdgeSet blocks = block_set(inst, hs);
  std::vector<std::vector<Vertex>> adj(n);
  for (Edge e : unite(dec.half_edges, blocks)) {
    adj[e.u].push_back(e.v);
    adj[e.v].push_back(e.u);
  }
  std::vector<int> colour(n, -1);
  for (Vertex s = 0; s < n; ++s) {
    if (colour[s] != -1) continue;
    colour[s] = 1;
    std::vector<Vertex> queue{s};
    for (std::size_t head = 0; head < queue.size(); ++head) {
      const Vertex v = queue[head];
      for (Vertex w : adj[v]) {
        if (colour[w] == -1) {
          colour[w] = 1 - colour[v];
          queue.push_back(w);
        } else if (colour[w] == colour[v]) {
          throw PointNotInP("half-edge and block-candidate graph is "
                            "bipartite");
        }
      }
    }
  }
  dec.picked.assign(n, 0);
  for (Vertex v = 0; v < n; ++v) dec.picked[v] = (colour[v] == 1);
  return dec;
}

/**
 * End to end: derive the half structure and decomposition from a feasible
 * point, take the picked side's half edges, and verify the result is a
 * perfect super-stable matching before returning it.
 */
inline Matching extract_matching(const Instance& inst,
                                 const RationalVector& x) {
  const HalfStructure hs = half_structure(inst, x);
  const Decomposition dec = build_decomposition(inst, hs);
  std::vector<Edge> picked_edges;
  for (Vertex v = 0; v < inst.vertex_count(); ++v)
    if (dec.picked[v]) picked_edges.push_back(hs.half[v]);
  Matching mu;
  try {
    mu = Matching::from_edges(inst.vertex_count(), picked_edges);
  } catch (const std::invalid_argument& e) {
    throw PointNotInP(std::string("picked half edges form a perfect "
                                  "matching (") +
                      e.what() + ")");
  }
  if (!is_super_stable(inst, mu).super_stable())
    throw PointNotInP("extracted matching is super-stable");
  return mu;
}

}  // namespace ssr

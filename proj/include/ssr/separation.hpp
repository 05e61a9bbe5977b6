#pragma once

#include <cassert>
#include <optional>
#include <queue>
#include <stdexcept>
#include <tuple>
#include <unordered_map>
#include <vector>

#include "ssr/lp.hpp"

namespace ssr {

/**
 * A state of a walk through the instance: standing at `cur`, having arrived
 * along {prev, cur}, about to leave along {cur, next}.  next == prev is the
 * legal "turn straight back" state; next == cur is not a state.
 */
struct AuxNode {
  Vertex prev = -1;
  Vertex cur = -1;
  Vertex next = -1;

  Edge enter() const { return Edge(prev, cur); }
  Edge leave() const { return Edge(cur, next); }
  bool degenerate() const { return next == prev; }
  bool operator==(const AuxNode&) const = default;
};

/**
 * The separation digraph over walk states.  An arc a -> b exists when b
 * continues a (b.prev == a.cur, b.cur == a.next) and a.cur finds the edge
 * it leaves along at least as good as the edge it arrived along; that is
 * exactly the local condition a dangerous walk satisfies at every stop.
 *
 * Whether an arc exists depends only on the preferences, never on x; only
 * the costs change between separation calls.  Arc cost is
 *
 *   1 - term(a) - term(b),   term(a) = x(edges a.cur ranks no better than
 *                                        the entering edge, minus the
 *                                        leaving edge if it qualifies)
 *
 * so a closed walk of length k costs k - 2 * (its constraint row's lhs),
 * and odd closed walks cheaper than 1 are exactly violated cut rows.
 */
struct AuxDigraph {
  int n = 0;
  std::vector<AuxNode> nodes;  // ascending (prev, cur, next)
  std::vector<std::vector<std::pair<int, Rat>>> out;  // (head id, cost)

  int node_id(Vertex prev, Vertex cur, Vertex next) const {
    if (prev < 0 || prev >= n || cur < 0 || cur >= n || next < 0 || next >= n)
      throw std::invalid_argument("aux node vertex out of range");
    return id_[(static_cast<std::size_t>(prev) * n + cur) * n + next];
  }

  int arc_count() const {
    int total = 0;
    for (const auto& adj : out) total += static_cast<int>(adj.size());
    return total;
  }

  /** Cost of the arc a -> b; throws if the arc is absent. */
  Rat arc_cost(int a, int b) const {
    const auto& adj = out.at(a);
    auto it = std::lower_bound(
        adj.begin(), adj.end(), b,
        [](const std::pair<int, Rat>& p, int head) { return p.first < head; });
    if (it == adj.end() || it->first != b)
      throw std::invalid_argument("no such arc in the separation digraph");
    return it->second;
  }

  std::vector<int> id_;  // dense (prev, cur, next) -> node id, -1 if invalid
};

inline AuxDigraph build_aux_digraph(const Instance& inst,
                                    const RationalVector& x) {
  const int n = inst.vertex_count();
  if (x.vertex_count() != n)
    throw std::invalid_argument("point dimension does not match instance");

  AuxDigraph d;
  d.n = n;
  d.id_.assign(static_cast<std::size_t>(n) * n * n, -1);
  for (Vertex prev = 0; prev < n; ++prev)
    for (Vertex cur = 0; cur < n; ++cur) {
      if (cur == prev) continue;
      for (Vertex next = 0; next < n; ++next) {
        if (next == cur) continue;
        d.id_[(static_cast<std::size_t>(prev) * n + cur) * n + next] =
            static_cast<int>(d.nodes.size());
        d.nodes.push_back(AuxNode{prev, cur, next});
      }
    }

  // low[v][w]: total mass v places on edges it ranks no better than {v,w}.
  std::vector<std::vector<Rat>> low(n, std::vector<Rat>(n, Rat(0)));
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      for (Vertex w2 = 0; w2 < n; ++w2)
        if (w2 != v && inst.rank(v, w2) >= inst.rank(v, w))
          low[v][w] += x[Edge(v, w2)];
    }

  std::vector<Rat> term(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const AuxNode& a = d.nodes[i];
    term[i] = low[a.cur][a.prev];
    if (inst.rank(a.cur, a.prev) <= inst.rank(a.cur, a.next))
      term[i] -= x[a.leave()];  // leaving edge sits inside the summed set
  }

  d.out.resize(d.nodes.size());
  for (std::size_t i = 0; i < d.nodes.size(); ++i) {
    const AuxNode& a = d.nodes[i];
    if (inst.rank(a.cur, a.next) > inst.rank(a.cur, a.prev))
      continue;  // a.cur would refuse this continuation
    for (Vertex r = 0; r < n; ++r) {
      if (r == a.next) continue;
      const int head = d.node_id(a.cur, a.next, r);
      const Rat cost = Rat(1) - term[i] - term[head];
      assert(cost >= 0 && "negative arc cost: x violates the base rows");
      d.out[i].emplace_back(head, cost);
    }
  }
  return d;
}

/** A closed walk in the separation digraph (front node == back node). */
struct AuxWalk {
  std::vector<int> nodes;
  Rat cost = 0;

  int length() const { return static_cast<int>(nodes.size()) - 1; }
};

/** An AuxWalk whose interior nodes are pairwise distinct. */
using OddCycle = AuxWalk;

/**
 * Cheapest odd-length closed walk, by per-source Dijkstra on the digraph
 * doubled with a parity bit (costs are required to be nonnegative, so
 * Dijkstra applies).  Returns nullopt when no odd closed walk exists.
 *
 * Deterministic tie-break among minimum-cost walks: fewest arcs, then
 * lexicographically smallest node sequence among the per-source winners.
 */
inline std::optional<AuxWalk> min_odd_closed_walk(const AuxDigraph& d) {
  const int N = static_cast<int>(d.nodes.size());
  for (const auto& adj : d.out)
    for (const auto& [head, cost] : adj)
      if (cost < 0)
        throw std::logic_error(
            "negative arc cost: point violates the base rows");

  std::optional<AuxWalk> best;
  std::vector<Rat> dist(2 * N);
  std::vector<int> hops(2 * N), pred(2 * N);
  std::vector<char> settled(2 * N);

  for (int src = 0; src < N; ++src) {
    if (d.out[src].empty()) continue;
    std::fill(hops.begin(), hops.end(), -1);  // -1 = unreached
    std::fill(pred.begin(), pred.end(), -1);
    std::fill(settled.begin(), settled.end(), 0);

    using Item = std::tuple<Rat, int, int>;  // (dist, hops, state)
    std::priority_queue<Item, std::vector<Item>, std::greater<Item>> heap;
    const int start = 2 * src;  // even-parity copy of src
    dist[start] = 0;
    hops[start] = 0;
    heap.emplace(Rat(0), 0, start);

    while (!heap.empty()) {
      const auto [dv, hv, s] = heap.top();
      heap.pop();
      if (settled[s]) continue;
      settled[s] = 1;
      const int node = s / 2, parity = s % 2;
      for (const auto& [head, cost] : d.out[node]) {
        const int to = 2 * head + (1 - parity);
        const Rat nd = dv + cost;
        const int nh = hv + 1;
        if (hops[to] < 0 || nd < dist[to] ||
            (nd == dist[to] && nh < hops[to])) {
          dist[to] = nd;
          hops[to] = nh;
          pred[to] = s;
          heap.emplace(nd, nh, to);
        }
      }
    }

    const int goal = 2 * src + 1;
    if (hops[goal] < 0) continue;
    AuxWalk cand;
    cand.cost = dist[goal];
    for (int s = goal; s != -1; s = pred[s]) cand.nodes.push_back(s / 2);
    std::reverse(cand.nodes.begin(), cand.nodes.end());
    if (!best || cand.cost < best->cost ||
        (cand.cost == best->cost && (cand.length() < best->length() ||
                                     (cand.length() == best->length() &&
                                      cand.nodes < best->nodes))))
      best = std::move(cand);
  }
  return best;
}

/**
 * Reduces an odd closed walk to an odd simple cycle of no greater cost:
 * repeatedly locate the first revisited node; the enclosed closed sub-walk
 * is kept if odd (recursing into it) and spliced out if even.  Costs only
 * ever shrink because every arc cost is nonnegative.
 */
inline OddCycle extract_odd_cycle(const AuxWalk& walk, const AuxDigraph& d) {
  if (walk.nodes.size() < 2 || walk.nodes.front() != walk.nodes.back())
    throw std::invalid_argument("not a closed walk");
  if (walk.length() % 2 == 0)
    throw std::invalid_argument("closed walk has even length");

  std::vector<int> seq = walk.nodes;
  while (true) {
    const int k = static_cast<int>(seq.size()) - 1;
    int i = -1, j = -1;
    std::unordered_map<int, int> first_pos;
    first_pos[seq[0]] = 0;
    for (int t = 1; t <= k; ++t) {
      if (auto it = first_pos.find(seq[t]); it != first_pos.end()) {
        i = t;
        j = it->second;
        break;
      }
      first_pos[seq[t]] = t;
    }
    if (i == k && j == 0) break;  // no interior repeats: simple
    if ((i - j) % 2 == 1)
      seq = std::vector<int>(seq.begin() + j, seq.begin() + i + 1);
    else
      seq.erase(seq.begin() + j + 1, seq.begin() + i + 1);
  }

  OddCycle cyc;
  cyc.nodes = std::move(seq);
  for (std::size_t t = 1; t < cyc.nodes.size(); ++t)
    cyc.cost += d.arc_cost(cyc.nodes[t - 1], cyc.nodes[t]);
  if (cyc.length() % 2 == 0 || cyc.cost > walk.cost)
    throw std::logic_error("odd cycle extraction went wrong");
  return cyc;
}

/**
 * A closed walk (v_0, ..., v_k) through the instance, v_0 == v_k, where
 * every stop finds the edge it leaves along at least as good as the edge
 * it arrived along (wrapping around to the first step at the end).
 */
struct DangerousWalk {
  std::vector<Vertex> verts;  // v_0 .. v_k with v_0 == v_k

  int length() const { return static_cast<int>(verts.size()) - 1; }
  Edge step(int i) const { return Edge(verts[i - 1], verts[i]); }  // i in 1..k
};

inline bool is_dangerous(const Instance& inst, const DangerousWalk& w) {
  const int k = w.length();
  if (k < 2 || w.verts.front() != w.verts.back()) return false;
  for (int i = 1; i <= k; ++i)
    if (w.verts[i - 1] == w.verts[i]) return false;
  for (int i = 1; i <= k; ++i) {
    const Edge enter = w.step(i);
    const Edge leave =
        (i == k) ? Edge(w.verts[k], w.verts[1]) : w.step(i + 1);
    if (!inst.at_least_as_good(w.verts[i], leave, enter)) return false;
  }
  return true;
}

/** Largest number of times any single edge is traversed. */
inline int max_multiplicity(const DangerousWalk& w) {
  std::unordered_map<long long, int> count;
  int best = 0;
  for (int i = 1; i <= w.length(); ++i) {
    const Edge e = w.step(i);
    const long long key = static_cast<long long>(e.u) << 32 | e.v;
    best = std::max(best, ++count[key]);
  }
  return best;
}

/**
 * Canonical form of the cyclic vertex sequence (v_1..v_k): the
 * lexicographically smallest rotation.  Direction is preserved (a walk and
 * its reversal are distinct), so this is exactly rotation-invariant.
 */
inline std::vector<Vertex> canonical_cycle(const std::vector<Vertex>& cyc) {
  std::vector<Vertex> best = cyc;
  std::vector<Vertex> rot = cyc;
  for (std::size_t t = 1; t < cyc.size(); ++t) {
    std::rotate(rot.begin(), rot.begin() + 1, rot.end());
    if (rot < best) best = rot;
  }
  return best;
}

/**
 * Turns an odd simple cycle of the separation digraph into its constraint
 * row: for each stop, the mass on edges ranked no better than the entering
 * edge (minus the leaving edge) — summed over stops, at most (k-1)/2.
 */
inline Constraint cycle_to_cut(const Instance& inst, const OddCycle& cyc,
                               const AuxDigraph& d) {
  const int k = cyc.length();
  if (k < 2 || cyc.nodes.front() != cyc.nodes.back() || k % 2 == 0)
    throw std::invalid_argument("not an odd cycle");

  DangerousWalk w;
  w.verts.resize(k + 1);
  w.verts[0] = d.nodes[cyc.nodes[1]].prev;
  for (int i = 1; i <= k; ++i) w.verts[i] = d.nodes[cyc.nodes[i]].cur;
  for (int i = 1; i <= k; ++i) {
    const AuxNode& a = d.nodes[cyc.nodes[i]];
    const AuxNode& b = d.nodes[cyc.nodes[i == k ? 1 : i + 1]];
    if (a.cur != b.prev || a.next != b.cur)
      throw std::logic_error("cycle nodes do not chain");
  }
  if (!is_dangerous(inst, w))
    throw std::logic_error("separation cycle is not a dangerous walk");
  if (max_multiplicity(w) > 4 * inst.edge_count())
    throw std::logic_error("dangerous walk exceeds the multiplicity bound");

  std::vector<std::pair<Edge, Rat>> acc;
  for (int i = 1; i <= k; ++i) {
    const Edge enter = w.step(i);
    const Edge leave = (i == k) ? Edge(w.verts[k], w.verts[1]) : w.step(i + 1);
    for (Edge f : inst.lower_set(w.verts[i], enter, /*strict=*/false))
      if (f != leave) acc.emplace_back(f, 1);
  }
  std::sort(acc.begin(), acc.end());
  Constraint c;
  for (const auto& [f, val] : acc) {
    if (!c.coeffs.empty() && c.coeffs.back().first == f)
      c.coeffs.back().second += val;
    else
      c.coeffs.emplace_back(f, val);
  }
  c.sense = Sense::Le;
  c.rhs = Rat((k - 1) / 2);
  c.tag = RowTag{RowKind::DangerousCut, -1, Edge{},
                 canonical_cycle({w.verts.begin() + 1, w.verts.end()})};
  return c;
}

/**
 * The separation oracle: given x >= 0, returns a violated row of the full
 * system (base rows scanned first in canonical order, then the cheapest
 * violated odd-cycle row), or nullopt when x satisfies everything.
 */
inline std::optional<Constraint> separate(const Instance& inst,
                                          const RationalVector& x) {
  if (!x.nonnegative())
    throw std::invalid_argument("separation requires x >= 0 entrywise");
  for (Constraint& row : build_base_constraints(inst))
    if (!row.satisfied_by(x)) return std::move(row);

  const AuxDigraph d = build_aux_digraph(inst, x);
  const auto walk = min_odd_closed_walk(d);
  if (!walk || walk->cost >= 1) return std::nullopt;
  const OddCycle cyc = extract_odd_cycle(*walk, d);
  Constraint cut = cycle_to_cut(inst, cyc, d);
  if (cut.satisfied_by(x))
    throw std::logic_error("separation produced an unviolated cut");
  return cut;
}

}  // namespace ssr

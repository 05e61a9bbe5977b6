#pragma once

#include <functional>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssr/separation.hpp"

namespace ssr {

/** A perfect matching, stored as a mate array. */
class Matching {
 public:
  Matching() = default;

  static Matching from_edges(int vertex_count, const std::vector<Edge>& edges) {
    Matching m;
    m.mate_.assign(vertex_count, -1);
    for (Edge e : edges) {
      if (e.u < 0 || e.v >= vertex_count)
        throw std::invalid_argument("matching edge endpoint out of range");
      for (Vertex w : {e.u, e.v})
        if (m.mate_[w] != -1)
          throw std::invalid_argument("vertex " + std::to_string(w + 1) +
                                      " is matched twice");
      m.mate_[e.u] = e.v;
      m.mate_[e.v] = e.u;
    }
    for (Vertex v = 0; v < vertex_count; ++v)
      if (m.mate_[v] == -1)
        throw std::invalid_argument("vertex " + std::to_string(v + 1) +
                                    " is unmatched");
    return m;
  }

  int vertex_count() const { return static_cast<int>(mate_.size()); }
  Vertex mate(Vertex v) const { return mate_.at(v); }
  Edge matched_edge(Vertex v) const { return Edge(v, mate_.at(v)); }

  std::vector<Edge> edges() const {
    std::vector<Edge> out;
    for (Vertex v = 0; v < vertex_count(); ++v)
      if (v < mate_[v]) out.emplace_back(v, mate_[v]);
    return out;
  }

  bool operator==(const Matching&) const = default;

 private:
  std::vector<Vertex> mate_;
};

/**
 * True when both endpoints of e find e at least as good as their current
 * matched edge; such an edge disqualifies the matching.  e must be
 * unmatched.
 */
inline bool weakly_blocks(const Instance& inst, const Matching& mu, Edge e) {
  if (mu.mate(e.u) == e.v)
    throw std::invalid_argument("edge is part of the matching");
  return inst.at_least_as_good(e.u, e, mu.matched_edge(e.u)) &&
         inst.at_least_as_good(e.v, e, mu.matched_edge(e.v));
}

/** One weakly blocking edge plus how each endpoint compares it. */
struct BlockWitness {
  Edge edge;
  Cmp at_u = Cmp::Equal;  // edge vs. u's matched edge, from u's point of view
  Cmp at_v = Cmp::Equal;
};

struct BlockReport {
  std::vector<BlockWitness> blocking;  // canonical edge order
  bool super_stable() const { return blocking.empty(); }
};

inline BlockReport is_super_stable(const Instance& inst, const Matching& mu) {
  BlockReport report;
  for (Edge e : inst.all_edges()) {
    if (mu.mate(e.u) == e.v) continue;
    if (weakly_blocks(inst, mu, e))
      report.blocking.push_back(
          BlockWitness{e, inst.compare(e.u, e, mu.matched_edge(e.u)),
                       inst.compare(e.v, e, mu.matched_edge(e.v))});
  }
  return report;
}

namespace detail {

inline bool brute_force_rec(const Instance& inst, std::vector<Vertex>& mate,
                            std::vector<Edge>& chosen,
                            std::optional<Matching>& found) {
  const int n = inst.vertex_count();
  Vertex v = -1;
  for (Vertex u = 0; u < n; ++u)
    if (mate[u] == -1) { v = u; break; }
  if (v == -1) {
    Matching mu = Matching::from_edges(n, chosen);
    if (is_super_stable(inst, mu).super_stable()) {
      found = mu;
      return true;
    }
    return false;
  }
  for (Vertex w = v + 1; w < n; ++w) {
    if (mate[w] != -1) continue;
    mate[v] = w;
    mate[w] = v;
    chosen.emplace_back(v, w);
    if (brute_force_rec(inst, mate, chosen, found)) return true;
    chosen.pop_back();
    mate[v] = -1;
    mate[w] = -1;
  }
  return false;
}

}  // namespace detail

/**
 * Ground truth by exhaustion: tries every perfect matching (lowest
 * unmatched vertex first, partners ascending) and returns the first
 * super-stable one.  Refuses instances larger than `limit` vertices.
 */
inline std::optional<Matching> brute_force_super_stable(const Instance& inst,
                                                        int limit = 10) {
  if (inst.vertex_count() > limit)
    throw std::invalid_argument("instance too large for brute force");
  std::vector<Vertex> mate(inst.vertex_count(), -1);
  std::vector<Edge> chosen;
  std::optional<Matching> found;
  detail::brute_force_rec(inst, mate, chosen, found);
  return found;
}

/** The 0/1 point that places mass 1 on each matched edge. */
inline RationalVector characteristic_vector(const Instance& inst,
                                            const Matching& mu) {
  RationalVector x(inst.vertex_count());
  for (Edge e : mu.edges()) x[e] = 1;
  return x;
}

/**
 * Whether the matching's 0/1 point satisfies the full constraint system
 * (base rows and every odd-cycle row), decided via the separation oracle.
 */
inline bool check_membership(const Instance& inst, const Matching& mu) {
  return !separate(inst, characteristic_vector(inst, mu)).has_value();
}

/**
 * Visits every dangerous closed walk of length 2..max_len (every start
 * vertex, every rotation — no dedup) whose per-edge traversal count stays
 * within 4|E|.  The visitor returns false to stop the enumeration.
 */
inline void for_each_dangerous_walk(
    const Instance& inst, int max_len,
    const std::function<bool(const DangerousWalk&)>& visit) {
  if (max_len < 2) return;
  const int n = inst.vertex_count();
  const int cap = 4 * inst.edge_count();
  std::vector<std::vector<int>> used(n, std::vector<int>(n, 0));
  std::vector<Vertex> path;
  bool stop = false;

  const std::function<void()> dfs = [&]() {
    const int i = static_cast<int>(path.size()) - 1;
    for (Vertex u = 0; u < n && !stop; ++u) {
      if (u == path[i]) continue;
      // A walk may only continue along an edge the stop finds at least as
      // good as the one it arrived by.
      if (i >= 1 && !inst.at_least_as_good(path[i], Edge(path[i], u),
                                           Edge(path[i - 1], path[i])))
        continue;
      const Vertex a = std::min(path[i], u), b = std::max(path[i], u);
      if (used[a][b] + 1 > cap) continue;
      ++used[a][b];
      path.push_back(u);
      const int k = static_cast<int>(path.size()) - 1;
      if (u == path[0] && k >= 2 &&
          inst.at_least_as_good(path[0], Edge(path[0], path[1]),
                                Edge(path[k - 1], path[k]))) {
        DangerousWalk w;
        w.verts = path;
        if (!visit(w)) stop = true;
      }
      if (!stop && k < max_len) dfs();
      path.pop_back();
      --used[a][b];
    }
  };

  for (Vertex v0 = 0; v0 < n && !stop; ++v0) {
    path = {v0};
    dfs();
  }
}

inline std::vector<DangerousWalk> enumerate_dangerous_walks(
    const Instance& inst, int max_len) {
  std::vector<DangerousWalk> out;
  for_each_dangerous_walk(inst, max_len, [&](const DangerousWalk& w) {
    out.push_back(w);
    return true;
  });
  return out;
}

/**
 * Left-hand side of a dangerous walk's constraint row at x, evaluated
 * directly from the definition: per stop, the mass on edges ranked no
 * better than the entering edge, excluding the leaving edge.
 */
inline Rat walk_row_lhs(const Instance& inst, const DangerousWalk& w,
                        const RationalVector& x) {
  const int k = w.length();
  Rat total = 0;
  for (int i = 1; i <= k; ++i) {
    const Edge enter = w.step(i);
    const Edge leave =
        (i == k) ? Edge(w.verts[k], w.verts[1]) : w.step(i + 1);
    for (Edge f : inst.lower_set(w.verts[i], enter, /*strict=*/false))
      if (f != leave) total += x[f];
  }
  return total;
}

inline bool violates_walk_row(const Instance& inst, const DangerousWalk& w,
                              const RationalVector& x) {
  return walk_row_lhs(inst, w, x) > Rat(w.length() / 2);
}

/**
 * Searches for any dangerous walk of length <= max_len whose row is
 * violated at x.  Same depth-first sweep as the enumerator but with the
 * row's partial sum carried along, so the check per walk is O(1).
 */
inline std::optional<DangerousWalk> find_violated_walk(const Instance& inst,
                                                       const RationalVector& x,
                                                       int max_len) {
  const int n = inst.vertex_count();
  if (max_len < 2) return std::nullopt;

  // low[v][w]: mass v places on edges ranked no better than {v,w}.
  std::vector<std::vector<Rat>> low(n, std::vector<Rat>(n, Rat(0)));
  for (Vertex v = 0; v < n; ++v)
    for (Vertex w = 0; w < n; ++w) {
      if (w == v) continue;
      for (Vertex w2 = 0; w2 < n; ++w2)
        if (w2 != v && inst.rank(v, w2) >= inst.rank(v, w))
          low[v][w] += x[Edge(v, w2)];
    }
  // Row term at stop i once the next vertex is known.
  const auto term = [&](Vertex before, Vertex at, Vertex after) {
    Rat t = low[at][before];
    if (inst.rank(at, before) <= inst.rank(at, after))
      t -= x[Edge(at, after)];
    return t;
  };

  const int cap = 4 * inst.edge_count();
  std::vector<std::vector<int>> used(n, std::vector<int>(n, 0));
  std::vector<Vertex> path;
  std::vector<Rat> prefix{Rat(0)};  // prefix[j]: sum of terms 1..j-1
  std::optional<DangerousWalk> found;

  const std::function<void()> dfs = [&]() {
    const int i = static_cast<int>(path.size()) - 1;
    for (Vertex u = 0; u < n && !found; ++u) {
      if (u == path[i]) continue;
      if (i >= 1 && !inst.at_least_as_good(path[i], Edge(path[i], u),
                                           Edge(path[i - 1], path[i])))
        continue;
      const Vertex a = std::min(path[i], u), b = std::max(path[i], u);
      if (used[a][b] + 1 > cap) continue;
      ++used[a][b];
      path.push_back(u);
      prefix.push_back(i >= 1 ? prefix.back() + term(path[i - 1], path[i], u)
                              : Rat(0));
      const int k = static_cast<int>(path.size()) - 1;
      if (u == path[0] && k >= 2 &&
          inst.at_least_as_good(path[0], Edge(path[0], path[1]),
                                Edge(path[k - 1], path[k]))) {
        const Rat lhs =
            prefix.back() + term(path[k - 1], path[k], path[1]);
        if (lhs > Rat(k / 2)) {
          DangerousWalk w;
          w.verts = path;
          found = std::move(w);
        }
      }
      if (!found && k < max_len) dfs();
      path.pop_back();
      prefix.pop_back();
      --used[a][b];
    }
  };

  for (Vertex v0 = 0; v0 < n && !found; ++v0) {
    path = {v0};
    prefix = {Rat(0)};  // one entry per path vertex: terms 1..i-1 so far
    dfs();
  }
  return found;
}

}  // namespace ssr

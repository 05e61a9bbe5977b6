#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include "ssr/rational.hpp"

namespace ssr {

using Vertex = int;

/** Unordered pair of distinct vertices, stored normalized with u < v. */
struct Edge {
  Vertex u = 0;
  Vertex v = 1;

  Edge() = default;
  Edge(Vertex a, Vertex b) : u(std::min(a, b)), v(std::max(a, b)) {
    if (a == b) throw std::invalid_argument("edge endpoints must differ");
  }

  bool contains(Vertex w) const { return w == u || w == v; }

  Vertex other(Vertex w) const {
    if (w == u) return v;
    if (w == v) return u;
    throw std::invalid_argument("vertex is not an endpoint of this edge");
  }

  auto operator<=>(const Edge&) const = default;
};

/** Outcome of comparing two incident edges from one vertex's point of view. */
enum class Cmp { Better, Equal, Worse };

/**
 * A set of edges kept sorted in canonical (lexicographic) order.  Small and
 * value-semantic; iteration order is deterministic by construction.
 */
class EdgeSet {
 public:
  EdgeSet() = default;
  explicit EdgeSet(std::vector<Edge> edges) : edges_(std::move(edges)) {
    std::sort(edges_.begin(), edges_.end());
    edges_.erase(std::unique(edges_.begin(), edges_.end()), edges_.end());
  }

  bool contains(Edge e) const {
    return std::binary_search(edges_.begin(), edges_.end(), e);
  }

  void insert(Edge e) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it == edges_.end() || *it != e) edges_.insert(it, e);
  }

  void erase(Edge e) {
    auto it = std::lower_bound(edges_.begin(), edges_.end(), e);
    if (it != edges_.end() && *it == e) edges_.erase(it);
  }

  std::size_t size() const { return edges_.size(); }
  bool empty() const { return edges_.empty(); }
  auto begin() const { return edges_.begin(); }
  auto end() const { return edges_.end(); }
  bool operator==(const EdgeSet&) const = default;

 private:
  std::vector<Edge> edges_;
};

inline EdgeSet unite(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_union(a.begin(), a.end(), b.begin(), b.end(),
                 std::back_inserter(out));
  return EdgeSet(std::move(out));
}

inline EdgeSet difference(const EdgeSet& a, const EdgeSet& b) {
  std::vector<Edge> out;
  std::set_difference(a.begin(), a.end(), b.begin(), b.end(),
                      std::back_inserter(out));
  return EdgeSet(std::move(out));
}

/** Raised by parse_instance; line is 1-based, or 0 for whole-file errors. */
struct ParseError : std::runtime_error {
  int line;
  ParseError(int line_no, const std::string& what_arg)
      : std::runtime_error(line_no > 0
                               ? "line " + std::to_string(line_no) + ": " + what_arg
                               : what_arg),
        line(line_no) {}
};

/**
 * A complete roommates instance with ties: an even number n of vertices,
 * every pair adjacent, and for each vertex a weak order over its n-1
 * partners.  Vertices are 0-based internally; all text I/O is 1-based.
 *
 * Preferences are stored as a rank table: rank(v, w) is the 1-based tier of
 * partner w in v's list, equal ranks meaning indifference and lower ranks
 * meaning strictly preferred.  All comparisons are O(1) lookups.
 */
class Instance {
 public:
  Instance() = default;

  explicit Instance(std::vector<std::vector<int>> ranks)
      : n_(static_cast<int>(ranks.size())), rank_(std::move(ranks)) {
    if (n_ < 2 || n_ % 2 != 0)
      throw std::invalid_argument("instance needs an even vertex count >= 2");
    for (int v = 0; v < n_; ++v) {
      if (static_cast<int>(rank_[v].size()) != n_)
        throw std::invalid_argument("rank table is not square");
      rank_[v][v] = 0;
      for (int w = 0; w < n_; ++w)
        if (w != v && rank_[v][w] < 1)
          throw std::invalid_argument("ranks must be positive");
    }
    for (Vertex u = 0; u < n_; ++u)
      for (Vertex v = u + 1; v < n_; ++v) edges_.emplace_back(u, v);
  }

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }

  /** All edges in canonical order; edge_at(edge_id(e)) == e. */
  const std::vector<Edge>& all_edges() const { return edges_; }
  Edge edge_at(int id) const { return edges_.at(id); }

  int edge_id(Edge e) const {
    check_vertex(e.u);
    check_vertex(e.v);
    return e.u * n_ - e.u * (e.u + 1) / 2 + (e.v - e.u - 1);
  }

  /** 1-based preference tier of partner w in v's list (lower is better). */
  int rank(Vertex v, Vertex w) const {
    check_vertex(v);
    check_vertex(w);
    if (v == w) throw std::invalid_argument("rank of a vertex at itself");
    return rank_[v][w];
  }

  int rank(Vertex v, Edge e) const { return rank(v, e.other(v)); }

  /** How v compares incident edges e and f; both must contain v. */
  Cmp compare(Vertex v, Edge e, Edge f) const {
    const int re = rank(v, e), rf = rank(v, f);
    if (re < rf) return Cmp::Better;
    if (re > rf) return Cmp::Worse;
    return Cmp::Equal;
  }

  /** True when v finds e at least as good as f. */
  bool at_least_as_good(Vertex v, Edge e, Edge f) const {
    return compare(v, e, f) != Cmp::Worse;
  }

  /** Edges incident to v, in canonical order. */
  std::vector<Edge> incident(Vertex v) const {
    check_vertex(v);
    std::vector<Edge> out;
    out.reserve(n_ - 1);
    for (Vertex w = 0; w < n_; ++w)
      if (w != v) out.push_back(Edge(v, w));
    std::sort(out.begin(), out.end());
    return out;
  }

  /**
   * Incident edges v finds better than e (strict) or at least as good as e
   * (non-strict; then e itself is included).
   */
  EdgeSet upper_set(Vertex v, Edge e, bool strict) const {
    const int re = rank(v, e);
    std::vector<Edge> out;
    for (Vertex w = 0; w < n_; ++w) {
      if (w == v) continue;
      const int rw = rank_[v][w];
      if (strict ? rw < re : rw <= re) out.push_back(Edge(v, w));
    }
    return EdgeSet(std::move(out));
  }

  /** Incident edges v finds worse than e, or at most as good as e. */
  EdgeSet lower_set(Vertex v, Edge e, bool strict) const {
    const int re = rank(v, e);
    std::vector<Edge> out;
    for (Vertex w = 0; w < n_; ++w) {
      if (w == v) continue;
      const int rw = rank_[v][w];
      if (strict ? rw > re : rw >= re) out.push_back(Edge(v, w));
    }
    return EdgeSet(std::move(out));
  }

  /** Number of tie merges: sum over v of (n-1 minus distinct ranks at v). */
  int tie_count() const {
    int total = 0;
    for (Vertex v = 0; v < n_; ++v) {
      std::vector<int> rs;
      for (Vertex w = 0; w < n_; ++w)
        if (w != v) rs.push_back(rank_[v][w]);
      std::sort(rs.begin(), rs.end());
      rs.erase(std::unique(rs.begin(), rs.end()), rs.end());
      total += (n_ - 1) - static_cast<int>(rs.size());
    }
    return total;
  }

  bool has_ties() const { return tie_count() > 0; }

  bool operator==(const Instance&) const = default;

 private:
  void check_vertex(Vertex v) const {
    if (v < 0 || v >= n_) throw std::invalid_argument("vertex out of range");
  }

  int n_ = 0;
  std::vector<std::vector<int>> rank_;
  std::vector<Edge> edges_;
};

/**
 * Parses the text instance format: one line per vertex,
 *
 *   <v>: <p1> <p2> (<p3> <p4>) <p5> ...
 *
 * where parenthesized partners are tied.  '#' starts a comment, blank lines
 * are skipped, vertex lines may appear in any order, ids must be exactly
 * 1..n with n even.  Errors name the offending line.
 */
inline Instance parse_instance(const std::string& text) {
  struct Entry {
    int line;
    std::vector<std::vector<int>> groups;
  };
  std::vector<std::pair<int, Entry>> entries;  // (external id, entry)

  std::istringstream in(text);
  std::string raw;
  int line_no = 0;
  while (std::getline(in, raw)) {
    ++line_no;
    if (auto hash = raw.find('#'); hash != std::string::npos) raw.resize(hash);
    // Space out parentheses so plain stream extraction tokenizes them.
    std::string spaced;
    for (char c : raw) {
      if (c == '(' || c == ')') {
        spaced += ' ';
        spaced += c;
        spaced += ' ';
      } else {
        spaced += c;
      }
    }
    std::istringstream ls(spaced);
    std::string tok;
    if (!(ls >> tok)) continue;  // blank or comment-only line

    // Header token is "<v>:" (the colon may also arrive glued to the id).
    if (tok.back() != ':') throw ParseError(line_no, "expected '<vertex>:'");
    tok.pop_back();
    int ext = 0;
    try {
      std::size_t used = 0;
      ext = std::stoi(tok, &used);
      if (used != tok.size()) throw std::invalid_argument("");
    } catch (const std::exception&) {
      throw ParseError(line_no, "bad vertex id '" + tok + "'");
    }
    if (ext < 1) throw ParseError(line_no, "vertex ids must be positive");
    for (const auto& [id, e] : entries)
      if (id == ext)
        throw ParseError(line_no,
                         "duplicate line for vertex " + std::to_string(ext));

    Entry entry{line_no, {}};
    bool in_tie = false;
    while (ls >> tok) {
      if (tok == "(") {
        if (in_tie) throw ParseError(line_no, "nested tie group");
        entry.groups.emplace_back();
        in_tie = true;
      } else if (tok == ")") {
        if (!in_tie) throw ParseError(line_no, "')' without '('");
        if (entry.groups.back().empty())
          throw ParseError(line_no, "empty tie group");
        in_tie = false;
      } else {
        int w = 0;
        try {
          std::size_t used = 0;
          w = std::stoi(tok, &used);
          if (used != tok.size()) throw std::invalid_argument("");
        } catch (const std::exception&) {
          throw ParseError(line_no, "bad token '" + tok + "'");
        }
        if (w < 1) throw ParseError(line_no, "vertex ids must be positive");
        if (!in_tie) entry.groups.emplace_back();
        entry.groups.back().push_back(w);
      }
    }
    if (in_tie) throw ParseError(line_no, "unclosed tie group");
    entries.emplace_back(ext, std::move(entry));
  }

  const int n = static_cast<int>(entries.size());
  if (n == 0) throw ParseError(0, "empty instance");
  if (n % 2 != 0)
    throw ParseError(0, "instance must have an even number of vertices, got " +
                            std::to_string(n));

  std::vector<std::vector<int>> ranks(n, std::vector<int>(n, 0));
  for (const auto& [ext, entry] : entries) {
    if (ext > n)
      throw ParseError(entry.line, "vertex id " + std::to_string(ext) +
                                       " out of range 1.." + std::to_string(n));
    const Vertex v = ext - 1;
    std::vector<bool> seen(n, false);
    int tier = 0;
    for (const auto& group : entry.groups) {
      ++tier;
      for (int wx : group) {
        if (wx == ext)
          throw ParseError(entry.line,
                           "vertex " + std::to_string(ext) + " lists itself");
        if (wx > n)
          throw ParseError(entry.line, "vertex id " + std::to_string(wx) +
                                           " out of range 1.." +
                                           std::to_string(n));
        if (seen[wx - 1])
          throw ParseError(entry.line, "vertex " + std::to_string(ext) +
                                           " lists " + std::to_string(wx) +
                                           " twice");
        seen[wx - 1] = true;
        ranks[v][wx - 1] = tier;
      }
    }
    for (int w = 0; w < n; ++w)
      if (w != v && !seen[w])
        throw ParseError(entry.line, "vertex " + std::to_string(ext) +
                                         " does not rank " +
                                         std::to_string(w + 1));
  }
  return Instance(std::move(ranks));
}

/**
 * Canonical text form: vertices ascending, tiers ascending, members of a
 * tie ascending and parenthesized only when the tie has two or more members.
 * parse_instance(serialize(i)) == i.
 */
inline std::string serialize(const Instance& inst) {
  const int n = inst.vertex_count();
  std::string out;
  for (Vertex v = 0; v < n; ++v) {
    out += std::to_string(v + 1);
    out += ':';
    std::vector<Vertex> partners;
    for (Vertex w = 0; w < n; ++w)
      if (w != v) partners.push_back(w);
    std::stable_sort(partners.begin(), partners.end(),
                     [&](Vertex a, Vertex b) {
                       return inst.rank(v, a) < inst.rank(v, b);
                     });
    for (std::size_t i = 0; i < partners.size();) {
      std::size_t j = i;
      while (j < partners.size() &&
             inst.rank(v, partners[j]) == inst.rank(v, partners[i]))
        ++j;
      out += ' ';
      if (j - i > 1) out += '(';
      for (std::size_t k = i; k < j; ++k) {
        if (k > i) out += ' ';
        out += std::to_string(partners[k] + 1);
      }
      if (j - i > 1) out += ')';
      i = j;
    }
    out += '\n';
  }
  return out;
}

/**
 * Deterministic random instance: each vertex's partner order is a uniform
 * shuffle, then each consecutive pair is merged into one tie tier with
 * probability tie_bias (a rational in [0,1], applied exactly).
 *
 * Identical (n, seed, tie_bias) give identical instances on any platform:
 * shuffling and merging consume raw mt19937_64 outputs directly (the
 * distribution adapters in <random> are implementation-defined).
 */
inline Instance gen_random(int n, std::uint64_t seed, const Rat& tie_bias) {
  if (n < 2 || n % 2 != 0)
    throw std::invalid_argument("vertex count must be even and >= 2");
  if (tie_bias < 0 || tie_bias > 1)
    throw std::invalid_argument("tie bias must lie in [0,1]");
  const BigInt p = numerator(tie_bias);
  const BigInt q = denominator(tie_bias);

  std::mt19937_64 rng(seed);
  std::vector<std::vector<int>> ranks(n, std::vector<int>(n, 0));
  for (Vertex v = 0; v < n; ++v) {
    std::vector<Vertex> partners;
    for (Vertex w = 0; w < n; ++w)
      if (w != v) partners.push_back(w);
    for (std::size_t i = partners.size() - 1; i > 0; --i) {
      const std::size_t j = static_cast<std::size_t>(rng() % (i + 1));
      std::swap(partners[i], partners[j]);
    }
    int tier = 1;
    ranks[v][partners[0]] = tier;
    for (std::size_t i = 1; i < partners.size(); ++i) {
      const bool merge = BigInt(rng()) % q < p;
      if (!merge) ++tier;
      ranks[v][partners[i]] = tier;
    }
  }
  return Instance(std::move(ranks));
}

}  // namespace ssr

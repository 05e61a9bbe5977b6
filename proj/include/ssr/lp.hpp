#pragma once

#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "ssr/instance.hpp"
#include "ssr/rational.hpp"

namespace ssr {

/**
 * A dense exact-rational vector indexed by edge, the candidate point the
 * solver and the separation oracle pass back and forth.
 */
class RationalVector {
 public:
  RationalVector() = default;
  explicit RationalVector(int vertex_count)
      : n_(vertex_count),
        val_(static_cast<std::size_t>(vertex_count) * (vertex_count - 1) / 2) {}

  int vertex_count() const { return n_; }
  int dimension() const { return static_cast<int>(val_.size()); }
  bool empty() const { return val_.empty(); }

  Rat& operator[](Edge e) { return val_[index(e)]; }
  const Rat& operator[](Edge e) const { return val_[index(e)]; }

  Rat sum(const EdgeSet& edges) const {
    Rat total = 0;
    for (Edge e : edges) total += (*this)[e];
    return total;
  }

  bool nonnegative() const {
    for (const Rat& r : val_) {
      if (r < 0) return false;
    }
    return true;
  }

  bool operator==(const RationalVector&) const = default;

 private:
  std::size_t index(Edge e) const {
    if (e.u < 0 || e.v >= n_)
      throw std::invalid_argument("edge outside this vector's vertex range");
    return static_cast<std::size_t>(e.u) * n_ - e.u * (e.u + 1) / 2 +
           (e.v - e.u - 1);
  }

  int n_ = 0;
  std::vector<Rat> val_;
};

enum class Sense { Eq, Ge, Le };

enum class RowKind { Degree, NoWeakBlock, DangerousCut };

/** Identifies where a row came from; used for dedup and reporting. */
struct RowTag {
  RowKind kind = RowKind::Degree;
  Vertex vertex = -1;          // Degree rows
  Edge edge{};                 // NoWeakBlock rows
  std::vector<Vertex> cycle;   // DangerousCut rows: canonical vertex cycle

  bool operator==(const RowTag&) const = default;

  std::string str() const {
    switch (kind) {
      case RowKind::Degree:
        return "degree " + std::to_string(vertex + 1);
      case RowKind::NoWeakBlock:
        return "no-weak-block " + std::to_string(edge.u + 1) + " " +
               std::to_string(edge.v + 1);
      case RowKind::DangerousCut: {
        std::string s = "cut";
        for (Vertex v : cycle) s += " " + std::to_string(v + 1);
        return s;
      }
    }
    return "?";
  }
};

/** One linear row: sparse exact coefficients, a sense, and a rhs. */
struct Constraint {
  std::vector<std::pair<Edge, Rat>> coeffs;  // sorted by edge, nonzero
  Sense sense = Sense::Ge;
  Rat rhs = 0;
  RowTag tag;

  Rat lhs(const RationalVector& x) const {
    Rat total = 0;
    for (const auto& [e, c] : coeffs) total += c * x[e];
    return total;
  }

  bool satisfied_by(const RationalVector& x) const {
    const Rat v = lhs(x);
    switch (sense) {
      case Sense::Eq: return v == rhs;
      case Sense::Ge: return v >= rhs;
      case Sense::Le: return v <= rhs;
    }
    return false;
  }
};

/**
 * The always-present rows of the feasibility system over a given instance:
 *
 *   (1) for every vertex v:  sum of x over edges at v equals 1;
 *   (2) for every edge e:    x(e) plus, for each endpoint v, the mass v
 *       places on edges it strictly prefers to e, is at least 1
 *       (otherwise e would weakly block any matching the point describes).
 *
 * Order: degree rows by vertex, then no-weak-block rows by edge, ascending.
 */
inline std::vector<Constraint> build_base_constraints(const Instance& inst) {
  std::vector<Constraint> rows;
  const int n = inst.vertex_count();
  for (Vertex v = 0; v < n; ++v) {
    Constraint c;
    for (Edge e : inst.incident(v)) c.coeffs.emplace_back(e, 1);
    std::sort(c.coeffs.begin(), c.coeffs.end());
    c.sense = Sense::Eq;
    c.rhs = 1;
    c.tag = RowTag{RowKind::Degree, v, Edge{}, {}};
    rows.push_back(std::move(c));
  }
  for (Edge e : inst.all_edges()) {
    std::vector<std::pair<Edge, Rat>> acc;
    acc.emplace_back(e, 1);
    for (Vertex v : {e.u, e.v})
      for (Edge f : inst.upper_set(v, e, /*strict=*/true))
        acc.emplace_back(f, 1);
    std::sort(acc.begin(), acc.end());
    Constraint c;
    for (const auto& [f, val] : acc) {
      if (!c.coeffs.empty() && c.coeffs.back().first == f)
        c.coeffs.back().second += val;
      else
        c.coeffs.emplace_back(f, val);
    }
    c.sense = Sense::Ge;
    c.rhs = 1;
    c.tag = RowTag{RowKind::NoWeakBlock, -1, e, {}};
    rows.push_back(std::move(c));
  }
  return rows;
}

enum class Status { Feasible, Infeasible };

struct SolveOutcome {
  Status status = Status::Infeasible;
  RationalVector point;        // valid iff status == Feasible
  int cuts_added = 0;
  int active_constraints = 0;  // rows in the final system
};

/**
 * Exact phase-1 primal simplex: decides feasibility of the given rows over
 * nonnegative structural variables (one per edge of an n-vertex complete
 * graph) by minimizing the sum of artificial variables with Bland's rule.
 *
 * Fully deterministic: row order as given, columns ordered structural /
 * surplus-slack / artificial, lowest-index entering column, lowest basic
 * index breaking ratio-test ties.  Every Feasible outcome is re-checked
 * against every input row before being returned.
 */
inline SolveOutcome solve_feasibility(const std::vector<Constraint>& rows,
                                      int vertex_count) {
  const int dim = vertex_count * (vertex_count - 1) / 2;
  const int m = static_cast<int>(rows.size());
  auto col_of = [&](Edge e) {
    return static_cast<int>(e.u) * vertex_count - e.u * (e.u + 1) / 2 +
           (e.v - e.u - 1);
  };

  // Count extra columns; layout: [0,dim) structural, then per-row extras.
  int extra = 0;
  for (const Constraint& c : rows)
    extra += (c.sense == Sense::Eq) ? 1 : ((c.sense == Sense::Ge) ? 2 : 1);
  const int total = dim + extra;

  std::vector<std::vector<Rat>> t(m, std::vector<Rat>(total + 1, Rat(0)));
  std::vector<int> basis(m, -1);
  std::vector<bool> artificial(total, false);

  int next = dim;
  for (int i = 0; i < m; ++i) {
    const Constraint& c = rows[i];
    for (const auto& [e, coef] : c.coeffs) t[i][col_of(e)] = coef;
    t[i][total] = c.rhs;
    Sense sense = c.sense;
    if (t[i][total] < 0) {  // normalize rhs >= 0
      for (int j = 0; j <= total; ++j) t[i][j] = -t[i][j];
      if (sense == Sense::Ge) sense = Sense::Le;
      else if (sense == Sense::Le) sense = Sense::Ge;
    }
    if (sense == Sense::Le) {
      t[i][next] = 1;  // slack, initially basic
      basis[i] = next++;
    } else {
      if (sense == Sense::Ge) t[i][next++] = -1;  // surplus
      t[i][next] = 1;                             // artificial
      artificial[next] = true;
      basis[i] = next++;
    }
  }

  while (true) {
    // Phase-1 reduced cost of a non-artificial column j is minus the sum of
    // t[i][j] over rows whose basic variable is still artificial.
    std::vector<char> is_basic(total, 0);
    std::vector<int> art_rows;
    for (int i = 0; i < m; ++i) {
      is_basic[basis[i]] = 1;
      if (artificial[basis[i]]) art_rows.push_back(i);
    }
    int enter = -1;
    for (int j = 0; j < total && enter < 0; ++j) {
      if (artificial[j] || is_basic[j]) continue;  // artificials never re-enter
      Rat red = 0;
      for (int i : art_rows) red -= t[i][j];
      if (red < 0) enter = j;
    }
    if (enter < 0) break;

    int leave = -1;
    Rat best_ratio = 0;
    for (int i = 0; i < m; ++i) {
      if (t[i][enter] <= 0) continue;
      const Rat ratio = t[i][total] / t[i][enter];
      if (leave < 0 || ratio < best_ratio ||
          (ratio == best_ratio && basis[i] < basis[leave])) {
        leave = i;
        best_ratio = ratio;
      }
    }
    if (leave < 0)
      throw std::logic_error("phase-1 objective unbounded; solver bug");

    const Rat pivot = t[leave][enter];
    for (int j = 0; j <= total; ++j) t[leave][j] /= pivot;
    for (int i = 0; i < m; ++i) {
      if (i == leave || t[i][enter] == 0) continue;
      const Rat factor = t[i][enter];
      for (int j = 0; j <= total; ++j) t[i][j] -= factor * t[leave][j];
    }
    basis[leave] = enter;
  }

  Rat objective = 0;
  for (int i = 0; i < m; ++i)
    if (artificial[basis[i]]) objective += t[i][total];

  SolveOutcome out;
  out.active_constraints = m;
  if (objective > 0) {
    out.status = Status::Infeasible;
    return out;
  }
  out.status = Status::Feasible;
  out.point = RationalVector(vertex_count);
  std::vector<Edge> edge_of_col;
  edge_of_col.reserve(dim);
  for (Vertex u = 0; u < vertex_count; ++u)
    for (Vertex v = u + 1; v < vertex_count; ++v) edge_of_col.emplace_back(u, v);
  for (int i = 0; i < m; ++i)
    if (basis[i] < dim) out.point[edge_of_col[basis[i]]] = t[i][total];
  for (const Constraint& c : rows)
    if (!c.satisfied_by(out.point))
      throw std::logic_error("feasible point fails residual check: " +
                             c.tag.str());
  if (!out.point.nonnegative())
    throw std::logic_error("feasible point has a negative entry");
  return out;
}

/**
 * Machine-readable dump: status line, nonzero entries as "u v value" in
 * canonical edge order (1-based ids), then the cut count.
 */
inline std::string format_outcome(const SolveOutcome& out) {
  std::string s = out.status == Status::Feasible ? "status feasible\n"
                                                 : "status infeasible\n";
  if (out.status == Status::Feasible) {
    const int n = out.point.vertex_count();
    for (Vertex u = 0; u < n; ++u)
      for (Vertex v = u + 1; v < n; ++v) {
        const Rat& val = out.point[Edge(u, v)];
        if (val != 0)
          s += std::to_string(u + 1) + " " + std::to_string(v + 1) + " " +
               format_rat(val) + "\n";
      }
  }
  s += "cuts " + std::to_string(out.cuts_added) + "\n";
  return s;
}

}  // namespace ssr

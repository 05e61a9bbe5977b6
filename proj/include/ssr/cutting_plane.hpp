#pragma once

#include <functional>
#include <set>
#include <stdexcept>
#include <utility>
#include <vector>

#include "ssr/lp.hpp"
#include "ssr/separation.hpp"

namespace ssr {

/** Observation hooks for tests and reporting; both may be empty. */
struct CuttingPlaneOptions {
  std::function<void(const RationalVector&)> on_iterate;  // every LP point
  std::function<void(const Constraint&)> on_cut;          // every added cut
};

/**
 * Decides whether the full constraint system of the instance has a
 * solution: solve the base rows, ask the separation oracle for a violated
 * odd-cycle row, add it, repeat.  Arcs of the separation digraph do not
 * depend on x, so there are finitely many candidate cuts and the loop
 * terminates; a repeated cut would mean the oracle or solver is broken and
 * trips an internal error instead of looping forever.
 */
inline SolveOutcome cutting_plane_solve(const Instance& inst,
                                        const CuttingPlaneOptions& opts = {}) {
  std::vector<Constraint> rows = build_base_constraints(inst);
  const int base = static_cast<int>(rows.size());
  std::set<std::vector<Vertex>> seen;

  while (true) {
    SolveOutcome out = solve_feasibility(rows, inst.vertex_count());
    out.cuts_added = static_cast<int>(rows.size()) - base;
    out.active_constraints = static_cast<int>(rows.size());
    if (out.status == Status::Infeasible) return out;
    if (opts.on_iterate) opts.on_iterate(out.point);

    std::optional<Constraint> cut = separate(inst, out.point);
    if (!cut) return out;
    if (cut->tag.kind != RowKind::DangerousCut)
      throw std::logic_error("LP returned a point violating a base row: " +
                             cut->tag.str());
    if (!seen.insert(cut->tag.cycle).second)
      throw std::logic_error("separation repeated cut " + cut->tag.str());
    if (opts.on_cut) opts.on_cut(*cut);
    rows.push_back(std::move(*cut));
  }
}

}  // namespace ssr

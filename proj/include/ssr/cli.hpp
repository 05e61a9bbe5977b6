#pragma once

#include <chrono>
#include <cstdint>
#include <fstream>
#include <optional>
#include <ostream>
#include <sstream>
#include <string>
#include <vector>

#include "ssr/cutting_plane.hpp"
#include "ssr/extraction.hpp"
#include "ssr/verify.hpp"

namespace ssr {

/** Summary of one solver run, for programmatic use and --stats. */
struct RunReport {
  int n = 0;
  int ties = 0;
  Status status = Status::Infeasible;
  std::optional<Matching> matching;
  int cuts = 0;
  int iterations = 0;  // LP solves: always cuts + 1
  double wall_seconds = 0;
  int exit_code = 0;
};

struct SolveFlags {
  bool point = false;
  bool certificate = false;
  bool cuts = false;
  bool stats = false;
};

namespace detail {

inline std::optional<std::string> read_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) return std::nullopt;
  std::ostringstream buf;
  buf << in.rdbuf();
  return buf.str();
}

inline std::string edge_str(Edge e) {
  return std::to_string(e.u + 1) + " " + std::to_string(e.v + 1);
}

inline std::string render_constraint(const Constraint& c) {
  std::string s = "[" + c.tag.str() + "] ";
  bool first = true;
  for (const auto& [e, coef] : c.coeffs) {
    if (!first) s += " + ";
    first = false;
    if (coef != 1) s += format_rat(coef) + "*";
    s += "x(" + std::to_string(e.u + 1) + "," + std::to_string(e.v + 1) + ")";
  }
  switch (c.sense) {
    case Sense::Eq: s += " = "; break;
    case Sense::Ge: s += " >= "; break;
    case Sense::Le: s += " <= "; break;
  }
  s += format_rat(c.rhs);
  return s;
}

inline std::string cmp_word(Cmp c) {
  switch (c) {
    case Cmp::Better: return "better";
    case Cmp::Equal: return "equal";
    case Cmp::Worse: return "worse";
  }
  return "?";
}

inline void print_certificate(std::ostream& out, const Instance& inst,
                              const HalfStructure& hs,
                              const Decomposition& dec) {
  out << "# certificate\n";
  for (Vertex v = 0; v < inst.vertex_count(); ++v)
    out << "d " << v + 1 << " " << hs.partner[v] + 1 << "\n";
  out << "mutual:";
  for (Vertex v = 0; v < inst.vertex_count(); ++v)
    if (hs.mutual[v]) out << " " << v + 1;
  out << "\n";
  for (const auto& cyc : dec.cycles) {
    out << "cycle:";
    for (Vertex v : cyc) out << " " << v + 1;
    out << "\n";
  }
  for (Edge e : dec.half_edges) out << "L " << edge_str(e) << "\n";
  for (Edge e : dec.mutual_edges) out << "M " << edge_str(e) << "\n";
  for (Edge e : block_set(inst, hs)) out << "B " << edge_str(e) << "\n";
  out << "picked:";
  for (Vertex v = 0; v < inst.vertex_count(); ++v)
    if (dec.picked[v]) out << " " << v + 1;
  out << "\n";
}

}  // namespace detail

/**
 * Solves the instance in `path`.  Prints the matching ("u v" per line) or
 * "NO SUPER-STABLE MATCHING"; optional blocks follow in a fixed order.
 * Exit code 0 when a matching exists, 2 when provably none does, 1 on
 * input errors.  Output is byte-identical across repeated runs; wall time
 * goes to err and only with --stats.
 */
inline int run_solve(const std::string& path, const SolveFlags& flags,
                     std::ostream& out, std::ostream& err,
                     RunReport* report = nullptr) {
  const auto text = detail::read_file(path);
  if (!text) {
    err << "cannot read '" << path << "'\n";
    return 1;
  }
  Instance inst;
  try {
    inst = parse_instance(*text);
  } catch (const ParseError& e) {
    err << path << ": " << e.what() << "\n";
    return 1;
  }

  std::vector<Constraint> collected_cuts;
  CuttingPlaneOptions opts;
  if (flags.cuts)
    opts.on_cut = [&](const Constraint& c) { collected_cuts.push_back(c); };

  const auto t0 = std::chrono::steady_clock::now();
  const SolveOutcome outcome = cutting_plane_solve(inst, opts);
  RunReport rep;
  rep.n = inst.vertex_count();
  rep.ties = inst.tie_count();
  rep.status = outcome.status;
  rep.cuts = outcome.cuts_added;
  rep.iterations = outcome.cuts_added + 1;

  if (outcome.status == Status::Feasible) {
    const Matching mu = extract_matching(inst, outcome.point);
    for (Edge e : mu.edges()) out << detail::edge_str(e) << "\n";
    rep.matching = mu;
    rep.exit_code = 0;
  } else {
    out << "NO SUPER-STABLE MATCHING\n";
    rep.exit_code = 2;
  }
  if (flags.point) {
    out << "# point\n";
    out << format_outcome(outcome);
  }
  if (flags.certificate && outcome.status == Status::Feasible) {
    const HalfStructure hs = half_structure(inst, outcome.point);
    const Decomposition dec = build_decomposition(inst, hs);
    detail::print_certificate(out, inst, hs, dec);
  }
  if (flags.cuts) {
    out << "# cuts\n";
    for (const Constraint& c : collected_cuts)
      out << detail::render_constraint(c) << "\n";
  }
  rep.wall_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - t0)
          .count();
  if (flags.stats)
    err << "n " << rep.n << "\nties " << rep.ties << "\ncuts " << rep.cuts
        << "\niterations " << rep.iterations << "\nwall_seconds "
        << rep.wall_seconds << "\n";
  if (report) *report = rep;
  return rep.exit_code;
}

/**
 * Checks a matching file ("u v" per line, 1-based) against an instance:
 * prints "super-stable" (exit 0) or every weakly blocking edge with the
 * endpoint comparisons (exit 2); malformed input exits 1.
 */
inline int run_check(const std::string& inst_path,
                     const std::string& matching_path, std::ostream& out,
                     std::ostream& err) {
  const auto text = detail::read_file(inst_path);
  if (!text) {
    err << "cannot read '" << inst_path << "'\n";
    return 1;
  }
  Instance inst;
  try {
    inst = parse_instance(*text);
  } catch (const ParseError& e) {
    err << inst_path << ": " << e.what() << "\n";
    return 1;
  }
  const auto mtext = detail::read_file(matching_path);
  if (!mtext) {
    err << "cannot read '" << matching_path << "'\n";
    return 1;
  }
  std::vector<Edge> edges;
  Matching mu;
  try {
    std::istringstream in(*mtext);
    std::string line;
    int line_no = 0;
    while (std::getline(in, line)) {
      ++line_no;
      if (auto hash = line.find('#'); hash != std::string::npos)
        line.resize(hash);
      std::istringstream ls(line);
      int a = 0, b = 0;
      if (!(ls >> a)) continue;
      std::string rest;
      if (!(ls >> b) || (ls >> rest))
        throw ParseError(line_no, "expected 'u v'");
      if (a < 1 || b < 1 || a > inst.vertex_count() ||
          b > inst.vertex_count() || a == b)
        throw ParseError(line_no, "bad pair");
      edges.emplace_back(a - 1, b - 1);
    }
    mu = Matching::from_edges(inst.vertex_count(), edges);
  } catch (const std::exception& e) {
    err << matching_path << ": not a perfect matching: " << e.what() << "\n";
    return 1;
  }

  const BlockReport report = is_super_stable(inst, mu);
  if (report.super_stable()) {
    out << "super-stable\n";
    return 0;
  }
  for (const BlockWitness& w : report.blocking)
    out << "blocking " << detail::edge_str(w.edge) << " (" << w.edge.u + 1
        << ": " << detail::cmp_word(w.at_u) << ", " << w.edge.v + 1 << ": "
        << detail::cmp_word(w.at_v) << ")\n";
  out << "not super-stable (" << report.blocking.size()
      << " weakly blocking edges)\n";
  return 2;
}

/** Emits a random instance (stdout, or out_path when nonempty). */
inline int run_gen(int n, std::uint64_t seed, const std::string& ties,
                   const std::string& out_path, std::ostream& out,
                   std::ostream& err) {
  Rat bias;
  Instance inst;
  try {
    bias = parse_rat(ties);
    inst = gen_random(n, seed, bias);
  } catch (const std::exception& e) {
    err << e.what() << "\n";
    return 1;
  }
  const std::string text = serialize(inst);
  if (out_path.empty()) {
    out << text;
    return 0;
  }
  std::ofstream f(out_path);
  if (!f) {
    err << "cannot write '" << out_path << "'\n";
    return 1;
  }
  f << text;
  return 0;
}

namespace detail {

inline std::uint64_t splitmix64(std::uint64_t z) {
  z += 0x9e3779b97f4a7c15ULL;
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

inline std::uint64_t mix_seed(std::uint64_t seed, std::uint64_t a,
                              std::uint64_t b, std::uint64_t c) {
  std::uint64_t s = splitmix64(seed ^ a);
  s = splitmix64(s ^ b);
  return splitmix64(s ^ c);
}

}  // namespace detail

/**
 * Cross-validates the LP solver against brute force on random instances:
 * for every even n up to max_n and tie bias in {0, 1/4, 1/2, 3/4, 1},
 * `count` instances each.  Prints an agreement matrix and any mismatching
 * instance verbatim.  Exit 0 on full agreement, 2 otherwise.
 */
inline int run_compare(int max_n, int count, std::uint64_t seed,
                       std::ostream& out, std::ostream& err) {
  if (max_n < 2 || max_n % 2 != 0) {
    err << "max-n must be even and >= 2\n";
    return 1;
  }
  if (max_n > 10) {
    err << "brute force handles at most 10 vertices\n";
    return 1;
  }
  if (count < 1) {
    err << "count must be positive\n";
    return 1;
  }
  const std::vector<Rat> biases{Rat(0), Rat(1, 4), Rat(1, 2), Rat(3, 4),
                                Rat(1)};
  long total = 0, agreed = 0;
  for (int n = 2; n <= max_n; n += 2) {
    for (std::size_t bi = 0; bi < biases.size(); ++bi) {
      int feasible = 0, agree_here = 0;
      for (int i = 0; i < count; ++i) {
        const Instance inst = gen_random(
            n, detail::mix_seed(seed, static_cast<std::uint64_t>(n), bi,
                                static_cast<std::uint64_t>(i)),
            biases[bi]);
        const SolveOutcome outcome = cutting_plane_solve(inst);
        const auto brute = brute_force_super_stable(inst);
        const bool solver_yes = outcome.status == Status::Feasible;
        if (solver_yes) ++feasible;
        ++total;
        if (solver_yes == brute.has_value()) {
          ++agreed;
          ++agree_here;
        } else {
          out << "MISMATCH n=" << n << " ties=" << format_rat(biases[bi])
              << " index=" << i << " solver="
              << (solver_yes ? "feasible" : "infeasible") << " brute="
              << (brute ? "found" : "none") << "\n"
              << serialize(inst);
        }
      }
      out << "n=" << n << " ties=" << format_rat(biases[bi])
          << " count=" << count << " feasible=" << feasible
          << " agree=" << agree_here << "\n";
    }
  }
  out << "total " << total << " agree " << agreed << "\n";
  return total == agreed ? 0 : 2;
}

}  // namespace ssr

#include <catch2/catch_amalgamated.hpp>

#include <set>

#include "fixtures.hpp"
#include "ssr/cutting_plane.hpp"
#include "ssr/verify.hpp"

using namespace ssr;

TEST_CASE("two vertices: the forced matching point, no cuts") {
  const Instance inst = parse_instance(fixtures::I2);
  const SolveOutcome out = cutting_plane_solve(inst);
  REQUIRE(out.status == Status::Feasible);
  CHECK(out.point[Edge(0, 1)] == 1);
  CHECK(out.cuts_added == 0);
  CHECK(out.active_constraints == 3);
}

TEST_CASE("base-infeasible fixtures stop before any separation") {
  for (const std::string& text : {fixtures::I4_NONE, fixtures::I4_TIES}) {
    const Instance inst = parse_instance(text);
    int iterate_calls = 0;
    int cut_calls = 0;
    CuttingPlaneOptions opts;
    opts.on_iterate = [&](const RationalVector&) { ++iterate_calls; };
    opts.on_cut = [&](const Constraint&) { ++cut_calls; };
    const SolveOutcome out = cutting_plane_solve(inst, opts);
    CHECK(out.status == Status::Infeasible);
    CHECK(out.cuts_added == 0);
    CHECK(iterate_calls == 0);
    CHECK(cut_calls == 0);
  }
}

TEST_CASE("feasible fixtures terminate with a point no row rejects") {
  for (const std::string& text :
       {fixtures::I4_GOOD, fixtures::C4_RING, fixtures::C4_CHORD}) {
    const Instance inst = parse_instance(text);

    std::vector<RationalVector> iterates;
    std::vector<Constraint> cuts;
    CuttingPlaneOptions opts;
    opts.on_iterate = [&](const RationalVector& x) { iterates.push_back(x); };
    opts.on_cut = [&](const Constraint& c) { cuts.push_back(c); };

    const SolveOutcome out = cutting_plane_solve(inst, opts);
    REQUIRE(out.status == Status::Feasible);
    REQUIRE(!iterates.empty());
    CHECK(out.point == iterates.back());
    CHECK((int)cuts.size() == out.cuts_added);
    CHECK(iterates.size() == cuts.size() + 1);
    CHECK(out.active_constraints ==
          (int)build_base_constraints(inst).size() + out.cuts_added);

    // Every cut was genuinely violated by the iterate that produced it.
    for (std::size_t k = 0; k < cuts.size(); ++k) {
      CHECK(cuts[k].tag.kind == RowKind::DangerousCut);
      CHECK(!cuts[k].satisfied_by(iterates[k]));
      CHECK(cuts[k].satisfied_by(out.point));
    }
    // No cut row is issued twice.
    std::set<std::vector<Vertex>> seen;
    for (const Constraint& c : cuts) CHECK(seen.insert(c.tag.cycle).second);

    // The final point really lies in the region: separation finds nothing.
    CHECK(!separate(inst, out.point).has_value());
    for (const Constraint& row : build_base_constraints(inst))
      CHECK(row.satisfied_by(out.point));
  }
}

TEST_CASE("existence answers match brute force on small random instances") {
  for (int n : {4, 6}) {
    for (unsigned seed : {11u, 12u, 13u, 14u}) {
      for (const char* bias : {"0", "1/2", "1"}) {
        const Instance inst = gen_random(n, seed, parse_rat(bias));
        const SolveOutcome out = cutting_plane_solve(inst);
        const auto mu = brute_force_super_stable(inst);
        INFO("n=" << n << " seed=" << seed << " ties=" << bias);
        CHECK((out.status == Status::Feasible) == mu.has_value());
        if (out.status == Status::Feasible)
          CHECK(!separate(inst, out.point).has_value());
      }
    }
  }
}

TEST_CASE("solving twice is bit-for-bit deterministic") {
  const Instance inst = gen_random(6, 77, Rat(1, 2));
  const SolveOutcome a = cutting_plane_solve(inst);
  const SolveOutcome b = cutting_plane_solve(inst);
  CHECK(a.status == b.status);
  CHECK(a.cuts_added == b.cuts_added);
  if (a.status == Status::Feasible) CHECK(a.point == b.point);
}

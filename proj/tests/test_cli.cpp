#include <catch2/catch_amalgamated.hpp>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "fixtures.hpp"
#include "ssr/cli.hpp"

using namespace ssr;
namespace fs = std::filesystem;

namespace {

fs::path write_temp(const std::string& name, const std::string& text) {
  const fs::path p = fs::temp_directory_path() / name;
  std::ofstream out(p);
  out << text;
  return p;
}

}  // namespace

TEST_CASE("solve: plain output is just the matching") {
  const auto p = write_temp("ssr_cli_i2.txt", fixtures::I2);
  std::ostringstream out, err;
  RunReport rep;
  const int rc = run_solve(p.string(), SolveFlags{}, out, err, &rep);
  CHECK(rc == 0);
  CHECK(out.str() == "1 2\n");
  CHECK(err.str().empty());
  CHECK(rep.n == 2);
  CHECK(rep.status == Status::Feasible);
  CHECK(rep.cuts == 0);
  CHECK(rep.iterations == 1);
  CHECK(rep.exit_code == 0);
  REQUIRE(rep.matching.has_value());
  CHECK(rep.matching->edges() == std::vector<Edge>{Edge(0, 1)});
}

TEST_CASE("solve: all sections on the two-vertex instance") {
  const auto p = write_temp("ssr_cli_i2.txt", fixtures::I2);
  SolveFlags flags;
  flags.point = true;
  flags.certificate = true;
  flags.cuts = true;
  std::ostringstream out, err;
  const int rc = run_solve(p.string(), flags, out, err);
  CHECK(rc == 0);
  CHECK(out.str() ==
        "1 2\n"
        "# point\n"
        "status feasible\n"
        "1 2 1\n"
        "cuts 0\n"
        "# certificate\n"
        "d 1 2\n"
        "d 2 1\n"
        "mutual: 1 2\n"
        "L 1 2\n"
        "M 1 2\n"
        "picked: 1\n"
        "# cuts\n");
}

TEST_CASE("solve: infeasible instances report and exit 2") {
  const auto p = write_temp("ssr_cli_ties.txt", fixtures::I4_TIES);
  SolveFlags flags;
  flags.point = true;
  flags.certificate = true;
  std::ostringstream out, err;
  const int rc = run_solve(p.string(), flags, out, err);
  CHECK(rc == 2);
  CHECK(out.str() ==
        "NO SUPER-STABLE MATCHING\n"
        "# point\n"
        "status infeasible\n"
        "cuts 0\n");
  CHECK(out.str().find("# certificate") == std::string::npos);
}

TEST_CASE("solve: missing file is an error") {
  std::ostringstream out, err;
  const int rc =
      run_solve("/nonexistent/definitely-missing.txt", SolveFlags{}, out, err);
  CHECK(rc == 1);
  CHECK(out.str().empty());
  CHECK(!err.str().empty());
}

TEST_CASE("solve: --stats writes to the error stream only") {
  const auto p = write_temp("ssr_cli_good.txt", fixtures::I4_GOOD);
  std::ostringstream out1, err1, out2, err2;
  SolveFlags quiet;
  run_solve(p.string(), quiet, out1, err1);
  SolveFlags stats;
  stats.stats = true;
  run_solve(p.string(), stats, out2, err2);
  CHECK(out1.str() == out2.str());
  CHECK(err1.str().empty());
  CHECK(!err2.str().empty());
}

TEST_CASE("solve: identical runs produce identical bytes") {
  const auto p = write_temp("ssr_cli_rand.txt",
                            serialize(gen_random(6, 21, Rat(1, 2))));
  SolveFlags flags;
  flags.point = true;
  flags.cuts = true;
  std::ostringstream out1, err1, out2, err2;
  const int rc1 = run_solve(p.string(), flags, out1, err1);
  const int rc2 = run_solve(p.string(), flags, out2, err2);
  CHECK(rc1 == rc2);
  CHECK(out1.str() == out2.str());
}

TEST_CASE("check: a super-stable matching passes") {
  const auto inst = write_temp("ssr_cli_chord.txt", fixtures::C4_CHORD);
  const auto mat = write_temp("ssr_cli_mu.txt", "1 2\n3 4\n");
  std::ostringstream out, err;
  const int rc = run_check(inst.string(), mat.string(), out, err);
  CHECK(rc == 0);
  CHECK(out.str() == "super-stable\n");
}

TEST_CASE("check: blockers are listed in edge order") {
  const auto inst = write_temp("ssr_cli_ties.txt", fixtures::I4_TIES);
  const auto mat = write_temp("ssr_cli_mu.txt", "1 2\n3 4\n");
  std::ostringstream out, err;
  const int rc = run_check(inst.string(), mat.string(), out, err);
  CHECK(rc == 2);
  CHECK(out.str() ==
        "blocking 1 3 (1: equal, 3: equal)\n"
        "blocking 1 4 (1: equal, 4: equal)\n"
        "blocking 2 3 (2: equal, 3: equal)\n"
        "blocking 2 4 (2: equal, 4: equal)\n"
        "not super-stable (4 weakly blocking edges)\n");
}

TEST_CASE("check: imperfect or malformed matchings are errors") {
  const auto inst = write_temp("ssr_cli_good.txt", fixtures::I4_GOOD);
  const auto twice = write_temp("ssr_cli_bad1.txt", "1 2\n2 3\n");
  std::ostringstream out, err;
  CHECK(run_check(inst.string(), twice.string(), out, err) == 1);
  CHECK(err.str().find("not a perfect matching") != std::string::npos);

  const auto lonely = write_temp("ssr_cli_bad2.txt", "1\n");
  std::ostringstream out2, err2;
  CHECK(run_check(inst.string(), lonely.string(), out2, err2) == 1);
  CHECK(err2.str().find("expected 'u v'") != std::string::npos);

  // Comments and blank lines are fine in matching files.
  const auto commented =
      write_temp("ssr_cli_mu_c.txt", "# pairing\n1 2\n\n3 4\n");
  std::ostringstream out3, err3;
  CHECK(run_check(inst.string(), commented.string(), out3, err3) == 0);
}

TEST_CASE("gen: deterministic, parseable, honours the tie knob") {
  std::ostringstream out1, err1, out2, err2;
  CHECK(run_gen(6, 9, "0", "", out1, err1) == 0);
  CHECK(run_gen(6, 9, "0", "", out2, err2) == 0);
  CHECK(out1.str() == out2.str());
  const Instance strict = parse_instance(out1.str());
  CHECK(strict.vertex_count() == 6);
  CHECK(!strict.has_ties());

  std::ostringstream out3, err3;
  CHECK(run_gen(6, 9, "1", "", out3, err3) == 0);
  const Instance all_tied = parse_instance(out3.str());
  CHECK(all_tied.tie_count() == 6 * 4);  // every list is one big tie

  std::ostringstream out4, err4;
  CHECK(run_gen(6, 9, "2/1", "", out4, err4) == 1);  // bias must be in [0,1]
  CHECK(!err4.str().empty());
  std::ostringstream out5, err5;
  CHECK(run_gen(5, 9, "0", "", out5, err5) == 1);  // odd size
}

TEST_CASE("gen: writes to a file when asked") {
  const fs::path p = fs::temp_directory_path() / "ssr_cli_gen.txt";
  std::ostringstream out, err, direct, derr;
  CHECK(run_gen(4, 3, "1/2", p.string(), out, err) == 0);
  CHECK(out.str().empty());
  CHECK(run_gen(4, 3, "1/2", "", direct, derr) == 0);
  std::ifstream in(p);
  std::stringstream file;
  file << in.rdbuf();
  CHECK(file.str() == direct.str());
}

TEST_CASE("compare: solver and brute force agree across the sweep") {
  std::ostringstream out, err;
  const int rc = run_compare(4, 4, 3, out, err);
  CHECK(rc == 0);
  CHECK(out.str().find("MISMATCH") == std::string::npos);
  CHECK(out.str().find("n=2") != std::string::npos);
  CHECK(out.str().find("n=4") != std::string::npos);
  const std::string tail = "total 40 agree 40\n";
  REQUIRE(out.str().size() >= tail.size());
  CHECK(out.str().substr(out.str().size() - tail.size()) == tail);
}

TEST_CASE("compare: rejects bad sweep parameters") {
  std::ostringstream out, err;
  CHECK(run_compare(3, 4, 3, out, err) == 1);
  CHECK(run_compare(4, 0, 3, out, err) == 1);
  CHECK(run_compare(12, 1, 3, out, err) == 1);  // brute force cap
}

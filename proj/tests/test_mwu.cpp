#include "cc/mwu.hpp"

#include <cstdlib>
#include <vector>

#include "cc/oracle.hpp"
#include "doctest.h"
#include "test_instances.hpp"

using namespace cc;
using namespace cc::testing;

namespace {

PreclusteredInstance built(const SignedGraph& g) { return build_preclustering(g, PreclusterConfig{}); }

PreclusteredInstance all_pairs_instance(int n) {
  std::vector<std::pair<int, int>> adm;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) adm.push_back({i, j});
  return PreclusteredInstance(n, {}, adm);
}

Rat pow_rat(const Rat& base, int e) {
  Rat out = 1;
  for (int i = 0; i < e; ++i) out *= base;
  return out;
}

}  // namespace

TEST_CASE("weight snapshots form exact unit distributions") {
  const auto p = snapshot_distribution({0.5L, 0.25L, 0.25L});
  REQUIRE(p.n() == 3);
  CHECK(p.p[0] == Rat(1, 2));
  CHECK(p.p[1] == Rat(1, 4));
  CHECK(p.p[2] == Rat(1, 4));
  CHECK_NOTHROW(p.validate());

  // A vanishing weight still gets one grid cell, so the snapshot stays
  // strictly positive and sums to exactly 1.
  const auto tiny = snapshot_distribution({1.0L, 1e-30L});
  CHECK(tiny.p[0] > 0);
  CHECK(tiny.p[1] > 0);
  CHECK(tiny.total() == 1);
  CHECK(tiny.p[1] <= Rat(BigInt(1), BigInt(1) << 63));

  CHECK_THROWS_AS(snapshot_distribution({}), std::invalid_argument);
  CHECK_THROWS_AS(snapshot_distribution({1.0L, 0.0L}), std::invalid_argument);
  CHECK_THROWS_AS(snapshot_distribution({1.0L, -2.0L}), std::invalid_argument);
}

TEST_CASE("a full-mass family collapses to its own indicator") {
  const SignedGraph g = gen_clique_union({5});
  const auto inst = all_pairs_instance(5);
  const auto cd = compute_d_cross(g, inst);
  MwuParams params;
  params.t_mw = 1;

  CoverLpDiagnostics diag;
  const auto sol = solve_cover_lp(g, inst, cd, params, Rat(16), 3, &diag);
  REQUIRE(sol.has_value());
  REQUIRE(sol->entries().size() == 1);
  CHECK(sol->entries().front().members == std::vector<int>{0, 1, 2, 3, 4});
  CHECK(sol->entries().front().value == 1);
  CHECK(diag.rounds_run == 1);
  CHECK(diag.min_margin_dot == 0);
  CHECK(diag.uncovered_mass == 0);
  CHECK(diag.completed_groups == 0);
}

TEST_CASE("groups left uncovered by the averages are completed") {
  const SignedGraph g = two_tri_bridge();
  const auto inst = built(g);
  const auto cd = compute_d_cross(g, inst);
  MwuParams params;
  params.t_mw = 1;
  const Rat r = pow_rat(Rat(11, 10), 12);

  CoverLpDiagnostics diag;
  const auto sol = solve_cover_lp(g, inst, cd, params, r, 5, &diag);
  REQUIRE(sol.has_value());
  // One round covers only the first triangle; the second is completed, and
  // the scale-then-clamp step lands both at value 1.
  REQUIRE(sol->entries().size() == 2);
  CHECK(sol->entries()[0].members == std::vector<int>{0, 1, 2});
  CHECK(sol->entries()[0].value == 1);
  CHECK(sol->entries()[1].members == std::vector<int>{3, 4, 5});
  CHECK(sol->entries()[1].value == 1);
  CHECK(diag.completed_groups == 1);
  CHECK(diag.uncovered_mass == 1);
  CHECK(diag.min_margin_dot == 0);
}

TEST_CASE("a full run keeps margins, support, and coverage in bounds") {
  const SignedGraph g = two_tri_bridge();
  const auto inst = built(g);
  const auto cd = compute_d_cross(g, inst);
  MwuParams params;  // 32 rounds
  const Rat r = pow_rat(Rat(11, 10), 12);

  CoverLpDiagnostics diag;
  const auto sol = solve_cover_lp(g, inst, cd, params, r, 5, &diag);
  REQUIRE(sol.has_value());
  CHECK(diag.rounds_run == 32);
  CHECK(diag.min_margin_dot == 0);
  CHECK(diag.uncovered_mass == 1);
  CHECK(diag.completed_groups == 1);
  for (int v = 0; v < 6; ++v) CHECK(sol->coverage(v) >= 1);
  for (const auto& e : sol->entries()) {
    CHECK(e.value >= Rat(1, 320));  // 1/(c·t_mw) with c = 10
    CHECK(e.value <= 1);
  }
  // The drifting weights never change which triangle is picked here, so the
  // scaled-and-clamped result is the same partition as the one-round run.
  REQUIRE(sol->entries().size() == 2);
  CHECK(sol->entries()[0].value == 1);
  CHECK(sol->entries()[1].value == 1);

  MwuParams strict = params;
  strict.assert_uncovered_bound = true;
  // Uncovered mass 1 exceeds 2·gamma·d_cross(V) = 2/5.
  CHECK_THROWS_AS(solve_cover_lp(g, inst, cd, strict, r, 5, nullptr), std::logic_error);
}

TEST_CASE("an exhausted family abandons the ratio guess") {
  const SignedGraph g = two_tri_bridge();
  const auto inst = built(g);
  const auto cd = compute_d_cross(g, inst);
  MwuParams params;
  const Rat r = pow_rat(Rat(11, 10), 5);  // too small for any cluster to fit

  CoverLpDiagnostics diag;
  const auto sol = solve_cover_lp(g, inst, cd, params, r, 5, &diag);
  CHECK(!sol.has_value());
  CHECK(diag.exhausted_round == 0);
}

TEST_CASE("vertices without crossing degree are rejected upfront") {
  const SignedGraph g = two_tri();
  const auto inst = built(g);
  const auto cd = compute_d_cross(g, inst);
  CHECK_THROWS_AS(solve_cover_lp(g, inst, cd, MwuParams{}, Rat(3), 1, nullptr),
                  std::invalid_argument);
}

TEST_CASE("preprocessing alone solves clean instances") {
  SUBCASE("two disjoint triangles") {
    const auto res = solve_cluster_lp(two_tri(), desk_params(), 5);
    CHECK(res.diag.fixed_atoms == 2);
    CHECK(res.diag.active_vertices == 0);
    CHECK(res.diag.cost == 0);
    CHECK(res.solution.partition_feasible());
    REQUIRE(res.solution.entries().size() == 2);
    CHECK(res.solution.entries()[0].members == std::vector<int>{0, 1, 2});
    CHECK(res.solution.entries()[0].k == 320);
  }
  SUBCASE("three disjoint 4-cliques") {
    const auto res = solve_cluster_lp(gen_clique_union({4, 4, 4}), desk_params(), 5);
    CHECK(res.diag.fixed_atoms == 3);
    CHECK(res.diag.cost == 0);
    CHECK(res.solution.partition_feasible());
    CHECK(res.solution.entries().size() == 3);
  }
  SUBCASE("no positive edges at all") {
    const auto res = solve_cluster_lp(SignedGraph(5, {}), desk_params(), 5);
    CHECK(res.diag.fixed_singletons == 5);
    CHECK(res.diag.cost == 0);
    CHECK(res.solution.partition_feasible());
    CHECK(res.solution.entries().size() == 5);
  }
}

TEST_CASE("the pipeline recovers the optimum on small instances") {
  for (const SignedGraph& g : {two_tri_bridge(), tri_tail()}) {
    CAPTURE(g.n());
    const std::int64_t opt = disagreements(g, brute_force_opt(g));
    REQUIRE(opt == 1);
    const auto res = solve_cluster_lp(g, desk_params(), 9);
    CHECK(res.solution.partition_feasible());
    CHECK(res.diag.cost == 1);
    CHECK(!res.diag.fallback);
    for (const auto& e : res.solution.entries()) CHECK(e.k >= 1);
  }
}

TEST_CASE("quality stays within the documented slack on the path") {
  const SignedGraph g = path3();
  const std::int64_t opt = disagreements(g, brute_force_opt(g));
  REQUIRE(opt == 1);
  const auto res = solve_cluster_lp(g, desk_params(), 17);
  CHECK(res.solution.partition_feasible());
  // Partition-feasible solutions respect the metric lower bound, and the
  // desk preset documents a factor-2 slack on tiny instances.
  CHECK(res.diag.cost >= 1);
  CHECK(res.diag.cost <= 2);
}

TEST_CASE("planted instances stay near the optimum") {
  for (int seed = 0; seed < 3; ++seed) {
    CAPTURE(seed);
    const SignedGraph g = gen_planted({12, 3, 0.9, 0.1}, 800 + seed);
    const std::int64_t opt = disagreements(g, brute_force_opt(g));
    const auto res = solve_cluster_lp(g, desk_params(), 40 + seed);
    CHECK(res.solution.partition_feasible());
    CHECK(res.diag.cost <= 2 * Rat(opt));
  }
}

TEST_CASE("results are deterministic and independent of the thread count") {
  const SignedGraph g = two_tri_bridge();
  const auto once = solve_cluster_lp(g, desk_params(), 23);
  const auto again = solve_cluster_lp(g, desk_params(), 23);
  CHECK(once.diag.cost == again.diag.cost);
  REQUIRE(once.solution.entries().size() == again.solution.entries().size());
  for (std::size_t i = 0; i < once.solution.entries().size(); ++i) {
    CHECK(once.solution.entries()[i].k == again.solution.entries()[i].k);
    CHECK(once.solution.entries()[i].members == again.solution.entries()[i].members);
  }

  setenv("CC_THREADS", "3", 1);
  const auto threaded = solve_cluster_lp(g, desk_params(), 23);
  unsetenv("CC_THREADS");
  CHECK(threaded.diag.cost == once.diag.cost);
  REQUIRE(threaded.solution.entries().size() == once.solution.entries().size());
  for (std::size_t i = 0; i < once.solution.entries().size(); ++i)
    CHECK(threaded.solution.entries()[i].members == once.solution.entries()[i].members);
}

TEST_CASE("parameter validation rejects unusable settings") {
  MwuParams params;
  params.t_mw = 0;
  CHECK_THROWS_AS(validate_mwu_params(params), std::invalid_argument);
  params = MwuParams{};
  params.family.cluster.gamma = Rat(1, 2);
  CHECK_THROWS_AS(validate_mwu_params(params), std::invalid_argument);
  CHECK_NOTHROW(validate_mwu_params(desk_params()));
  CHECK_NOTHROW(validate_mwu_params(paper_params()));
  CHECK(paper_params().t_mw == 23026);
}

#include "cc/cover.hpp"

#include "cc/oracle.hpp"
#include "cc/rng.hpp"
#include "doctest.h"
#include "test_instances.hpp"

#include <cstdio>
#include <fstream>

using namespace cc;
using namespace cc::testing;

namespace {

PreclusteredInstance built(const SignedGraph& g, const Rat& eps = Rat(3, 10)) {
  PreclusterConfig cfg;
  cfg.eps = eps;
  return build_preclustering(g, cfg);
}

// Random vertex groups (atoms and free vertices) unioned into an
// atom-respecting set.
std::vector<int> random_group_union(const PreclusteredInstance& inst, Rng& rng, int take_bound) {
  std::vector<std::vector<int>> groups;
  for (int id = 0; id < inst.atom_count(); ++id) groups.push_back(inst.atom_members(id));
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.in_atom(v)) groups.push_back({v});
  std::vector<int> out;
  for (const auto& gmembers : groups)
    if (rng.below(static_cast<std::uint64_t>(take_bound)) == 0)
      out.insert(out.end(), gmembers.begin(), gmembers.end());
  std::sort(out.begin(), out.end());
  return out;
}

}  // namespace

TEST_CASE("crossing charges on the named instances") {
  {
    const SignedGraph g = two_tri();
    const PreclusteredInstance inst = built(g, Rat(1, 5));
    const CrossDegrees cd = compute_d_cross(g, inst);
    for (int v = 0; v < 6; ++v) CHECK(cd.of(v) == Rat(0));
    CHECK(cd.zero_cost_atoms() == std::vector<int>{0, 1});
    CHECK(cd.total() == Rat(0));
  }
  {
    const SignedGraph g = tri_tail();
    const PreclusteredInstance inst = built(g);
    const CrossDegrees cd = compute_d_cross(g, inst);
    CHECK(cd.atom_value(0) == 1);  // 2·cost({0,1,2}) = 1
    for (int v = 0; v < 3; ++v) CHECK(cd.of(v) == Rat(1, 3));
    CHECK(cd.of(3) == Rat(1));  // d(3) − 1
    CHECK(cd.scaled(0) == 2);   // 2·|K|·(1/3) = 2·cost2(K)
    CHECK(cd.scaled(3) == 2);
    CHECK(cd.total() == Rat(2));
    CHECK(cd.zero_cost_atoms().empty());
    CHECK(cd.group_value(inst, 1) == Rat(1));
    CHECK(cd.group_value(inst, 3) == Rat(1));
  }
}

TEST_CASE("doubled cover values") {
  {
    const SignedGraph g = two_tri();
    const PreclusteredInstance inst = built(g, Rat(1, 5));
    const CrossDegrees cd = compute_d_cross(g, inst);
    CHECK(cover2(g, cd, std::vector<int>{0, 1, 2}) == Rat(0));
  }
  {
    const SignedGraph g = tri_tail();
    const PreclusteredInstance inst = built(g);
    const CrossDegrees cd = compute_d_cross(g, inst);
    CHECK(cover2(g, cd, std::vector<int>{0, 1, 2}) == Rat(3));  // cover = 3/2
    CHECK(cover2(g, cd, std::vector<int>{3}) == Rat(3));        // cost ½ + charge 1
    CHECK(cover2(g, cd, std::vector<int>{0, 1, 2, 3}) == Rat(8));
    CHECK_THROWS_AS(cover2(g, cd, std::vector<int>{}), std::invalid_argument);
  }
}

TEST_CASE("cover is strictly monotone over nested group unions") {
  Rng rng(17);
  int checked = 0;
  for (std::uint64_t seed = 0; seed < 12; ++seed) {
    const SignedGraph g =
        seed % 3 == 0 ? gen_planted({10, 2, 0.9, 0.1}, seed) : gen_random(10, 0.35, 40 + seed);
    const PreclusteredInstance inst = built(g);
    const CrossDegrees cd = compute_d_cross(g, inst);
    for (int trial = 0; trial < 60; ++trial) {
      const std::vector<int> w = random_group_union(inst, rng, 2);
      if (w.empty()) continue;
      std::vector<int> u = random_group_union(inst, rng, 2);
      std::vector<int> inter;
      std::set_intersection(w.begin(), w.end(), u.begin(), u.end(), std::back_inserter(inter));
      if (inter.empty() || inter.size() == w.size()) continue;
      ++checked;
      CHECK(cover2(g, cd, inter) < cover2(g, cd, w));
    }
  }
  CHECK(checked > 100);
}

TEST_CASE("total crossing charge stays proportional to the optimum on planted inputs") {
  const Rat eps(3, 10);
  double worst = 0.0;
  for (std::uint64_t seed = 1; seed <= 4; ++seed) {
    const SignedGraph g = gen_planted({12, 3, 1.0, 0.1}, seed);
    const std::int64_t opt = brute_force_opt(g).second;
    if (opt == 0) continue;
    const CrossDegrees cd = compute_d_cross(g, built(g, eps));
    Rat eps_pow = 1;
    for (int i = 0; i < 12; ++i) eps_pow *= eps;
    const double constant = to_double(cd.total()) * to_double(eps_pow) /
                            static_cast<double>(opt);
    worst = std::max(worst, constant);
  }
  MESSAGE("worst total-charge constant: ", worst);
  CHECK(worst < 1000.0);
}

TEST_CASE("fractional solutions canonicalize and index correctly") {
  FractionalClusterSolution sol(4, 6,
                                {{2, {1, 0}}, {1, {2}}, {3, {0, 1}}, {0, {3}}, {1, {3}}});
  CHECK(sol.denominator() == 6);
  REQUIRE(sol.entries().size() == 3);  // {0,1} merged to k=5, {2}, {3}
  CHECK(sol.entries()[0].members == std::vector<int>{0, 1});
  CHECK(sol.entries()[0].k == 5);
  CHECK(sol.coverage(0) == 5);
  CHECK(sol.coverage(2) == 1);
  CHECK(sol.pair_coverage(0, 1) == 5);
  CHECK(sol.pair_coverage(0, 2) == 0);
  CHECK(sol.x_value(0, 1) == Rat(1, 6));
  CHECK(sol.x_value(0, 3) == Rat(1));
  CHECK_FALSE(sol.partition_feasible());

  const FractionalClusterSolution partition(3, 2, {{2, {0, 1}}, {2, {2}}});
  CHECK(partition.partition_feasible());

  CHECK_THROWS_AS(FractionalClusterSolution(3, 0, {}), std::invalid_argument);
  CHECK_THROWS_AS(FractionalClusterSolution(3, 2, {{1, {}}}), std::invalid_argument);
  CHECK_THROWS_AS(FractionalClusterSolution(3, 2, {{1, {0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(FractionalClusterSolution(3, 2, {{1, {5}}}), std::invalid_argument);
  CHECK_THROWS_AS(FractionalClusterSolution(3, 2, {{-1, {0}}}), std::invalid_argument);
}

TEST_CASE("rational-valued solutions canonicalize and merge like grid ones") {
  const CoverSolution sol(4, {{Rat(1, 3), {1, 0}}, {Rat(1, 6), {2}}, {Rat(1, 2), {0, 1}}});
  REQUIRE(sol.entries().size() == 2);
  CHECK(sol.entries()[0].members == std::vector<int>{0, 1});
  CHECK(sol.entries()[0].value == Rat(5, 6));
  CHECK(sol.coverage(0) == Rat(5, 6));
  CHECK(sol.coverage(2) == Rat(1, 6));
  CHECK(sol.coverage(3) == Rat(0));
  CHECK(sol.entries_containing(1) == std::vector<int>{0});

  CHECK_THROWS_AS(CoverSolution(3, {{Rat(1), {}}}), std::invalid_argument);
  CHECK_THROWS_AS(CoverSolution(3, {{Rat(-1, 2), {0}}}), std::invalid_argument);
  CHECK_THROWS_AS(CoverSolution(3, {{Rat(1), {0, 0}}}), std::invalid_argument);
  CHECK_THROWS_AS(CoverSolution(3, {{Rat(1), {7}}}), std::invalid_argument);
}

TEST_CASE("solution objectives and the coverage identity") {
  const SignedGraph g = tri_tail();
  const PreclusteredInstance inst = built(g);
  const CrossDegrees cd = compute_d_cross(g, inst);
  const FractionalClusterSolution sol(4, 4, {{4, {0, 1, 2}}, {2, {3}}, {2, {2, 3}}});

  // cover(z) = cost(z) + Σ_v d_cross(v)·coverage(v)/D, exactly.
  Rat charge = 0;
  for (int v = 0; v < 4; ++v)
    charge += cd.of(v) * Rat(BigInt(sol.coverage(v)), BigInt(sol.denominator()));
  CHECK(solution_cover(g, cd, sol) == solution_cost(g, sol) + charge);

  // A fractional partition charges exactly the total crossing degree.
  const FractionalClusterSolution part(4, 2, {{2, {0, 1, 2}}, {2, {3}}});
  CHECK(solution_cover(g, cd, part) == solution_cost(g, part) + cd.total());
  // The cut pendant edge is charged half from each side, one disagreement total.
  CHECK(solution_cost(g, part) == Rat(1));
}

TEST_CASE("conversion leaves a fractional partition unchanged in value") {
  const SignedGraph g = two_tri();
  const PreclusteredInstance inst = built(g, Rat(1, 5));
  const CrossDegrees cd = compute_d_cross(g, inst);
  const CoverSolution z(6, {{Rat(1), {0, 1, 2}}, {Rat(1), {3, 4, 5}}});
  const FractionalClusterSolution out =
      convert_cover_to_cluster(z, inst, g, cd, 1, Rat(1, 10));
  CHECK(out.denominator() == 10);
  REQUIRE(out.entries().size() == 2);
  CHECK(out.entries()[0].members == std::vector<int>{0, 1, 2});
  CHECK(out.entries()[0].k == 10);
  CHECK(out.entries()[1].k == 10);
  CHECK(out.partition_feasible());
}

TEST_CASE("conversion shifts excess off the over-covered vertex") {
  const SignedGraph g = gen_path(3);
  const PreclusteredInstance inst(3, {}, {});
  const CrossDegrees cd = compute_d_cross(g, inst);
  const CoverSolution z(3, {{Rat(1), {0, 1, 2}}, {Rat(1, 2), {2}}});
  const FractionalClusterSolution out = convert_cover_to_cluster(z, inst, g, cd, 2, Rat(1));
  CHECK(out.denominator() == 2);
  REQUIRE(out.entries().size() == 3);
  CHECK(out.entries()[0].members == std::vector<int>{0, 1});
  CHECK(out.entries()[0].k == 1);
  CHECK(out.entries()[1].members == std::vector<int>{0, 1, 2});
  CHECK(out.entries()[1].k == 1);
  CHECK(out.entries()[2].members == std::vector<int>{2});
  CHECK(out.entries()[2].k == 1);
  CHECK(out.partition_feasible());
}

TEST_CASE("conversion keeps tight grid-valued input unchanged") {
  const SignedGraph g = SignedGraph(2, {{0, 1}});
  const PreclusteredInstance inst(2, {}, {});
  const CrossDegrees cd = compute_d_cross(g, inst);
  const CoverSolution z(2, {{Rat(1, 2), {0, 1}}, {Rat(1, 2), {0}}, {Rat(1, 2), {1}}});
  const FractionalClusterSolution out = convert_cover_to_cluster(z, inst, g, cd, 2, Rat(1, 2));
  CHECK(out.denominator() == 4);
  REQUIRE(out.entries().size() == 3);
  for (const auto& e : out.entries()) CHECK(e.k == 2);
  CHECK(out.partition_feasible());
}

TEST_CASE("conversion rejects contract violations by name") {
  const SignedGraph g = tri_tail();
  const PreclusteredInstance inst = built(g);
  const CrossDegrees cd = compute_d_cross(g, inst);

  // Vertex 3 uncovered.
  const CoverSolution uncovered(4, {{Rat(1), {0, 1, 2}}});
  CHECK_THROWS_WITH_AS(convert_cover_to_cluster(uncovered, inst, g, cd, 2, Rat(1, 2)),
                       "cover constraint violated at vertex 3", std::invalid_argument);

  // Entry splitting the atom {0,1,2}.
  const CoverSolution split(4, {{Rat(1), {0, 1}}, {Rat(1), {2}}, {Rat(1), {3}}});
  CHECK_THROWS_AS(convert_cover_to_cluster(split, inst, g, cd, 2, Rat(1, 2)),
                  std::invalid_argument);

  // Support below 1/t_mw: the {3} entry carries value 1/8 < 1/2.  Coverage and
  // atom checks still pass, so the thin entry is the only violation.
  const CoverSolution thin(4, {{Rat(1), {0, 1, 2}}, {Rat(1, 8), {3}}, {Rat(1), {0, 1, 2, 3}}});
  CHECK_THROWS_AS(convert_cover_to_cluster(thin, inst, g, cd, 2, Rat(1, 2)),
                  std::invalid_argument);
}

TEST_CASE("randomized conversions satisfy the full contract") {
  Rng rng(23);
  for (std::uint64_t seed = 0; seed < 25; ++seed) {
    const SignedGraph g = gen_random(8, 0.4, 600 + seed);
    const PreclusteredInstance inst = built(g);
    const CrossDegrees cd = compute_d_cross(g, inst);
    const std::int64_t t_mw = 8;
    const Rat gamma(1, 4);

    // Start from a group partition at full weight, then add up to three
    // random extra group-unions with weight 1/4..3/4.
    std::vector<CoverEntry> entries;
    {
      std::vector<std::vector<int>> parts;
      for (int id = 0; id < inst.atom_count(); ++id) parts.push_back(inst.atom_members(id));
      for (int v = 0; v < 8; ++v)
        if (!inst.in_atom(v)) parts.push_back({v});
      // Pair up consecutive groups at random to vary set sizes.
      std::vector<int> cur;
      for (auto& p : parts) {
        cur.insert(cur.end(), p.begin(), p.end());
        if (rng.below(2) == 0) {
          std::sort(cur.begin(), cur.end());
          entries.push_back({Rat(1), cur});
          cur.clear();
        }
      }
      if (!cur.empty()) {
        std::sort(cur.begin(), cur.end());
        entries.push_back({Rat(1), cur});
      }
    }
    for (int extra = 0; extra < 3; ++extra) {
      std::vector<int> s = random_group_union(inst, rng, 3);
      if (s.empty()) continue;
      entries.push_back({Rat(1 + static_cast<std::int64_t>(rng.below(3)), 4), s});
    }
    const CoverSolution z(8, entries);

    const FractionalClusterSolution out = convert_cover_to_cluster(z, inst, g, cd, t_mw, gamma);
    CHECK(out.partition_feasible());
    CHECK(solution_cover(g, cd, out) <= (Rat(1) + gamma) * solution_cover(g, cd, z));
    for (const auto& e : out.entries()) {
      CHECK(e.k >= 1);
      // Entries still respect atoms.
      for (int id = 0; id < inst.atom_count(); ++id) {
        const auto& members = inst.atom_members(id);
        int hits = 0;
        for (int v : members)
          if (std::binary_search(e.members.begin(), e.members.end(), v)) ++hits;
        CHECK((hits == 0 || hits == static_cast<int>(members.size())));
      }
    }
    for (int u = 0; u < 8; ++u)
      for (int v = u + 1; v < 8; ++v) {
        const Rat x = out.x_value(u, v);
        CHECK(x >= Rat(0));
        CHECK(x <= Rat(1));
      }
  }
}

TEST_CASE("solution file round trip and diagnostics") {
  const std::string path = "tmp_solution.txt";
  const FractionalClusterSolution sol(4, 6, {{5, {0, 1}}, {1, {2}}, {6, {3}}});
  write_solution(path, sol);
  const FractionalClusterSolution back = read_solution(path, 4);
  CHECK(back.denominator() == 6);
  REQUIRE(back.entries().size() == 3);
  CHECK(back.entries()[0].k == 5);
  CHECK(back.entries()[0].members == std::vector<int>{0, 1});

  auto write_text = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };
  write_text("");
  CHECK_THROWS_AS(read_solution(path, 4), ParseError);
  write_text("0\n");
  CHECK_THROWS_AS(read_solution(path, 4), ParseError);
  write_text("6\n5 0 1\n");
  CHECK_THROWS_AS(read_solution(path, 4), ParseError);
  write_text("6\n-2: 0 1\n");
  CHECK_THROWS_AS(read_solution(path, 4), ParseError);
  write_text("6\n2: 9\n");
  CHECK_THROWS_AS(read_solution(path, 4), ParseError);
  write_text("6\n2:\n");
  CHECK_THROWS_AS(read_solution(path, 4), ParseError);
  std::remove(path.c_str());
}

#include "cc/graph.hpp"

#include "cc/rational.hpp"
#include "cc/rng.hpp"
#include "doctest.h"
#include "test_instances.hpp"

#include <cstdio>
#include <fstream>
#include <string>

using namespace cc;
using namespace cc::testing;

namespace {

// Unique-ish temp path under the build dir's working directory.
std::string temp_path(const std::string& name) { return "tmp_" + name; }

SignedGraph random_graph(int n, double p, std::uint64_t seed) { return gen_random(n, p, seed); }

}  // namespace

TEST_CASE("degrees include the self-loop") {
  const SignedGraph g = tri4();
  CHECK(g.pos_degree(0) == 3);
  CHECK(g.pos_degree(3) == 1);
  CHECK(path3().pos_degree(1) == 3);

  CHECK(g.is_plus(0, 0));
  CHECK(g.is_plus(3, 3));
  CHECK(g.is_plus(0, 1));
  CHECK_FALSE(g.is_plus(0, 3));
  CHECK(g.pos_adj(0) == std::vector<int>{0, 1, 2});
}

TEST_CASE("cluster_cost2 on the named instances") {
  CHECK(cluster_cost2(tri4(), std::vector<int>{0, 1, 2}) == 0);
  CHECK(cluster_cost2(tri4(), std::vector<int>{0, 1}) == 2);
  CHECK(cluster_cost2(tri_tail(), std::vector<int>{0, 1, 2}) == 1);
  CHECK(cluster_cost2(tri4(), std::vector<int>{3}) == 0);
  CHECK(cluster_cost2(tri_tail(), std::vector<int>{3}) == 1);
  CHECK_THROWS_AS(cluster_cost2(tri4(), std::vector<int>{}), std::invalid_argument);
}

TEST_CASE("disagreements on the named instances") {
  CHECK(disagreements(tri4(), Clustering::from_clusters(4, {{0, 1, 2}, {3}})) == 0);
  CHECK(disagreements(tri4(), Clustering::singletons(4)) == 3);
  CHECK(disagreements(tri_tail(), Clustering::from_clusters(4, {{0, 1, 2}, {3}})) == 1);
  CHECK(disagreements(tri_tail(), Clustering::from_clusters(4, {{0, 1}, {2, 3}})) == 2);
}

TEST_CASE("doubled per-cluster costs sum to twice the disagreements") {
  Rng rng(11);
  for (int trial = 0; trial < 20; ++trial) {
    const int n = 2 + static_cast<int>(rng.below(10));
    const SignedGraph g = random_graph(n, 0.4, 100 + trial);
    // Random clustering: each vertex to one of up to 4 ids.
    std::vector<std::vector<int>> buckets(4);
    for (int v = 0; v < n; ++v) buckets[rng.below(4)].push_back(v);
    std::vector<std::vector<int>> clusters;
    for (auto& b : buckets)
      if (!b.empty()) clusters.push_back(b);
    const Clustering c = Clustering::from_clusters(n, clusters);
    std::int64_t sum2 = 0;
    for (const auto& cl : c.clusters()) sum2 += cluster_cost2(g, cl);
    CHECK(sum2 == 2 * disagreements(g, c));
  }
}

TEST_CASE("degree sum identity") {
  for (std::uint64_t seed = 0; seed < 5; ++seed) {
    const SignedGraph g = random_graph(9, 0.3, seed);
    std::int64_t sum = 0;
    for (int v = 0; v < g.n(); ++v) sum += g.pos_degree(v);
    CHECK(sum == 2 * g.m_plus() + g.n());
  }
}

TEST_CASE("generators produce the expected shapes") {
  const SignedGraph two = gen_clique_union({3, 3});
  CHECK(two.n() == 6);
  CHECK(two.m_plus() == 6);
  CHECK(disagreements(two, Clustering::from_clusters(6, {{0, 1, 2}, {3, 4, 5}})) == 0);

  const SignedGraph planted = gen_planted({12, 3, 1.0, 0.0}, 7);
  CHECK(planted.n() == 12);
  CHECK(planted.m_plus() == 18);  // three disjoint 4-cliques
  CHECK(disagreements(planted, planted_truth(12, 3)) == 0);

  const SignedGraph p = gen_path(3);
  CHECK(p.m_plus() == 2);
  CHECK(p.is_plus(0, 1));
  CHECK(p.is_plus(1, 2));
  CHECK_FALSE(p.is_plus(0, 2));

  // Determinism: same params and seed give identical graphs.
  const SignedGraph r1 = gen_random(10, 0.5, 3);
  const SignedGraph r2 = gen_random(10, 0.5, 3);
  CHECK(r1.m_plus() == r2.m_plus());
  for (int v = 0; v < 10; ++v) CHECK(r1.pos_adj(v) == r2.pos_adj(v));

  const SignedGraph f0 = gen_planted({10, 2, 1.0, 0.0}, 5);
  const SignedGraph f1 = gen_planted({10, 2, 1.0, 0.3}, 5);
  CHECK(f0.m_plus() != f1.m_plus());  // flips change the graph
}

TEST_CASE("clustering canonical form") {
  const Clustering c = Clustering::from_clusters(5, {{4, 2}, {0, 3}, {1}});
  const auto cl = c.clusters();
  REQUIRE(cl.size() == 3);
  CHECK(cl[0] == std::vector<int>{0, 3});
  CHECK(cl[1] == std::vector<int>{1});
  CHECK(cl[2] == std::vector<int>{2, 4});
  CHECK(clustering_to_string(c) == "0 3\n1\n2 4\n");

  CHECK(c == Clustering::from_clusters(5, {{1}, {2, 4}, {3, 0}}));
  CHECK_THROWS_AS(Clustering::from_clusters(3, {{0, 1}}), std::invalid_argument);
  CHECK_THROWS_AS(Clustering::from_clusters(3, {{0, 1}, {1, 2}}), std::invalid_argument);
  CHECK_THROWS_AS(Clustering::from_clusters(3, {{0, 1, 2, 3}}), std::invalid_argument);
}

TEST_CASE("graph file round trip and diagnostics") {
  const std::string path = temp_path("graph.txt");
  const SignedGraph g = tri_tail();
  write_graph(path, g);
  const SignedGraph back = read_graph(path);
  CHECK(back.n() == g.n());
  CHECK(back.m_plus() == g.m_plus());
  for (int v = 0; v < g.n(); ++v) CHECK(back.pos_adj(v) == g.pos_adj(v));

  auto write_text = [](const std::string& p, const std::string& text) {
    std::ofstream out(p);
    out << text;
  };

  write_text(path, "hello\n");
  CHECK_THROWS_AS(read_graph(path), ParseError);
  write_text(path, "3 2\n0 1\n");
  CHECK_THROWS_AS(read_graph(path), ParseError);
  write_text(path, "3 1\n1 0\n");
  CHECK_THROWS_AS(read_graph(path), ParseError);
  write_text(path, "3 1\n0 3\n");
  CHECK_THROWS_AS(read_graph(path), ParseError);
  write_text(path, "3 1\n0 1\nstray\n");
  CHECK_THROWS_AS(read_graph(path), ParseError);
  write_text(path, "3 2\n0 1\n0 1\n");
  CHECK_THROWS_AS(read_graph(path), ParseError);

  write_text(path, "3 1\n1 2\n");
  try {
    write_text(path, "3 1\nx y\n");
    read_graph(path);
    FAIL("expected ParseError");
  } catch (const ParseError& e) {
    CHECK(e.line == 2);
    CHECK(std::string(e.what()).find(":2:") != std::string::npos);
  }
  std::remove(path.c_str());
}

TEST_CASE("clustering file round trip and diagnostics") {
  const std::string path = temp_path("clustering.txt");
  const Clustering c = Clustering::from_clusters(5, {{0, 3}, {1}, {2, 4}});
  write_clustering(path, c);
  CHECK(read_clustering(path, 5) == c);

  auto write_text = [&](const std::string& text) {
    std::ofstream out(path);
    out << text;
  };
  write_text("0 1\n1 2\n");  // vertex 1 twice
  CHECK_THROWS_AS(read_clustering(path, 3), ParseError);
  write_text("0 1\n");  // vertex 2 missing
  CHECK_THROWS_AS(read_clustering(path, 3), ParseError);
  write_text("0 7\n1 2\n");  // out of range
  CHECK_THROWS_AS(read_clustering(path, 3), ParseError);
  std::remove(path.c_str());
}

TEST_CASE("query accessor counts each probe type") {
  const SignedGraph g = tri4();
  QueryCounter counter;
  const QueryGraph q(g, counter);
  CHECK(q.degree(0) == 3);
  CHECK(q.degree(3) == 1);
  CHECK(q.neighbor(0, 0) == 0);
  CHECK(q.neighbor(0, 2) == 2);
  CHECK(q.edge_sign_plus(0, 1));
  CHECK_FALSE(q.edge_sign_plus(1, 3));
  CHECK(counter.degree_queries == 2);
  CHECK(counter.neighbor_queries == 2);
  CHECK(counter.edge_queries == 2);
  CHECK(counter.total() == 6);
  counter.reset();
  CHECK(counter.total() == 0);
}

TEST_CASE("bitset helpers") {
  Bitset b(70);
  b.set(0);
  b.set(63);
  b.set(64);
  b.set(69);
  CHECK(b.count() == 4);
  CHECK(b.to_vector() == std::vector<int>{0, 63, 64, 69});
  Bitset c(70);
  c.set(63);
  c.set(69);
  CHECK(intersect_count(b, c) == 2);
  b.subtract(c);
  CHECK(b.to_vector() == std::vector<int>{0, 64});
  CHECK(b.any());
  b.clear();
  CHECK_FALSE(b.any());
}

TEST_CASE("exact decimal parsing") {
  CHECK(parse_decimal_rat("0.1") == Rat(1, 10));
  CHECK(parse_decimal_rat(".25") == Rat(1, 4));
  CHECK(parse_decimal_rat("2.") == Rat(2));
  CHECK(parse_decimal_rat("2") == Rat(2));
  CHECK(parse_decimal_rat("0.050") == Rat(1, 20));
  CHECK(rat_to_string(Rat(1, 10)) == "1/10");
  CHECK(rat_to_string(Rat(4)) == "4");
  CHECK_THROWS_AS(parse_decimal_rat("abc"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_rat("1.2.3"), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_rat(""), std::invalid_argument);
  CHECK_THROWS_AS(parse_decimal_rat("-1"), std::invalid_argument);
}

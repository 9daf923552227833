#include "cc/oracle.hpp"

#include "cc/rng.hpp"

#include <algorithm>
#include <limits>
#include <stdexcept>
#include <vector>

namespace cc {

namespace {

// Doubled cost of every vertex subset, indexed by bitmask.  Built by peeling
// the lowest vertex v of S: going from T = S∖{v} to S changes the doubled
// cost by d_ns(v) + 2|T| − 4·|{+neighbors of v in T}| (d_ns excludes the
// self-loop).
std::vector<std::int64_t> all_subset_cost2(const SignedGraph& g) {
  const int n = g.n();
  std::vector<std::uint32_t> adj_ns(n, 0);
  std::vector<std::int64_t> d_ns(n, 0);
  for (int v = 0; v < n; ++v) {
    for (int u : g.pos_adj(v))
      if (u != v) adj_ns[v] |= 1u << u;
    d_ns[v] = g.pos_degree(v) - 1;
  }
  const std::size_t total = std::size_t{1} << n;
  std::vector<std::int64_t> cost2(total, 0);
  for (std::size_t s = 1; s < total; ++s) {
    const int v = __builtin_ctzll(s);
    const std::uint32_t t = static_cast<std::uint32_t>(s) & (static_cast<std::uint32_t>(s) - 1);
    const std::int64_t t_size = __builtin_popcount(t);
    const std::int64_t plus_in_t = __builtin_popcount(adj_ns[v] & t);
    cost2[s] = cost2[t] + d_ns[v] + 2 * t_size - 4 * plus_in_t;
  }
  return cost2;
}

std::vector<int> mask_to_vertices(std::uint32_t mask) {
  std::vector<int> out;
  while (mask) {
    out.push_back(__builtin_ctz(mask));
    mask &= mask - 1;
  }
  return out;
}

}  // namespace

std::pair<Clustering, std::int64_t> brute_force_opt(const SignedGraph& g) {
  const int n = g.n();
  if (n > 16) throw std::invalid_argument("brute_force_opt: n must be at most 16");
  if (n == 0) return {Clustering{}, 0};

  const std::vector<std::int64_t> cost2 = all_subset_cost2(g);
  const std::uint32_t full = (n == 32) ? ~0u : ((1u << n) - 1);

  // best2[S] = minimum Σ 2·cost over partitions of S.  The cluster containing
  // the lowest vertex of S is enumerated explicitly, so each partition is
  // counted once.
  std::vector<std::int64_t> best2(std::size_t{1} << n, 0);
  for (std::uint32_t s = 1; s <= full; ++s) {
    const std::uint32_t low = s & (~s + 1);  // lowest set bit
    const std::uint32_t rest = s ^ low;
    std::int64_t best = cost2[s];  // whole S as one cluster (sub = rest)
    for (std::uint32_t sub = (rest - 1) & rest;; sub = (sub - 1) & rest) {
      const std::uint32_t cl = sub | low;
      const std::int64_t cand = cost2[cl] + best2[s ^ cl];
      if (cand < best) best = cand;
      if (sub == 0) break;
    }
    best2[s] = best;
  }

  // Reconstruction: at each step pick, among the optimal choices for the
  // cluster of the lowest remaining vertex, the lexicographically smallest
  // one as an ascending vertex list; this yields the lexicographically
  // smallest canonical partition overall.
  std::vector<std::vector<int>> clusters;
  std::uint32_t remaining = full;
  while (remaining) {
    const std::uint32_t low = remaining & (~remaining + 1);
    const std::uint32_t rest = remaining ^ low;
    std::vector<int> chosen;
    std::uint32_t sub = rest;
    for (;;) {
      const std::uint32_t cl = sub | low;
      if (cost2[cl] + best2[remaining ^ cl] == best2[remaining]) {
        std::vector<int> cand = mask_to_vertices(cl);
        if (chosen.empty() || cand < chosen) chosen = std::move(cand);
      }
      if (sub == 0) break;
      sub = (sub - 1) & rest;
    }
    std::uint32_t chosen_mask = 0;
    for (int v : chosen) chosen_mask |= 1u << v;
    clusters.push_back(std::move(chosen));
    remaining ^= chosen_mask;
  }

  Clustering c = Clustering::from_clusters(n, clusters);
  return {std::move(c), best2[full] / 2};
}

namespace {

void enum_partitions(const SignedGraph& g, int v, std::vector<std::vector<int>>& clusters,
                     std::int64_t& best) {
  if (v == g.n()) {
    const std::int64_t cost = disagreements(g, Clustering::from_clusters(g.n(), clusters));
    if (cost < best) best = cost;
    return;
  }
  const std::size_t existing = clusters.size();
  for (std::size_t i = 0; i < existing; ++i) {
    clusters[i].push_back(v);
    enum_partitions(g, v + 1, clusters, best);
    clusters[i].pop_back();
  }
  clusters.push_back({v});
  enum_partitions(g, v + 1, clusters, best);
  clusters.pop_back();
}

}  // namespace

std::int64_t min_cost_by_partition_enum(const SignedGraph& g) {
  if (g.n() > 10) throw std::invalid_argument("min_cost_by_partition_enum: n must be at most 10");
  if (g.n() == 0) return 0;
  std::vector<std::vector<int>> clusters;
  std::int64_t best = std::numeric_limits<std::int64_t>::max();
  enum_partitions(g, 0, clusters, best);
  return best;
}

Clustering pivot_baseline(const SignedGraph& g, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "pivot-baseline"));
  const int n = g.n();
  std::vector<int> remaining(n);
  for (int v = 0; v < n; ++v) remaining[v] = v;
  Bitset alive = make_bitset(n, remaining);

  std::vector<std::vector<int>> clusters;
  while (!remaining.empty()) {
    const std::size_t idx = rng.below(remaining.size());
    const int pivot = remaining[idx];
    std::vector<int> cluster;
    for (int u : g.pos_adj(pivot))
      if (alive.test(u)) cluster.push_back(u);  // includes the pivot itself
    for (int u : cluster) alive.reset(u);
    std::vector<int> next;
    next.reserve(remaining.size() - cluster.size());
    for (int u : remaining)
      if (alive.test(u)) next.push_back(u);
    remaining = std::move(next);
    clusters.push_back(std::move(cluster));
  }
  return Clustering::from_clusters(n, clusters);
}

std::int64_t marginal2_brute(const SignedGraph& g, const std::vector<int>& T, int v) {
  const bool inside = std::find(T.begin(), T.end(), v) != T.end();
  if (inside) {
    std::vector<int> without;
    without.reserve(T.size() - 1);
    for (int u : T)
      if (u != v) without.push_back(u);
    const std::int64_t base = without.empty() ? 0 : cluster_cost2(g, without);
    return cluster_cost2(g, T) - base;
  }
  std::vector<int> with = T;
  with.push_back(v);
  const std::int64_t base = T.empty() ? 0 : cluster_cost2(g, T);
  return cluster_cost2(g, with) - base;
}

EvalMetrics evaluate(const SignedGraph& g, const Clustering& c,
                     std::optional<std::int64_t> reference_cost) {
  EvalMetrics m;
  m.disagreement_count = disagreements(g, c);
  const auto clusters = c.clusters();
  m.cluster_count = static_cast<int>(clusters.size());
  for (const auto& cl : clusters) ++m.size_histogram[static_cast<int>(cl.size())];
  if (reference_cost) {
    if (*reference_cost == 0) {
      if (m.disagreement_count == 0) {
        m.ratio = 1.0;
      } else {
        m.ref_zero = true;
      }
    } else {
      m.ratio = static_cast<double>(m.disagreement_count) / static_cast<double>(*reference_cost);
    }
  }
  return m;
}

}  // namespace cc

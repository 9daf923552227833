#pragma once

#include "cc/graph.hpp"

#include <cstdint>
#include <map>
#include <optional>
#include <utility>

namespace cc {

// Exact minimum-disagreement clustering by dynamic programming over vertex
// subsets (O(3ⁿ)); requires n ≤ 16.  Ties are broken toward the
// lexicographically smallest canonical partition (clusters as ascending
// vertex lists, listed by smallest member).  Returns the clustering and its
// disagreement count.
std::pair<Clustering, std::int64_t> brute_force_opt(const SignedGraph& g);

// Reference minimum found by enumerating all set partitions; n ≤ 10.  Used to
// cross-check brute_force_opt.
std::int64_t min_cost_by_partition_enum(const SignedGraph& g);

// Classic randomized pivot baseline: pick a uniform remaining vertex, cluster
// it with its remaining +neighbors, repeat.  Deterministic for a fixed seed.
Clustering pivot_baseline(const SignedGraph& g, std::uint64_t seed);

// 2·(cost difference when v joins / leaves T): for v ∉ T this is
// 2·(cost(T∪{v}) − cost(T)); for v ∈ T it is 2·(cost(T) − cost(T∖{v})).
// Reference implementation via cluster_cost2 only.
std::int64_t marginal2_brute(const SignedGraph& g, const std::vector<int>& T, int v);

struct EvalMetrics {
  std::int64_t disagreement_count = 0;
  int cluster_count = 0;
  std::map<int, int> size_histogram;  // cluster size → number of clusters
  std::optional<double> ratio;        // disagreements / reference, if reference given
  bool ref_zero = false;              // reference was 0 while the clustering pays > 0
};

EvalMetrics evaluate(const SignedGraph& g, const Clustering& c,
                     std::optional<std::int64_t> reference_cost = std::nullopt);

}  // namespace cc

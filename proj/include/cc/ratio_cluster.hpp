#pragma once

#include "cc/graph.hpp"
#include "cc/precluster.hpp"
#include "cc/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cc {

// Tunables of the sampled cluster search.  The desk-scale defaults below keep
// every knob small enough for exhaustive cross-checking; preset factories may
// scale them up (sample_size is derived as roughly eta·eta0/(gamma²·eps⁸)
// with eta0 = eta³ before rounding, which is where eta0 enters).
struct RatioClusterParams {
  Rat gamma = Rat(1, 10);
  Rat eps = Rat(3, 10);
  // Number of fringe chunks; also bounds the size of each sample sub-multiset.
  int eta = 4;
  // Granularity constant used by the derived sample-size formula.
  int eta0 = 8;
  // Vertices drawn per sample multiset.
  int sample_size = 64;
  // Ratio between consecutive size guesses; kept equal to 1 + 1/eta.
  Rat size_grid_ratio = Rat(5, 4);
  // The search repeats repeat_multiplier·⌈ln n⌉ times.
  int repeat_multiplier = 1;
  // Candidate sets up to this size are searched by full subset enumeration.
  int exhaustive_limit = 16;
  // Cap on grown-cluster evaluations per repetition of the sampled search.
  std::int64_t sampling_budget = 20000;
};

// Throws std::invalid_argument when a field is out of range.
void validate_params(const RatioClusterParams& params);

// Everything the cluster search needs about one root r: its group K(r) (atom
// members or {r}), the candidate set N_cand(r) ⊇ K(r), the fringe
// D(r) = N_cand(r) ∖ K(r), and a per-vertex weight.  Callers fold the ratio
// guess into the weights (w(v) = R·p̂(v) − d_cross(v)), so the search itself
// only ever compares against w.
struct RootContext {
  int root = -1;
  std::vector<int> group;       // K(r), ascending
  std::vector<int> candidates;  // N_cand(r), ascending, contains group
  std::vector<int> outside;     // candidates ∖ group, ascending
  std::vector<Rat> weight;      // w(v), indexed by vertex id

  // Σ_{v∈members} w(v).
  Rat weight_of(const std::vector<int>& members) const;
};

// Builds the context for root r from the preclustered instance: group_of(r)
// unioned with candidate_set(inst, r).  `weight` must have one entry per
// vertex of the instance.
RootContext make_root_context(const PreclusteredInstance& inst, int root,
                              std::vector<Rat> weight);

// Throws std::invalid_argument when the context breaks its invariants.
void validate_root_context(const RootContext& ctx, int n);

// 2·(cost(T∪{v}) − cost(T∖{v})) by the closed form
//   (d(v)−1) + 2|T| − 4·d(v,T) + 2·[v∈T]
// where d counts the self-loop and d(v,T) counts it exactly when v ∈ T.
// Doubled so the value is an integer.  Throws on empty T.
std::int64_t marginal2(const SignedGraph& g, const Bitset& members, int v);
std::int64_t marginal2(const SignedGraph& g, const std::vector<int>& members, int v);

// Sampled stand-in for marginal2/2: with S a multiset of vertices and t_guess
// a guessed target-set size,
//   (d(v)−1)/2 + t_guess − 2·(d(v,S)/|S|)·t_guess,
// where d(v,S) counts multiplicity and the self-loop pairs v with itself.
// Feeding S = T (as a multiset) and t_guess = |T| gives exactly
// marginal2/2 − [v∈T].  Throws on empty S.
Rat est_marg(const SignedGraph& g, const std::vector<int>& sample, const Rat& t_guess, int v);

// Size guesses for clusters around `root`: the geometric grid
// size_grid_ratio^j clipped to [eps·d(root), eps⁻⁴·d(root)], starting at 1.
std::vector<Rat> size_guess_grid(const SignedGraph& g, int root,
                                 const RatioClusterParams& params);

// Grows one cluster from K(r): splits the fringe into eta near-equal chunks
// (sorted by vertex id, contiguous, last chunk absorbs the remainder) and
// adds v from chunk i exactly when
//   est_marg(sample[i], guess[i], v) + 6·|N_cand(r)|/eta ≤ w(v).
// Returns K(r) ∪ accepted fringe vertices, ascending.  Throws when the
// sample or guess count differs from eta or a sample is empty.
std::vector<int> generate_cluster(const SignedGraph& g, const RootContext& ctx,
                                  const std::vector<std::vector<int>>& samples,
                                  const std::vector<Rat>& guesses,
                                  const RatioClusterParams& params);

// Searches for a cluster T with K(r) ⊆ T ⊆ N_cand(r) and cost(T) ≤ w(T),
// verified exactly before returning.  Small candidate sets
// (≤ exhaustive_limit) are searched by subset enumeration in increasing
// size-then-lexicographic order; otherwise the search repeats
// repeat_multiplier·⌈ln n⌉ times: draw eta sample multisets from N_cand(r),
// enumerate sub-multisets of size ≤ eta (increasing size, then
// lexicographic) paired with every size guess, and feed each tuple to
// generate_cluster, spending at most sampling_budget evaluations per
// repetition.  Returns std::nullopt when no verified cluster is found.
std::optional<std::vector<int>> generate_cluster_by_sampling(const SignedGraph& g,
                                                             const RootContext& ctx,
                                                             const RatioClusterParams& params,
                                                             std::uint64_t seed);

}  // namespace cc

#pragma once

#include "cc/cover.hpp"
#include "cc/family.hpp"
#include "cc/graph.hpp"
#include "cc/precluster.hpp"
#include "cc/rational.hpp"

#include <cstdint>
#include <optional>
#include <vector>

namespace cc {

// Knobs of the multiplicative-weights covering solver and the surrounding
// pipeline.  gamma and eps live inside family.cluster so every layer reads
// the same values.
struct MwuParams {
  FamilyConfig family;
  int t_mw = 32;  // weight-update rounds
  FamilyMode mode = FamilyMode::fast;
  // When set, a final uncovered-crossing-degree above 2·gamma·d_cross(V)
  // raises logic_error instead of only being reported.
  bool assert_uncovered_bound = false;

  const Rat& gamma() const { return family.cluster.gamma; }
  const Rat& eps() const { return family.cluster.eps; }
};

// Throws std::invalid_argument on unusable values (t_mw < 1, gamma ≥ 1/2, or
// bad cluster-search knobs).
void validate_mwu_params(const MwuParams& params);

// Practical defaults: 32 rounds, gamma 1/10, eps 3/10, unit search
// constants.  Every guarantee checked at this scale is empirical; the
// documented end-to-end quality slack for this preset is a factor of 2
// against the exact optimum on tiny instances.
MwuParams desk_params();

// Formula-driven round count ⌈log(1/gamma)/gamma⁴⌉ and derived sample sizes,
// with the uncovered-mass bound enforced.  Only meant for tiny toy runs; the
// round count alone is in the tens of thousands.
MwuParams paper_params();

// Exact probability snapshot of positive floating weights: each weight is
// normalized, floored onto the 2⁻⁶⁴ grid, and clamped to at least one grid
// cell, so the result is an exact rational distribution that sums to 1.
// Feasibility decisions downstream consume only this snapshot, never the
// floats.  Throws if any weight is zero, negative, or not finite.
VertexDistribution snapshot_distribution(const std::vector<long double>& weights);

struct CoverLpDiagnostics {
  int rounds_run = 0;
  // First round whose family search ran dry (the guess was abandoned), or -1.
  int exhausted_round = -1;
  // Minimum over rounds of ⟨p, m⟩ = value·p(𝓕) − 1; never negative.
  Rat min_margin_dot = 0;
  // Σ d_cross(v) over vertices still below coverage 1−2·gamma after
  // averaging, i.e. the mass repaired by the completion step.
  Rat uncovered_mass = 0;
  int completed_groups = 0;
};

// Multiplicative-weights solver for the covering LP at one ratio guess.
// Starts from weights d_cross(v) (all must be positive), runs t_mw rounds of
// family construction at the exact weight snapshot, updates weights by
// e^{−gamma³·m_v} where m_v is the per-vertex margin of the round's covering
// step, averages the steps, sets the group entry to 1 for every vertex whose
// average coverage is at most 1−2·gamma, scales by 1/(1−2·gamma), and clamps
// values at 1.  The result covers every vertex by at least 1, exactly.
// Returns nullopt when some round's family is exhausted (the caller moves to
// the next ratio guess).
std::optional<CoverSolution> solve_cover_lp(const SignedGraph& g, const PreclusteredInstance& inst,
                                            const CrossDegrees& cd, const MwuParams& params,
                                            const Rat& r_guess, std::uint64_t seed,
                                            CoverLpDiagnostics* diag = nullptr);

struct RGuessOutcome {
  Rat r;
  bool solved = false;
  Rat cost = 0;  // exact cost of this guess's converted candidate
  int exhausted_round = -1;
};

struct PipelineDiagnostics {
  int active_vertices = 0;
  int fixed_atoms = 0;       // zero-cost atoms turned into fixed clusters
  int fixed_singletons = 0;  // vertices with no positive neighbours
  std::vector<RGuessOutcome> guesses;
  bool fallback = false;  // no guess solved; active part left as singletons
  Rat chosen_r = 0;
  Rat cost = 0;  // exact cost of the returned solution
};

struct ClusterLpResult {
  FractionalClusterSolution solution;
  PipelineDiagnostics diag;
};

// End-to-end fractional solve: precluster, split off zero-cost atoms and
// isolated vertices as fixed clusters, then for every ratio guess on the
// geometric grid run the covering solver on the remaining induced subproblem,
// rebalance to exact partition feasibility, and keep the candidate with the
// smallest exact cost (ties to the smallest guess).  Guesses run in parallel
// when the CC_THREADS environment variable asks for it; results do not depend
// on the thread count.  Always returns a partition-feasible solution — if
// every guess is abandoned, the active vertices stay singletons.
ClusterLpResult solve_cluster_lp(const SignedGraph& g, const MwuParams& params, std::uint64_t seed);

}  // namespace cc

#pragma once

#include "cc/cover.hpp"
#include "cc/graph.hpp"
#include "cc/precluster.hpp"
#include "cc/ratio_cluster.hpp"
#include "cc/rational.hpp"

#include <cstdint>
#include <vector>

namespace cc {

// A probability distribution over vertices, stored exactly.
struct VertexDistribution {
  std::vector<Rat> p;

  int n() const { return static_cast<int>(p.size()); }
  Rat mass_of(const std::vector<int>& members) const;
  Rat total() const;
  // Throws unless every entry is non-negative and the total is 1.
  void validate() const;
};

// Which family-construction loop runs: `poly` recomputes a root's cluster
// whenever an accepted cluster overlaps it; `fast` samples a root pool and
// refreshes a root only after its remaining mass decays by a (1−gamma)
// factor.
enum class FamilyMode { poly, fast };

struct FamilyConfig {
  // Knobs of the per-root cluster search; gamma and eps are read from here.
  RatioClusterParams cluster;
  // Fast mode asserts ≤ refresh_constant·gamma⁻⁵·eps⁻⁵ refreshes per root.
  int refresh_constant = 1;
};

// A disjoint partial clustering together with its covered probability mass
// and total doubled cover objective, plus run diagnostics.
struct PartialFamily {
  std::vector<std::vector<int>> clusters;  // pairwise disjoint, atoms whole
  Rat covered_mass = 0;                    // Σ_S p(S) under the input distribution
  Rat total_cover2 = 0;                    // Σ_S cover2(S)
  // True when the target mass gamma was unreachable and the pool ran dry.
  bool exhausted = false;
  // Fast-mode diagnostics: most root clusters any vertex sat in, most
  // refreshes any single root needed, and sampled roots whose mass fell
  // outside the expected band [gamma·d_cross(u)/(16·D), 16·d_cross(u)/D]
  // with D the total crossing degree.
  int max_overlap = 0;
  int max_refreshes = 0;
  int roots_outside_band = 0;
};

// Builds a family of disjoint clusters whose total mass reaches gamma (or
// sets `exhausted`), preferring small exact cover2/p̂ ratios.  Both modes
// first add every group K whose own ratio is within (1+6·gamma)·R, then grow
// per-root clusters with the sampled search at target ratio (1+3·gamma)·R;
// every accepted cluster has exact ratio ≤ (1+6·gamma)·R at insertion, after
// dropping members whose remaining mass is zero.  Fast mode samples roots
// with probability min(1, 1/d(v)) over ⌈ln n/eps²⌉ rounds and first zeroes
// vertices with p_v ≤ gamma·d_cross(v)/(4·d_cross(V)) (whole groups only, so
// atoms stay intact).  Throws on a degenerate (non-positive) distribution.
PartialFamily find_family(const SignedGraph& g, const PreclusteredInstance& inst,
                          const CrossDegrees& cd, const VertexDistribution& p, const Rat& r_guess,
                          FamilyMode mode, const FamilyConfig& cfg, std::uint64_t seed);

// One covering step from a family: every cluster gets value
// min(1/p(𝓕), 1/gamma), so the mass-weighted sum Σ_S p(S)·z_S reaches 1
// whenever the family was not exhausted.  Throws on an empty family.
CoverSolution family_to_point(const PartialFamily& family, int n, const Rat& gamma);

// Geometric guesses {(1+gamma)^j} for the optimal cover value, spanning
// [max(1, d_cross(V)/2), 2·(n² + d_cross(V))]; the last point is the first
// one at or beyond the upper end, so any target in range has a grid point
// within a (1+gamma) factor.
std::vector<Rat> r_grid(const SignedGraph& g, const CrossDegrees& cd, const Rat& gamma);

}  // namespace cc

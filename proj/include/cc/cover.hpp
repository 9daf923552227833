#pragma once

#include "cc/graph.hpp"
#include "cc/precluster.hpp"
#include "cc/rational.hpp"

#include <cstdint>
#include <string>
#include <vector>

namespace cc {

// Per-vertex crossing charge: for an atom member, 2·cost(K)/|K| (every member
// of one atom carries an equal share); for a singleton, d(v) − 1.  Stored
// both exactly and as the integer 2·|K(v)|·d_cross(v) so group sums stay in
// integer arithmetic.
class CrossDegrees {
 public:
  CrossDegrees() = default;

  const Rat& of(int v) const { return per_vertex_[v]; }
  const Rat& total() const { return total_; }
  // 2·|K(v)|·d_cross(v): 2·cost2(K) for atom members, 2·(d(v)−1) for
  // singletons.
  std::int64_t scaled(int v) const { return scaled_[v]; }
  // d_cross(K) for atom id: equals 2·cost(K) = cost2(K).
  std::int64_t atom_value(int atom_id) const { return atom_cost2_[atom_id]; }
  // Atom ids whose crossing charge is zero: such atoms can be emitted as
  // final clusters up front.
  const std::vector<int>& zero_cost_atoms() const { return zero_cost_atoms_; }
  // Σ_{v∈K(r)} d_cross(v) as an exact rational.
  Rat group_value(const PreclusteredInstance& inst, int v) const;

 private:
  friend CrossDegrees compute_d_cross(const SignedGraph&, const PreclusteredInstance&);
  std::vector<Rat> per_vertex_;
  std::vector<std::int64_t> scaled_;
  std::vector<std::int64_t> atom_cost2_;
  std::vector<int> zero_cost_atoms_;
  Rat total_;
};

CrossDegrees compute_d_cross(const SignedGraph& g, const PreclusteredInstance& inst);

// 2·cover(S) = 2·(cost(S) + Σ_{v∈S} d_cross(v)), exact.  Integer whenever S
// respects atoms; rational in general.  Throws on empty S.
Rat cover2(const SignedGraph& g, const CrossDegrees& cd, const std::vector<int>& members);
Rat cover2(const SignedGraph& g, const CrossDegrees& cd, const Bitset& members);

// ---------------------------------------------------------------------------
// Fractional solutions
// ---------------------------------------------------------------------------

struct SolutionEntry {
  std::int64_t k = 0;        // numerator; the set's value is k / D
  std::vector<int> members;  // sorted ascending, nonempty
};

// A fractional assignment of weight to vertex sets over one common
// denominator D.  Entries are kept in lexicographic member order with
// duplicates merged and zero-weight entries dropped, so equal solutions have
// equal representations.
class FractionalClusterSolution {
 public:
  FractionalClusterSolution() = default;
  FractionalClusterSolution(int n, std::int64_t denominator, std::vector<SolutionEntry> entries);

  int n() const { return n_; }
  std::int64_t denominator() const { return denom_; }
  const std::vector<SolutionEntry>& entries() const { return entries_; }
  const std::vector<int>& entries_containing(int v) const { return incidence_[v]; }

  // Σ_{S∋v} k_S.
  std::int64_t coverage(int v) const;
  // Σ_{S⊇{u,v}} k_S for distinct u, v.
  std::int64_t pair_coverage(int u, int v) const;
  // x_uv = 1 − pair_coverage/D, clamped nowhere: exact value.
  Rat x_value(int u, int v) const;
  // True iff Σ_{S∋v} k_S = D for every vertex.
  bool partition_feasible() const;

 private:
  int n_ = 0;
  std::int64_t denom_ = 1;
  std::vector<SolutionEntry> entries_;
  std::vector<std::vector<int>> incidence_;
};

struct CoverEntry {
  Rat value;                 // exact set value, ≥ 0
  std::vector<int> members;  // sorted ascending, nonempty
};

// A fractional assignment of exact rational weight to vertex sets: the
// working representation on the covering side, where set values are ratios
// of large integers rather than grid fractions.  Canonicalized the same way
// as FractionalClusterSolution: members sorted, duplicates merged,
// zero-value entries dropped, entries in lexicographic member order.
class CoverSolution {
 public:
  CoverSolution() = default;
  CoverSolution(int n, std::vector<CoverEntry> entries);

  int n() const { return n_; }
  const std::vector<CoverEntry>& entries() const { return entries_; }
  const std::vector<int>& entries_containing(int v) const { return incidence_[v]; }

  // Σ_{S∋v} z_S.
  Rat coverage(int v) const;

 private:
  int n_ = 0;
  std::vector<CoverEntry> entries_;
  std::vector<std::vector<int>> incidence_;
};

// Σ_S z_S·cost(S), exact.
Rat solution_cost(const SignedGraph& g, const FractionalClusterSolution& sol);
Rat solution_cost(const SignedGraph& g, const CoverSolution& sol);
// Σ_S z_S·cover(S), exact.
Rat solution_cover(const SignedGraph& g, const CrossDegrees& cd,
                   const FractionalClusterSolution& sol);
Rat solution_cover(const SignedGraph& g, const CrossDegrees& cd, const CoverSolution& sol);

// c·t_mw with c = ⌈1/gamma⌉: the denominator of the integer grid that
// convert_cover_to_cluster rounds onto.
std::int64_t conversion_denominator(std::int64_t t_mw, const Rat& gamma);

// Rebalances a covering-feasible solution (Σ_{S∋v} z_S ≥ 1, support ≥ 1/t_mw,
// ≤ t_mw entries per vertex, entries never split atoms) into one with exact
// per-vertex equality Σ_{S∋v} z̃_S = 1 on the grid 1/(c·t_mw), c = ⌈1/gamma⌉:
// values are clamped to 1, rounded up to the grid, then excess coverage is
// shifted from a set W containing the over-covered group onto W minus that
// group.  The objective never grows by more than a (1+gamma) factor, which is
// verified exactly before returning.  Infeasible input is rejected with the
// violated vertex named.
FractionalClusterSolution convert_cover_to_cluster(const CoverSolution& z,
                                                   const PreclusteredInstance& inst,
                                                   const SignedGraph& g, const CrossDegrees& cd,
                                                   std::int64_t t_mw, const Rat& gamma);

// Solution file: line 1 `D`, then one entry per line `k: v1 v2 …`.
FractionalClusterSolution read_solution(const std::string& path, int n);
void write_solution(const std::string& path, const FractionalClusterSolution& sol);

}  // namespace cc

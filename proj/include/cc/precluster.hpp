#pragma once

#include "cc/graph.hpp"
#include "cc/rational.hpp"

#include <string>
#include <utility>
#include <vector>

namespace cc {

// How a pair of distinct vertices is classified by a preclustered instance.
enum class PairClass { atomic, admissible, non_admissible };

// Atoms (disjoint vertex groups of size ≥ 2 that any solution must keep
// together) plus the admissible pair set.  Pairs inside one atom are atomic;
// admissible pairs always have at least one endpoint outside every atom; all
// other pairs are non-admissible and may never share a cluster.
class PreclusteredInstance {
 public:
  PreclusteredInstance() = default;
  // Validates structure: atom sizes ≥ 2, disjointness, admissible pairs
  // distinct and not inside the atom vertex set on both ends.
  PreclusteredInstance(int n, std::vector<std::vector<int>> atoms,
                       const std::vector<std::pair<int, int>>& adm_pairs);

  int n() const { return n_; }
  int atom_count() const { return static_cast<int>(atoms_.size()); }
  const std::vector<std::vector<int>>& atoms() const { return atoms_; }
  const std::vector<int>& atom_members(int atom_id) const { return atoms_[atom_id]; }
  // Atom id of v, or -1 when v is a singleton.
  int atom_id(int v) const { return atom_of_[v]; }
  bool in_atom(int v) const { return atom_of_[v] >= 0; }
  const Bitset& atom_vertex_set() const { return v_k_; }

  // K(v): v's atom, or {v} for singletons.
  std::vector<int> group_of(int v) const;
  int group_size(int v) const { return in_atom(v) ? static_cast<int>(atoms_[atom_of_[v]].size()) : 1; }

  const std::vector<int>& adm_neighbors(int v) const { return n_adm_[v]; }
  int adm_degree(int v) const { return static_cast<int>(n_adm_[v].size()); }
  bool is_admissible(int u, int v) const;
  PairClass classify(int u, int v) const;
  std::int64_t adm_pair_count() const { return adm_pair_count_; }

 private:
  int n_ = 0;
  std::vector<std::vector<int>> atoms_;
  std::vector<int> atom_of_;
  std::vector<std::vector<int>> n_adm_;
  Bitset v_k_;
  std::int64_t adm_pair_count_ = 0;
};

// Tunables of the preclustering construction and its verifier.
struct PreclusterConfig {
  Rat eps = Rat(3, 10);
  // Constants in the atom-side conditions: every atom member needs ≥
  // (1 − c1·eps)·|K| +neighbors inside K and ≤ c2·eps·|K| outside.
  int c1 = 4;
  int c2 = 4;
  // Construction heuristics: two +neighbors "agree" when their +neighborhoods
  // differ on less than theta_agree·max(d(u), d(v)) vertices; a vertex joins
  // an atom candidate only if ≥ (1 − theta_light)·d(v) of its closed
  // +neighborhood agrees with it.
  double theta_agree = 0.4;
  double theta_light = 0.4;
};

struct SimilarityReport {
  bool pass = true;
  std::vector<std::string> violations;
};

struct LargeClusterReport {
  bool ok = true;
  std::vector<std::string> violations;
};

// Deterministic construction: agreement-based almost-clique detection for
// atoms, then admissible-pair marking with degree-window and common-neighbor
// conditions, then pruning so every vertex keeps at most 2·eps⁻³·d(v)
// admissible partners.  The output always passes verify_similar with the
// same config.
PreclusteredInstance build_preclustering(const SignedGraph& g, const PreclusterConfig& cfg);

// Checks the three similarity conditions (adm-degree budget; per-admissible-
// pair degree closeness and common degree-similar neighbors; atom-side
// neighborhood conditions) plus the structural rules, reporting every
// violation.
SimilarityReport verify_similar(const PreclusteredInstance& inst, const SignedGraph& g,
                                const PreclusterConfig& cfg);

// Checks that a clustering never splits an atom, never places a
// non-admissible pair together, and that every non-singleton cluster C with
// v ∈ C has |C| ≥ eps·d(v).
LargeClusterReport verify_large(const Clustering& c, const PreclusteredInstance& inst,
                                const SignedGraph& g, const Rat& eps);

// Candidate partners for growing a cluster around r: singleton r → admissible
// neighbors outside all atoms (r itself not included); atom member r → K(r)
// plus the common admissible neighbors of all of K(r).
std::vector<int> candidate_set(const PreclusteredInstance& inst, int r);

// Vertices w with +edges to both u and v (closed neighborhoods, so u or v
// themselves can count) whose degree is within an eps-window of both
// endpoints' degrees.
int common_similar_count(const SignedGraph& g, int u, int v, const Rat& eps);

// Instance file with a "#atoms" section (one atom per line) followed by a
// "#adm" section (one pair per line).
PreclusteredInstance read_instance(const std::string& path, int n);
void write_instance(const std::string& path, const PreclusteredInstance& inst);

}  // namespace cc

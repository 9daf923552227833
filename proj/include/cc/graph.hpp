#pragma once

#include "cc/kernels.hpp"

#include <atomic>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace cc {

// Thrown by file readers; `line` is 1-based and already embedded in what().
struct ParseError : std::runtime_error {
  ParseError(const std::string& path, int line_no, const std::string& msg)
      : std::runtime_error(path + ":" + std::to_string(line_no) + ": " + msg), line(line_no) {}
  int line;
};

// ---------------------------------------------------------------------------
// Bitset
// ---------------------------------------------------------------------------

// Fixed-width bit set over vertex ids; intersection counts go through the
// dispatched word kernels.
class Bitset {
 public:
  Bitset() = default;
  explicit Bitset(int nbits) : bits_(nbits), words_((static_cast<std::size_t>(nbits) + 63) / 64, 0) {}

  int size() const { return bits_; }
  std::size_t word_count() const { return words_.size(); }
  const std::uint64_t* data() const { return words_.data(); }

  void set(int i) { words_[static_cast<std::size_t>(i) >> 6] |= 1ULL << (i & 63); }
  void reset(int i) { words_[static_cast<std::size_t>(i) >> 6] &= ~(1ULL << (i & 63)); }
  bool test(int i) const { return (words_[static_cast<std::size_t>(i) >> 6] >> (i & 63)) & 1ULL; }
  void clear() { words_.assign(words_.size(), 0); }

  int count() const { return static_cast<int>(popcount_words(words_.data(), words_.size())); }
  bool any() const {
    for (std::uint64_t w : words_)
      if (w) return true;
    return false;
  }

  Bitset& operator|=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] |= o.words_[i];
    return *this;
  }
  Bitset& operator&=(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= o.words_[i];
    return *this;
  }
  // Removes every bit present in o.
  Bitset& subtract(const Bitset& o) {
    for (std::size_t i = 0; i < words_.size(); ++i) words_[i] &= ~o.words_[i];
    return *this;
  }

  std::vector<int> to_vector() const;

 private:
  int bits_ = 0;
  std::vector<std::uint64_t> words_;
};

inline int intersect_count(const Bitset& a, const Bitset& b) {
  return static_cast<int>(and_popcount(a.data(), b.data(), a.word_count()));
}

Bitset make_bitset(int nbits, const std::vector<int>& members);

// ---------------------------------------------------------------------------
// SignedGraph
// ---------------------------------------------------------------------------

// Complete signed graph on n vertices: the listed pairs are the +edges, every
// unlisted pair is a −edge, and every vertex carries an implicit +self-loop.
// Immutable after construction; algorithms mask vertices out instead of
// mutating the graph.
class SignedGraph {
 public:
  // `plus_edges` holds distinct pairs (u, v) with u < v; self-loops are added
  // automatically and must not be listed.
  SignedGraph(int n, const std::vector<std::pair<int, int>>& plus_edges);

  int n() const { return n_; }
  // Number of distinct +edges between different vertices.
  std::int64_t m_plus() const { return m_plus_; }

  // d(v): +neighbor count including the self-loop, so always ≥ 1.
  int pos_degree(int v) const { return static_cast<int>(pos_adj_[v].size()); }

  // Sorted +neighbors of v, self-loop entry v included.
  const std::vector<int>& pos_adj(int v) const { return pos_adj_[v]; }

  // True iff uv is a +edge; u == v is always true (self-loop).
  bool is_plus(int u, int v) const { return rows_[u].test(v); }

  // Adjacency row of v as a bit set; bit v itself is set (self-loop), so an
  // intersection with a cluster mask counts the self-loop exactly when v is
  // in the cluster.
  const Bitset& row(int v) const { return rows_[v]; }

  // |{u in mask : uv is a +edge}|, counting the self-loop iff mask has v.
  int plus_count_in(int v, const Bitset& mask) const { return intersect_count(rows_[v], mask); }

 private:
  int n_;
  std::int64_t m_plus_;
  std::vector<std::vector<int>> pos_adj_;
  std::vector<Bitset> rows_;
};

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

// A partition of V given by per-vertex cluster ids.  The canonical cluster
// list sorts members ascending and clusters by their smallest member.
struct Clustering {
  std::vector<int> assignment;

  int n() const { return static_cast<int>(assignment.size()); }
  std::vector<std::vector<int>> clusters() const;

  static Clustering singletons(int n);
  // Validates that `clusters` are disjoint, in range, and cover 0..n-1.
  static Clustering from_clusters(int n, const std::vector<std::vector<int>>& clusters);

  bool operator==(const Clustering& o) const;
};

// Canonical string form, one cluster per line (members ascending, clusters by
// minimum element), used for files and byte-stable comparisons.
std::string clustering_to_string(const Clustering& c);

// ---------------------------------------------------------------------------
// Costs
// ---------------------------------------------------------------------------

// 2·cost(S): |+edges leaving S| + 2·|−edges inside S|.  Self-loops never
// contribute.  Doubled so the value is always an integer.  Throws on empty S.
std::int64_t cluster_cost2(const SignedGraph& g, const Bitset& members);
std::int64_t cluster_cost2(const SignedGraph& g, const std::vector<int>& members);

// Exact disagreement count of a clustering: +edges across clusters plus
// −edges within clusters.
std::int64_t disagreements(const SignedGraph& g, const Clustering& c);

// ---------------------------------------------------------------------------
// Query counting (sublinear access model)
// ---------------------------------------------------------------------------

// Counts the three query types of the sublinear access model.
struct QueryCounter {
  std::atomic<std::uint64_t> degree_queries{0};
  std::atomic<std::uint64_t> neighbor_queries{0};
  std::atomic<std::uint64_t> edge_queries{0};

  void reset() {
    degree_queries = 0;
    neighbor_queries = 0;
    edge_queries = 0;
  }
  std::uint64_t total() const { return degree_queries + neighbor_queries + edge_queries; }
};

// Read accessor that routes every probe through a QueryCounter; estimator
// code uses only this interface so its query usage is measurable.
class QueryGraph {
 public:
  QueryGraph(const SignedGraph& g, QueryCounter& counter) : g_(g), counter_(counter) {}

  int n() const { return g_.n(); }
  int degree(int v) const {
    counter_.degree_queries.fetch_add(1, std::memory_order_relaxed);
    return g_.pos_degree(v);
  }
  // k-th entry (0-based) of v's sorted +adjacency, self-loop included.
  int neighbor(int v, int k) const {
    counter_.neighbor_queries.fetch_add(1, std::memory_order_relaxed);
    return g_.pos_adj(v)[static_cast<std::size_t>(k)];
  }
  bool edge_sign_plus(int u, int v) const {
    counter_.edge_queries.fetch_add(1, std::memory_order_relaxed);
    return g_.is_plus(u, v);
  }

  const SignedGraph& graph() const { return g_; }

 private:
  const SignedGraph& g_;
  QueryCounter& counter_;
};

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

struct PlantedParams {
  int n = 0;
  int k = 1;
  double p_intra = 1.0;
  double p_flip = 0.0;
};

// k contiguous ground-truth blocks of near-equal size; each intra-block pair
// is a +edge with probability p_intra, then every pair's sign is flipped
// independently with probability p_flip.
SignedGraph gen_planted(const PlantedParams& params, std::uint64_t seed);
// The ground-truth blocks used by gen_planted, as a clustering.
Clustering planted_truth(int n, int k);

// Every pair +with probability p, independently.
SignedGraph gen_random(int n, double p, std::uint64_t seed);
// +edges {i, i+1}.
SignedGraph gen_path(int n);
// Disjoint +cliques of the given sizes, vertices numbered block by block.
SignedGraph gen_clique_union(const std::vector<int>& sizes);

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

// Graph file: line 1 "n m", then m lines "u v" with 0 ≤ u < v < n; self-loops
// are implicit and never listed.  Malformed input raises ParseError with a
// 1-based line number.
SignedGraph read_graph(const std::string& path);
void write_graph(const std::string& path, const SignedGraph& g);

// Clustering file: one cluster per line, vertex ids space-separated ascending,
// clusters sorted by minimum element.  The reader accepts any order but
// demands a disjoint cover of 0..n-1.
Clustering read_clustering(const std::string& path, int n);
void write_clustering(const std::string& path, const Clustering& c);

}  // namespace cc

#include "cc/graph.hpp"

#include "cc/rng.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cc {

// ---------------------------------------------------------------------------
// Bitset
// ---------------------------------------------------------------------------

std::vector<int> Bitset::to_vector() const {
  std::vector<int> out;
  for (std::size_t w = 0; w < words_.size(); ++w) {
    std::uint64_t bits = words_[w];
    while (bits) {
      const int bit = __builtin_ctzll(bits);
      out.push_back(static_cast<int>(w * 64) + bit);
      bits &= bits - 1;
    }
  }
  return out;
}

Bitset make_bitset(int nbits, const std::vector<int>& members) {
  Bitset b(nbits);
  for (int v : members) b.set(v);
  return b;
}

// ---------------------------------------------------------------------------
// SignedGraph
// ---------------------------------------------------------------------------

SignedGraph::SignedGraph(int n, const std::vector<std::pair<int, int>>& plus_edges)
    : n_(n), m_plus_(static_cast<std::int64_t>(plus_edges.size())), pos_adj_(n), rows_() {
  if (n < 0) throw std::invalid_argument("vertex count must be non-negative");
  rows_.reserve(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) {
    pos_adj_[v].push_back(v);  // implicit self-loop
    rows_.emplace_back(n);
    rows_.back().set(v);
  }
  for (const auto& [u, v] : plus_edges) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("edge vertex out of range");
    if (u >= v) throw std::invalid_argument("edges must satisfy u < v (self-loops are implicit)");
    if (rows_[u].test(v)) throw std::invalid_argument("duplicate edge");
    rows_[u].set(v);
    rows_[v].set(u);
    pos_adj_[u].push_back(v);
    pos_adj_[v].push_back(u);
  }
  for (int v = 0; v < n; ++v) std::sort(pos_adj_[v].begin(), pos_adj_[v].end());
}

// ---------------------------------------------------------------------------
// Clustering
// ---------------------------------------------------------------------------

std::vector<std::vector<int>> Clustering::clusters() const {
  std::map<int, std::vector<int>> by_id;
  for (int v = 0; v < n(); ++v) by_id[assignment[v]].push_back(v);
  std::vector<std::vector<int>> out;
  out.reserve(by_id.size());
  for (auto& [id, members] : by_id) {
    std::sort(members.begin(), members.end());
    out.push_back(std::move(members));
  }
  std::sort(out.begin(), out.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  return out;
}

Clustering Clustering::singletons(int n) {
  Clustering c;
  c.assignment.resize(n);
  for (int v = 0; v < n; ++v) c.assignment[v] = v;
  return c;
}

Clustering Clustering::from_clusters(int n, const std::vector<std::vector<int>>& clusters) {
  Clustering c;
  c.assignment.assign(n, -1);
  // Assign ids in canonical (sorted-by-minimum) order for determinism.
  std::vector<std::vector<int>> sorted = clusters;
  for (auto& cl : sorted) {
    if (cl.empty()) throw std::invalid_argument("empty cluster");
    std::sort(cl.begin(), cl.end());
  }
  std::sort(sorted.begin(), sorted.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  int next_id = 0;
  for (const auto& cl : sorted) {
    for (int v : cl) {
      if (v < 0 || v >= n) throw std::invalid_argument("cluster vertex out of range");
      if (c.assignment[v] != -1) throw std::invalid_argument("vertex in two clusters");
      c.assignment[v] = next_id;
    }
    ++next_id;
  }
  for (int v = 0; v < n; ++v)
    if (c.assignment[v] == -1) throw std::invalid_argument("vertex missing from clustering");
  return c;
}

bool Clustering::operator==(const Clustering& o) const {
  if (n() != o.n()) return false;
  return clusters() == o.clusters();
}

std::string clustering_to_string(const Clustering& c) {
  std::ostringstream out;
  for (const auto& cl : c.clusters()) {
    for (std::size_t i = 0; i < cl.size(); ++i) {
      if (i) out << ' ';
      out << cl[i];
    }
    out << '\n';
  }
  return out.str();
}

// ---------------------------------------------------------------------------
// Costs
// ---------------------------------------------------------------------------

std::int64_t cluster_cost2(const SignedGraph& g, const Bitset& members) {
  const std::int64_t s = members.count();
  if (s == 0) throw std::invalid_argument("cluster_cost2: empty set");
  std::int64_t plus_inside2 = 0;  // ordered +pairs inside (u≠v)
  std::int64_t plus_leaving = 0;
  for (int v : members.to_vector()) {
    const std::int64_t inside = g.plus_count_in(v, members) - 1;  // drop the self-loop
    plus_inside2 += inside;
    plus_leaving += (g.pos_degree(v) - 1) - inside;
  }
  // 2·cost(S) = |E⁺(S, V∖S)| + 2·|E⁻(S)| with |E⁻(S)| = C(s,2) − plus_inside2/2.
  return plus_leaving + s * (s - 1) - plus_inside2;
}

std::int64_t cluster_cost2(const SignedGraph& g, const std::vector<int>& members) {
  return cluster_cost2(g, make_bitset(g.n(), members));
}

std::int64_t disagreements(const SignedGraph& g, const Clustering& c) {
  std::int64_t total2 = 0;
  for (const auto& cl : c.clusters()) total2 += cluster_cost2(g, cl);
  // Each cut +edge contributes 1 to both endpoint clusters' doubled costs;
  // each internal −edge contributes 2 once.  So the sum is exactly 2× the
  // disagreement count.
  return total2 / 2;
}

// ---------------------------------------------------------------------------
// Generators
// ---------------------------------------------------------------------------

Clustering planted_truth(int n, int k) {
  if (k <= 0 || n < k) throw std::invalid_argument("planted: need 1 <= k <= n");
  Clustering c;
  c.assignment.resize(n);
  const int base = n / k;
  const int extra = n % k;  // first `extra` blocks get one more vertex
  int v = 0;
  for (int b = 0; b < k; ++b) {
    const int size = base + (b < extra ? 1 : 0);
    for (int i = 0; i < size; ++i) c.assignment[v++] = b;
  }
  return c;
}

SignedGraph gen_planted(const PlantedParams& params, std::uint64_t seed) {
  const Clustering truth = planted_truth(params.n, params.k);
  Rng rng(derive_seed(seed, "gen-planted"));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < params.n; ++u) {
    for (int v = u + 1; v < params.n; ++v) {
      bool plus = false;
      if (truth.assignment[u] == truth.assignment[v]) plus = rng.bernoulli(params.p_intra);
      if (params.p_flip > 0 && rng.bernoulli(params.p_flip)) plus = !plus;
      if (plus) edges.emplace_back(u, v);
    }
  }
  return SignedGraph(params.n, edges);
}

SignedGraph gen_random(int n, double p, std::uint64_t seed) {
  Rng rng(derive_seed(seed, "gen-random"));
  std::vector<std::pair<int, int>> edges;
  for (int u = 0; u < n; ++u)
    for (int v = u + 1; v < n; ++v)
      if (rng.bernoulli(p)) edges.emplace_back(u, v);
  return SignedGraph(n, edges);
}

SignedGraph gen_path(int n) {
  std::vector<std::pair<int, int>> edges;
  for (int i = 0; i + 1 < n; ++i) edges.emplace_back(i, i + 1);
  return SignedGraph(n, edges);
}

SignedGraph gen_clique_union(const std::vector<int>& sizes) {
  std::vector<std::pair<int, int>> edges;
  int start = 0;
  for (int size : sizes) {
    if (size <= 0) throw std::invalid_argument("clique sizes must be positive");
    for (int u = start; u < start + size; ++u)
      for (int v = u + 1; v < start + size; ++v) edges.emplace_back(u, v);
    start += size;
  }
  return SignedGraph(start, edges);
}

// ---------------------------------------------------------------------------
// File formats
// ---------------------------------------------------------------------------

namespace {

bool blank(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

// Splits a line into int tokens; returns false on any non-integer token.
bool parse_ints(const std::string& line, std::vector<long long>& out) {
  out.clear();
  std::istringstream in(line);
  std::string tok;
  while (in >> tok) {
    try {
      std::size_t used = 0;
      const long long value = std::stoll(tok, &used);
      if (used != tok.size()) return false;
      out.push_back(value);
    } catch (const std::exception&) {
      return false;
    }
  }
  return true;
}

}  // namespace

SignedGraph read_graph(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open graph file: " + path);
  std::string line;
  int line_no = 0;
  std::vector<long long> nums;

  if (!std::getline(in, line)) throw ParseError(path, 1, "missing header line 'n m'");
  ++line_no;
  if (!parse_ints(line, nums) || nums.size() != 2)
    throw ParseError(path, line_no, "expected header 'n m', got '" + line + "'");
  const long long n = nums[0];
  const long long m = nums[1];
  if (n < 0 || m < 0) throw ParseError(path, line_no, "n and m must be non-negative");

  std::vector<std::pair<int, int>> edges;
  edges.reserve(static_cast<std::size_t>(m));
  while (static_cast<long long>(edges.size()) < m) {
    if (!std::getline(in, line))
      throw ParseError(path, line_no, "expected " + std::to_string(m) + " edge lines, found only " +
                                          std::to_string(edges.size()));
    ++line_no;
    if (!parse_ints(line, nums) || nums.size() != 2)
      throw ParseError(path, line_no, "expected edge 'u v', got '" + line + "'");
    const long long u = nums[0];
    const long long v = nums[1];
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw ParseError(path, line_no, "vertex id out of range [0, " + std::to_string(n) + ")");
    if (u >= v) throw ParseError(path, line_no, "edges must satisfy u < v (self-loops are implicit)");
    edges.emplace_back(static_cast<int>(u), static_cast<int>(v));
  }
  while (std::getline(in, line)) {
    ++line_no;
    if (!blank(line)) throw ParseError(path, line_no, "unexpected content after " + std::to_string(m) + " edges");
  }
  try {
    return SignedGraph(static_cast<int>(n), edges);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, line_no, e.what());
  }
}

void write_graph(const std::string& path, const SignedGraph& g) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write graph file: " + path);
  out << g.n() << ' ' << g.m_plus() << '\n';
  for (int u = 0; u < g.n(); ++u)
    for (int v : g.pos_adj(u))
      if (v > u) out << u << ' ' << v << '\n';
}

Clustering read_clustering(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open clustering file: " + path);
  std::string line;
  int line_no = 0;
  std::vector<long long> nums;
  std::vector<int> owner_line(n, 0);
  std::vector<std::vector<int>> clusters;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank(line)) continue;
    if (!parse_ints(line, nums) || nums.empty())
      throw ParseError(path, line_no, "expected space-separated vertex ids, got '" + line + "'");
    std::vector<int> members;
    for (long long v : nums) {
      if (v < 0 || v >= n)
        throw ParseError(path, line_no, "vertex id out of range [0, " + std::to_string(n) + ")");
      if (owner_line[static_cast<int>(v)] != 0)
        throw ParseError(path, line_no,
                         "vertex " + std::to_string(v) + " already appeared on line " +
                             std::to_string(owner_line[static_cast<int>(v)]));
      owner_line[static_cast<int>(v)] = line_no;
      members.push_back(static_cast<int>(v));
    }
    clusters.push_back(std::move(members));
  }
  for (int v = 0; v < n; ++v)
    if (owner_line[v] == 0)
      throw ParseError(path, line_no, "vertex " + std::to_string(v) + " missing from clustering");
  return Clustering::from_clusters(n, clusters);
}

void write_clustering(const std::string& path, const Clustering& c) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write clustering file: " + path);
  out << clustering_to_string(c);
}

}  // namespace cc

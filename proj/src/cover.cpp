#include "cc/cover.hpp"

#include <algorithm>
#include <fstream>
#include <map>
#include <sstream>

namespace cc {

// ---------------------------------------------------------------------------
// Crossing charges
// ---------------------------------------------------------------------------

CrossDegrees compute_d_cross(const SignedGraph& g, const PreclusteredInstance& inst) {
  CrossDegrees cd;
  const int n = g.n();
  cd.per_vertex_.resize(n);
  cd.scaled_.resize(n);
  cd.atom_cost2_.resize(inst.atom_count());
  for (int id = 0; id < inst.atom_count(); ++id) {
    const auto& members = inst.atom_members(id);
    const std::int64_t cost2 = cluster_cost2(g, members);
    cd.atom_cost2_[id] = cost2;
    if (cost2 == 0) cd.zero_cost_atoms_.push_back(id);
    const Rat share(BigInt(cost2), BigInt(members.size()));  // 2·cost(K)/|K|
    for (int v : members) {
      cd.per_vertex_[v] = share;
      cd.scaled_[v] = 2 * cost2;
    }
  }
  for (int v = 0; v < n; ++v) {
    if (inst.in_atom(v)) continue;
    cd.per_vertex_[v] = Rat(g.pos_degree(v) - 1);
    cd.scaled_[v] = 2 * (g.pos_degree(v) - 1);
  }
  cd.total_ = 0;
  for (int v = 0; v < n; ++v) cd.total_ += cd.per_vertex_[v];
  return cd;
}

Rat CrossDegrees::group_value(const PreclusteredInstance& inst, int v) const {
  if (!inst.in_atom(v)) return per_vertex_[v];
  return Rat(atom_cost2_[inst.atom_id(v)]);  // |K| equal shares of 2·cost(K)/|K|
}

Rat cover2(const SignedGraph& g, const CrossDegrees& cd, const std::vector<int>& members) {
  Rat charge = 0;
  for (int v : members) charge += cd.of(v);
  return Rat(cluster_cost2(g, members)) + 2 * charge;
}

Rat cover2(const SignedGraph& g, const CrossDegrees& cd, const Bitset& members) {
  Rat charge = 0;
  for (int v : members.to_vector()) charge += cd.of(v);
  return Rat(cluster_cost2(g, members)) + 2 * charge;
}

// ---------------------------------------------------------------------------
// FractionalClusterSolution
// ---------------------------------------------------------------------------

FractionalClusterSolution::FractionalClusterSolution(int n, std::int64_t denominator,
                                                     std::vector<SolutionEntry> entries)
    : n_(n), denom_(denominator) {
  if (denominator <= 0) throw std::invalid_argument("denominator must be positive");
  std::map<std::vector<int>, std::int64_t> merged;
  for (auto& e : entries) {
    if (e.k < 0) throw std::invalid_argument("negative entry weight");
    if (e.k == 0) continue;
    if (e.members.empty()) throw std::invalid_argument("empty entry set");
    std::sort(e.members.begin(), e.members.end());
    if (std::adjacent_find(e.members.begin(), e.members.end()) != e.members.end())
      throw std::invalid_argument("entry set with repeated vertex");
    if (e.members.front() < 0 || e.members.back() >= n)
      throw std::invalid_argument("entry vertex out of range");
    merged[std::move(e.members)] += e.k;
  }
  incidence_.resize(n);
  entries_.reserve(merged.size());
  for (auto& [members, k] : merged) {
    const int idx = static_cast<int>(entries_.size());
    for (int v : members) incidence_[v].push_back(idx);
    entries_.push_back({k, members});
  }
}

std::int64_t FractionalClusterSolution::coverage(int v) const {
  std::int64_t sum = 0;
  for (int idx : incidence_[v]) sum += entries_[idx].k;
  return sum;
}

std::int64_t FractionalClusterSolution::pair_coverage(int u, int v) const {
  std::int64_t sum = 0;
  for (int idx : incidence_[u]) {
    const auto& m = entries_[idx].members;
    if (std::binary_search(m.begin(), m.end(), v)) sum += entries_[idx].k;
  }
  return sum;
}

Rat FractionalClusterSolution::x_value(int u, int v) const {
  return Rat(1) - Rat(BigInt(pair_coverage(u, v)), BigInt(denom_));
}

bool FractionalClusterSolution::partition_feasible() const {
  for (int v = 0; v < n_; ++v)
    if (coverage(v) != denom_) return false;
  return true;
}

// ---------------------------------------------------------------------------
// CoverSolution
// ---------------------------------------------------------------------------

CoverSolution::CoverSolution(int n, std::vector<CoverEntry> entries) : n_(n) {
  std::map<std::vector<int>, Rat> merged;
  for (auto& e : entries) {
    if (e.value < 0) throw std::invalid_argument("negative entry value");
    if (e.value == 0) continue;
    if (e.members.empty()) throw std::invalid_argument("empty entry set");
    std::sort(e.members.begin(), e.members.end());
    if (std::adjacent_find(e.members.begin(), e.members.end()) != e.members.end())
      throw std::invalid_argument("entry set with repeated vertex");
    if (e.members.front() < 0 || e.members.back() >= n)
      throw std::invalid_argument("entry vertex out of range");
    merged[std::move(e.members)] += e.value;
  }
  incidence_.resize(n);
  entries_.reserve(merged.size());
  for (auto& [members, value] : merged) {
    const int idx = static_cast<int>(entries_.size());
    for (int v : members) incidence_[v].push_back(idx);
    entries_.push_back({value, members});
  }
}

Rat CoverSolution::coverage(int v) const {
  Rat sum = 0;
  for (int idx : incidence_[v]) sum += entries_[idx].value;
  return sum;
}

Rat solution_cost(const SignedGraph& g, const FractionalClusterSolution& sol) {
  Rat total = 0;
  for (const auto& e : sol.entries())
    total += Rat(BigInt(e.k) * BigInt(cluster_cost2(g, e.members)), BigInt(2) * sol.denominator());
  return total;
}

Rat solution_cost(const SignedGraph& g, const CoverSolution& sol) {
  Rat total = 0;
  for (const auto& e : sol.entries()) total += e.value * Rat(cluster_cost2(g, e.members), 2);
  return total;
}

Rat solution_cover(const SignedGraph& g, const CrossDegrees& cd,
                   const FractionalClusterSolution& sol) {
  Rat total = 0;
  for (const auto& e : sol.entries())
    total += Rat(BigInt(e.k), BigInt(2) * sol.denominator()) * cover2(g, cd, e.members);
  return total;
}

Rat solution_cover(const SignedGraph& g, const CrossDegrees& cd, const CoverSolution& sol) {
  Rat total = 0;
  for (const auto& e : sol.entries()) total += e.value / 2 * cover2(g, cd, e.members);
  return total;
}

// ---------------------------------------------------------------------------
// Conversion to an exact fractional partition
// ---------------------------------------------------------------------------

namespace {

// Groups a conversion rebalances over: every atom plus every non-atom vertex,
// keyed by smallest member.
struct Group {
  int key;
  std::vector<int> members;
};

std::vector<Group> instance_groups(const PreclusteredInstance& inst) {
  std::vector<Group> groups;
  for (int id = 0; id < inst.atom_count(); ++id)
    groups.push_back({inst.atom_members(id).front(), inst.atom_members(id)});
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.in_atom(v)) groups.push_back({v, {v}});
  std::sort(groups.begin(), groups.end(), [](const Group& a, const Group& b) { return a.key < b.key; });
  return groups;
}

bool entry_splits_atom(const PreclusteredInstance& inst, const std::vector<int>& members) {
  std::map<int, int> atom_hits;
  for (int v : members)
    if (inst.in_atom(v)) ++atom_hits[inst.atom_id(v)];
  for (const auto& [id, hits] : atom_hits)
    if (hits != static_cast<int>(inst.atom_members(id).size())) return true;
  return false;
}

}  // namespace

std::int64_t conversion_denominator(std::int64_t t_mw, const Rat& gamma) {
  if (t_mw <= 0) throw std::invalid_argument("round count must be positive");
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  // c = ⌈1/gamma⌉.
  const BigInt gnum = boost::multiprecision::numerator(gamma);
  const BigInt gden = boost::multiprecision::denominator(gamma);
  const BigInt c_big = (gden + gnum - 1) / gnum;
  return c_big.convert_to<std::int64_t>() * t_mw;
}

FractionalClusterSolution convert_cover_to_cluster(const CoverSolution& z,
                                                   const PreclusteredInstance& inst,
                                                   const SignedGraph& g, const CrossDegrees& cd,
                                                   std::int64_t t_mw, const Rat& gamma) {
  if (t_mw <= 0) throw std::invalid_argument("round count must be positive");
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");

  for (const auto& e : z.entries()) {
    if (entry_splits_atom(inst, e.members))
      throw std::invalid_argument("entry splits an atom: set starting at vertex " +
                                  std::to_string(e.members.front()));
    if (e.value * t_mw < 1)
      throw std::invalid_argument("support value below 1/t_mw on set starting at vertex " +
                                  std::to_string(e.members.front()));
  }
  for (int v = 0; v < z.n(); ++v) {
    if (z.coverage(v) < 1)
      throw std::invalid_argument("cover constraint violated at vertex " + std::to_string(v));
    if (static_cast<std::int64_t>(z.entries_containing(v).size()) > t_mw)
      throw std::invalid_argument("vertex " + std::to_string(v) + " appears in more than t_mw entries");
  }

  const std::int64_t d_out = conversion_denominator(t_mw, gamma);

  // Clamp each value to 1, then round up to the output grid; merge duplicates
  // and cap at 1 again.
  std::map<std::vector<int>, std::int64_t> weight;
  for (const auto& e : z.entries()) {
    const Rat clamped = e.value < 1 ? e.value : Rat(1);
    const BigInt num = boost::multiprecision::numerator(clamped);
    const BigInt den = boost::multiprecision::denominator(clamped);
    const BigInt rounded_up = (num * d_out + den - 1) / den;
    weight[e.members] += rounded_up.convert_to<std::int64_t>();
  }
  for (auto& [members, k] : weight) k = std::min(k, d_out);

  auto coverage_of = [&](int v) {
    std::int64_t sum = 0;
    for (const auto& [members, k] : weight)
      if (std::binary_search(members.begin(), members.end(), v)) sum += k;
    return sum;
  };

  // Shift excess coverage off each over-covered group: move weight from a set
  // W ⊇ group (largest first, then lexicographic) onto W minus the group.
  const std::vector<Group> groups = instance_groups(inst);
  for (const Group& group : groups) {
    const int rep = group.key;  // entries respect atoms, so any member works
    for (;;) {
      const std::int64_t excess = coverage_of(rep) - d_out;
      if (excess <= 0) break;
      const std::vector<int>* w_members = nullptr;
      for (const auto& [members, k] : weight) {
        if (k <= 0) continue;
        if (!std::binary_search(members.begin(), members.end(), rep)) continue;
        if (w_members == nullptr || members.size() > w_members->size() ||
            (members.size() == w_members->size() && members < *w_members))
          w_members = &members;
      }
      if (w_members == nullptr)
        throw std::logic_error("no positive-weight set covers an over-covered group");
      const std::vector<int> w = *w_members;
      const std::int64_t b = std::min(weight[w], excess);
      weight[w] -= b;
      std::vector<int> u;
      std::set_difference(w.begin(), w.end(), group.members.begin(), group.members.end(),
                          std::back_inserter(u));
      if (!u.empty()) weight[u] += b;
    }
  }

  std::vector<SolutionEntry> out;
  for (auto& [members, k] : weight)
    if (k > 0) out.push_back({k, members});
  FractionalClusterSolution result(z.n(), d_out, std::move(out));

  for (int v = 0; v < result.n(); ++v)
    if (result.coverage(v) != d_out)
      throw std::logic_error("conversion left vertex " + std::to_string(v) + " not exactly covered");
  const Rat before = solution_cover(g, cd, z);
  const Rat after = solution_cover(g, cd, result);
  if (after > (Rat(1) + gamma) * before)
    throw std::logic_error("conversion exceeded the (1+gamma) objective budget");
  return result;
}

// ---------------------------------------------------------------------------
// Solution files
// ---------------------------------------------------------------------------

FractionalClusterSolution read_solution(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open solution file: " + path);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line)) throw ParseError(path, 1, "missing denominator line");
  ++line_no;
  std::int64_t denom = 0;
  {
    std::istringstream header(line);
    if (!(header >> denom) || denom <= 0 || !(header >> std::ws).eof())
      throw ParseError(path, line_no, "expected positive denominator, got '" + line + "'");
  }

  std::vector<SolutionEntry> entries;
  while (std::getline(in, line)) {
    ++line_no;
    if (line.find_first_not_of(" \t\r") == std::string::npos) continue;
    const auto colon = line.find(':');
    if (colon == std::string::npos) throw ParseError(path, line_no, "expected 'k: v1 v2 …'");
    SolutionEntry e;
    {
      std::istringstream head(line.substr(0, colon));
      if (!(head >> e.k) || e.k <= 0 || !(head >> std::ws).eof())
        throw ParseError(path, line_no, "expected positive integer before ':'");
    }
    std::istringstream tail(line.substr(colon + 1));
    long long v = 0;
    while (tail >> v) {
      if (v < 0 || v >= n) throw ParseError(path, line_no, "vertex id out of range");
      e.members.push_back(static_cast<int>(v));
    }
    if (!tail.eof()) throw ParseError(path, line_no, "non-integer vertex token");
    if (e.members.empty()) throw ParseError(path, line_no, "entry lists no vertices");
    entries.push_back(std::move(e));
  }
  try {
    return FractionalClusterSolution(n, denom, std::move(entries));
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, line_no, e.what());
  }
}

void write_solution(const std::string& path, const FractionalClusterSolution& sol) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write solution file: " + path);
  out << sol.denominator() << '\n';
  for (const auto& e : sol.entries()) {
    out << e.k << ':';
    for (int v : e.members) out << ' ' << v;
    out << '\n';
  }
}

}  // namespace cc

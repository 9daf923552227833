#include "cc/precluster.hpp"

#include <algorithm>
#include <fstream>
#include <numeric>
#include <sstream>

namespace cc {

// ---------------------------------------------------------------------------
// PreclusteredInstance
// ---------------------------------------------------------------------------

PreclusteredInstance::PreclusteredInstance(int n, std::vector<std::vector<int>> atoms,
                                           const std::vector<std::pair<int, int>>& adm_pairs)
    : n_(n), atom_of_(n, -1), n_adm_(n), v_k_(n) {
  for (auto& k : atoms) {
    if (k.size() < 2) throw std::invalid_argument("atom of size < 2");
    std::sort(k.begin(), k.end());
    if (std::adjacent_find(k.begin(), k.end()) != k.end())
      throw std::invalid_argument("atom with repeated vertex");
  }
  std::sort(atoms.begin(), atoms.end(),
            [](const std::vector<int>& a, const std::vector<int>& b) { return a.front() < b.front(); });
  atoms_ = std::move(atoms);
  for (int id = 0; id < static_cast<int>(atoms_.size()); ++id) {
    for (int v : atoms_[id]) {
      if (v < 0 || v >= n) throw std::invalid_argument("atom vertex out of range");
      if (atom_of_[v] != -1) throw std::invalid_argument("atoms are not disjoint");
      atom_of_[v] = id;
      v_k_.set(v);
    }
  }
  for (const auto& [u, v] : adm_pairs) {
    if (u < 0 || v < 0 || u >= n || v >= n) throw std::invalid_argument("admissible vertex out of range");
    if (u == v) throw std::invalid_argument("admissible pair must join distinct vertices");
    if (in_atom(u) && in_atom(v)) {
      throw std::invalid_argument(atom_of_[u] == atom_of_[v]
                                      ? "pair inside one atom cannot be admissible"
                                      : "admissible pair needs an endpoint outside every atom");
    }
    n_adm_[u].push_back(v);
    n_adm_[v].push_back(u);
    ++adm_pair_count_;
  }
  for (auto& lst : n_adm_) {
    std::sort(lst.begin(), lst.end());
    if (std::adjacent_find(lst.begin(), lst.end()) != lst.end())
      throw std::invalid_argument("duplicate admissible pair");
  }
}

std::vector<int> PreclusteredInstance::group_of(int v) const {
  if (in_atom(v)) return atoms_[atom_of_[v]];
  return {v};
}

bool PreclusteredInstance::is_admissible(int u, int v) const {
  const auto& lst = n_adm_[u];
  return std::binary_search(lst.begin(), lst.end(), v);
}

PairClass PreclusteredInstance::classify(int u, int v) const {
  if (in_atom(u) && atom_of_[u] == atom_of_[v]) return PairClass::atomic;
  if (is_admissible(u, v)) return PairClass::admissible;
  return PairClass::non_admissible;
}

// ---------------------------------------------------------------------------
// Shared predicates
// ---------------------------------------------------------------------------

namespace {

// Degrees within an eps-window of each other.
bool degree_similar(const SignedGraph& g, int a, int b, const Rat& eps) {
  return eps * g.pos_degree(a) <= Rat(g.pos_degree(b)) &&
         eps * g.pos_degree(b) <= Rat(g.pos_degree(a));
}

}  // namespace

int common_similar_count(const SignedGraph& g, int u, int v, const Rat& eps) {
  const int base = g.pos_degree(u) <= g.pos_degree(v) ? u : v;
  const int other = base == u ? v : u;
  int count = 0;
  for (int w : g.pos_adj(base)) {
    if (!g.is_plus(other, w)) continue;
    if (degree_similar(g, u, w, eps) && degree_similar(g, v, w, eps)) ++count;
  }
  return count;
}

// ---------------------------------------------------------------------------
// Construction
// ---------------------------------------------------------------------------

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  }
  void unite(int a, int b) {
    a = find(a);
    b = find(b);
    if (a != b) parent[std::max(a, b)] = std::min(a, b);
  }
};

// Atom-side conditions for one group: every member has ≥ (1 − c1·eps)·|K|
// +neighbors inside (self included) and ≤ c2·eps·|K| outside.
bool group_is_cohesive(const SignedGraph& g, const std::vector<int>& members,
                       const PreclusterConfig& cfg) {
  const Bitset mask = make_bitset(g.n(), members);
  const Rat size(static_cast<int>(members.size()));
  for (int v : members) {
    const int inside = g.plus_count_in(v, mask);
    const int outside = g.pos_degree(v) - inside;
    if (Rat(inside) < (Rat(1) - Rat(cfg.c1) * cfg.eps) * size) return false;
    if (Rat(outside) > Rat(cfg.c2) * cfg.eps * size) return false;
  }
  return true;
}

}  // namespace

PreclusteredInstance build_preclustering(const SignedGraph& g, const PreclusterConfig& cfg) {
  const int n = g.n();

  // Two +adjacent vertices agree when their +neighborhoods (self-loops
  // included) differ on less than theta_agree·max(d(u), d(v)) vertices.
  auto agrees = [&](int u, int v) {
    const std::uint64_t diff = xor_popcount(g.row(u).data(), g.row(v).data(), g.row(u).word_count());
    return static_cast<double>(diff) <
           cfg.theta_agree * static_cast<double>(std::max(g.pos_degree(u), g.pos_degree(v)));
  };

  // A vertex is a plausible atom member only if most of its closed
  // +neighborhood agrees with it.
  std::vector<bool> heavy(n, false);
  for (int v = 0; v < n; ++v) {
    int agreeing = 1;  // v agrees with itself
    for (int u : g.pos_adj(v))
      if (u != v && agrees(u, v)) ++agreeing;
    heavy[v] = static_cast<double>(agreeing) >=
               (1.0 - cfg.theta_light) * static_cast<double>(g.pos_degree(v));
  }

  // Connected components of the agreement relation among heavy vertices.
  UnionFind uf(n);
  for (int v = 0; v < n; ++v) {
    if (!heavy[v]) continue;
    for (int u : g.pos_adj(v))
      if (u > v && heavy[u] && agrees(u, v)) uf.unite(u, v);
  }
  std::vector<std::vector<int>> components(n);
  for (int v = 0; v < n; ++v)
    if (heavy[v]) components[uf.find(v)].push_back(v);

  std::vector<std::vector<int>> atoms;
  for (auto& comp : components) {
    if (comp.size() < 2) continue;
    if (group_is_cohesive(g, comp, cfg)) atoms.push_back(std::move(comp));
  }

  // Atom membership lookup for the pair-marking phase.
  std::vector<int> atom_of(n, -1);
  for (int id = 0; id < static_cast<int>(atoms.size()); ++id)
    for (int v : atoms[id]) atom_of[v] = id;

  // Candidate admissible pairs: strict degree window plus enough common
  // degree-similar neighbors; at most one endpoint inside an atom.
  struct AdmPair {
    int u, v, strength;
  };
  std::vector<AdmPair> pairs;
  for (int u = 0; u < n; ++u) {
    for (int v = u + 1; v < n; ++v) {
      if (atom_of[u] >= 0 && atom_of[v] >= 0) continue;
      if (intersect_count(g.row(u), g.row(v)) == 0) continue;
      if (!degree_similar(g, u, v, cfg.eps)) continue;
      const int strength = common_similar_count(g, u, v, cfg.eps);
      const Rat need = cfg.eps * std::min(g.pos_degree(u), g.pos_degree(v));
      if (Rat(strength) < need) continue;
      pairs.push_back({u, v, strength});
    }
  }

  // Enforce the per-vertex admissible-degree budget d_adm(v) ≤ 2·eps⁻³·d(v)
  // by discarding each over-budget vertex's weakest pairs (smallest common
  // count, then smallest partner id).
  const Rat eps3 = cfg.eps * cfg.eps * cfg.eps;
  std::vector<std::vector<int>> incident(n);  // indices into `pairs`
  std::vector<bool> dropped(pairs.size(), false);
  std::vector<int> adm_deg(n, 0);
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i) {
    incident[pairs[i].u].push_back(i);
    incident[pairs[i].v].push_back(i);
    ++adm_deg[pairs[i].u];
    ++adm_deg[pairs[i].v];
  }
  auto over_budget = [&](int v) { return Rat(adm_deg[v]) * eps3 > Rat(2 * g.pos_degree(v)); };
  for (;;) {
    int victim = -1;
    for (int v = 0; v < n; ++v)
      if (over_budget(v)) {
        victim = v;
        break;
      }
    if (victim == -1) break;
    int weakest = -1;
    for (int i : incident[victim]) {
      if (dropped[i]) continue;
      if (weakest == -1) {
        weakest = i;
        continue;
      }
      const int partner_i = pairs[i].u == victim ? pairs[i].v : pairs[i].u;
      const int partner_w = pairs[weakest].u == victim ? pairs[weakest].v : pairs[weakest].u;
      if (pairs[i].strength < pairs[weakest].strength ||
          (pairs[i].strength == pairs[weakest].strength && partner_i < partner_w))
        weakest = i;
    }
    dropped[weakest] = true;
    --adm_deg[pairs[weakest].u];
    --adm_deg[pairs[weakest].v];
  }

  std::vector<std::pair<int, int>> kept;
  for (int i = 0; i < static_cast<int>(pairs.size()); ++i)
    if (!dropped[i]) kept.emplace_back(pairs[i].u, pairs[i].v);
  return PreclusteredInstance(n, std::move(atoms), kept);
}

// ---------------------------------------------------------------------------
// Verifiers
// ---------------------------------------------------------------------------

SimilarityReport verify_similar(const PreclusteredInstance& inst, const SignedGraph& g,
                                const PreclusterConfig& cfg) {
  SimilarityReport report;
  auto flag = [&](std::string msg) {
    report.pass = false;
    report.violations.push_back(std::move(msg));
  };

  const Rat eps3 = cfg.eps * cfg.eps * cfg.eps;
  for (int v = 0; v < inst.n(); ++v) {
    if (Rat(inst.adm_degree(v)) * eps3 > Rat(2 * g.pos_degree(v)))
      flag("adm-degree budget exceeded at vertex " + std::to_string(v) + ": d_adm=" +
           std::to_string(inst.adm_degree(v)) + ", d=" + std::to_string(g.pos_degree(v)));
  }

  for (int u = 0; u < inst.n(); ++u) {
    for (int v : inst.adm_neighbors(u)) {
      if (v < u) continue;  // each pair once
      const std::string pair_name = "(" + std::to_string(u) + "," + std::to_string(v) + ")";
      if (Rat(g.pos_degree(u)) * cfg.eps > Rat(2 * g.pos_degree(v)) ||
          Rat(g.pos_degree(v)) * cfg.eps > Rat(2 * g.pos_degree(u)))
        flag("admissible pair " + pair_name + " joins too-different degrees");
      const int strength = common_similar_count(g, u, v, cfg.eps);
      if (Rat(strength) < cfg.eps * std::min(g.pos_degree(u), g.pos_degree(v)))
        flag("admissible pair " + pair_name + " lacks common degree-similar neighbors (" +
             std::to_string(strength) + ")");
    }
  }

  for (int id = 0; id < inst.atom_count(); ++id) {
    const auto& members = inst.atom_members(id);
    const Bitset mask = make_bitset(g.n(), members);
    const Rat size(static_cast<int>(members.size()));
    for (int v : members) {
      const int inside = g.plus_count_in(v, mask);
      const int outside = g.pos_degree(v) - inside;
      if (Rat(inside) < (Rat(1) - Rat(cfg.c1) * cfg.eps) * size)
        flag("atom " + std::to_string(id) + " member " + std::to_string(v) +
             " has too few +neighbors inside");
      if (Rat(outside) > Rat(cfg.c2) * cfg.eps * size)
        flag("atom " + std::to_string(id) + " member " + std::to_string(v) +
             " has too many +neighbors outside");
    }
  }
  return report;
}

LargeClusterReport verify_large(const Clustering& c, const PreclusteredInstance& inst,
                                const SignedGraph& g, const Rat& eps) {
  LargeClusterReport report;
  auto flag = [&](std::string msg) {
    report.ok = false;
    report.violations.push_back(std::move(msg));
  };

  const auto clusters = c.clusters();
  for (const auto& cl : clusters) {
    const Bitset mask = make_bitset(inst.n(), cl);
    for (int id = 0; id < inst.atom_count(); ++id) {
      const auto& members = inst.atom_members(id);
      const int inside = intersect_count(mask, make_bitset(inst.n(), members));
      if (inside != 0 && inside != static_cast<int>(members.size()))
        flag("cluster starting at " + std::to_string(cl.front()) + " splits atom " +
             std::to_string(id));
    }
    for (std::size_t i = 0; i < cl.size(); ++i)
      for (std::size_t j = i + 1; j < cl.size(); ++j)
        if (inst.classify(cl[i], cl[j]) == PairClass::non_admissible)
          flag("cluster joins non-admissible pair (" + std::to_string(cl[i]) + "," +
               std::to_string(cl[j]) + ")");
    if (cl.size() > 1) {
      for (int v : cl)
        if (Rat(static_cast<int>(cl.size())) < eps * g.pos_degree(v))
          flag("cluster of size " + std::to_string(cl.size()) + " too small for member " +
               std::to_string(v));
    }
  }
  return report;
}

// ---------------------------------------------------------------------------
// Candidate sets
// ---------------------------------------------------------------------------

std::vector<int> candidate_set(const PreclusteredInstance& inst, int r) {
  if (!inst.in_atom(r)) {
    std::vector<int> out;
    for (int v : inst.adm_neighbors(r))
      if (!inst.in_atom(v)) out.push_back(v);
    return out;
  }
  const auto& members = inst.atom_members(inst.atom_id(r));
  std::vector<int> common = inst.adm_neighbors(members.front());
  for (std::size_t i = 1; i < members.size() && !common.empty(); ++i) {
    const auto& next = inst.adm_neighbors(members[i]);
    std::vector<int> merged;
    std::set_intersection(common.begin(), common.end(), next.begin(), next.end(),
                          std::back_inserter(merged));
    common = std::move(merged);
  }
  std::vector<int> out;
  std::set_union(members.begin(), members.end(), common.begin(), common.end(),
                 std::back_inserter(out));
  return out;
}

// ---------------------------------------------------------------------------
// Instance files
// ---------------------------------------------------------------------------

namespace {

bool blank_line(const std::string& line) {
  return line.find_first_not_of(" \t\r") == std::string::npos;
}

std::string strip(const std::string& line) {
  const auto first = line.find_first_not_of(" \t\r");
  if (first == std::string::npos) return "";
  const auto last = line.find_last_not_of(" \t\r");
  return line.substr(first, last - first + 1);
}

}  // namespace

PreclusteredInstance read_instance(const std::string& path, int n) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open instance file: " + path);
  std::string line;
  int line_no = 0;

  if (!std::getline(in, line) || strip(line) != "#atoms")
    throw ParseError(path, 1, "expected '#atoms' header");
  ++line_no;

  std::vector<std::vector<int>> atoms;
  std::vector<std::pair<int, int>> adm;
  bool in_adm = false;
  while (std::getline(in, line)) {
    ++line_no;
    if (blank_line(line)) continue;
    if (strip(line) == "#adm") {
      if (in_adm) throw ParseError(path, line_no, "duplicate '#adm' header");
      in_adm = true;
      continue;
    }
    std::istringstream tokens(line);
    std::vector<int> values;
    long long x = 0;
    while (tokens >> x) {
      if (x < 0 || x >= n) throw ParseError(path, line_no, "vertex id out of range");
      values.push_back(static_cast<int>(x));
    }
    if (!tokens.eof()) throw ParseError(path, line_no, "non-integer token");
    if (!in_adm) {
      if (values.size() < 2) throw ParseError(path, line_no, "atom needs at least 2 vertices");
      atoms.push_back(std::move(values));
    } else {
      if (values.size() != 2) throw ParseError(path, line_no, "admissible line must hold exactly 2 ids");
      adm.emplace_back(values[0], values[1]);
    }
  }
  if (!in_adm) throw ParseError(path, line_no, "missing '#adm' header");
  try {
    return PreclusteredInstance(n, std::move(atoms), adm);
  } catch (const std::invalid_argument& e) {
    throw ParseError(path, line_no, e.what());
  }
}

void write_instance(const std::string& path, const PreclusteredInstance& inst) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write instance file: " + path);
  out << "#atoms\n";
  for (const auto& atom : inst.atoms()) {
    for (std::size_t i = 0; i < atom.size(); ++i) {
      if (i) out << ' ';
      out << atom[i];
    }
    out << '\n';
  }
  out << "#adm\n";
  for (int u = 0; u < inst.n(); ++u)
    for (int v : inst.adm_neighbors(u))
      if (u < v) out << u << ' ' << v << '\n';
}

}  // namespace cc

#include "cc/family.hpp"

#include "cc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <stdexcept>

namespace cc {

Rat VertexDistribution::mass_of(const std::vector<int>& members) const {
  Rat sum = 0;
  for (int v : members) sum += p[static_cast<std::size_t>(v)];
  return sum;
}

Rat VertexDistribution::total() const {
  Rat sum = 0;
  for (const Rat& value : p) sum += value;
  return sum;
}

void VertexDistribution::validate() const {
  if (p.empty()) throw std::invalid_argument("distribution over no vertices");
  for (const Rat& value : p)
    if (value < 0) throw std::invalid_argument("negative vertex probability");
  if (total() != 1) throw std::invalid_argument("vertex probabilities must sum to 1");
}

std::vector<Rat> r_grid(const SignedGraph& g, const CrossDegrees& cd, const Rat& gamma) {
  const Rat half_total = cd.total() / 2;
  const Rat lo = half_total > 1 ? half_total : Rat(1);
  const Rat hi = 2 * (Rat(g.n()) * g.n() + cd.total());
  std::vector<Rat> grid;
  Rat value = lo;
  for (;;) {
    grid.push_back(value);
    if (value >= hi) break;
    value *= Rat(1) + gamma;
  }
  return grid;
}

CoverSolution family_to_point(const PartialFamily& family, int n, const Rat& gamma) {
  if (family.clusters.empty()) throw std::invalid_argument("empty family");
  if (family.covered_mass <= 0) throw std::invalid_argument("family covers no mass");
  if (gamma <= 0) throw std::invalid_argument("gamma must be positive");
  Rat value = Rat(1) / family.covered_mass;
  const Rat cap = Rat(1) / gamma;
  if (value > cap) value = cap;
  std::vector<CoverEntry> entries;
  entries.reserve(family.clusters.size());
  for (const auto& members : family.clusters) entries.push_back({value, members});
  return CoverSolution(n, std::move(entries));
}

namespace {

// Atoms plus non-atom vertices, ascending by smallest member.
std::vector<std::vector<int>> groups_ascending(const PreclusteredInstance& inst) {
  std::vector<std::vector<int>> groups;
  for (int id = 0; id < inst.atom_count(); ++id) groups.push_back(inst.atom_members(id));
  for (int v = 0; v < inst.n(); ++v)
    if (!inst.in_atom(v)) groups.push_back({v});
  std::sort(groups.begin(), groups.end(),
            [](const auto& a, const auto& b) { return a.front() < b.front(); });
  return groups;
}

struct RootState {
  int root = -1;
  std::vector<int> cluster;  // already stripped of zero-mass members
  Rat p_at_creation = 0;
  int refreshes = 0;
  int version = 0;
  bool dead = true;
};

struct PoolEntry {
  Rat ratio;
  int root;
  int version;
};

// Min-heap order with deterministic tie-breaks.
struct PoolOrder {
  bool operator()(const PoolEntry& a, const PoolEntry& b) const {
    if (a.ratio != b.ratio) return a.ratio > b.ratio;
    if (a.root != b.root) return a.root > b.root;
    return a.version > b.version;
  }
};

}  // namespace

PartialFamily find_family(const SignedGraph& g, const PreclusteredInstance& inst,
                          const CrossDegrees& cd, const VertexDistribution& p, const Rat& r_guess,
                          FamilyMode mode, const FamilyConfig& cfg, std::uint64_t seed) {
  const int n = g.n();
  if (p.n() != n) throw std::invalid_argument("distribution size must match the graph");
  p.validate();
  if (r_guess <= 0) throw std::invalid_argument("ratio guess must be positive");
  validate_params(cfg.cluster);
  if (cfg.refresh_constant < 1) throw std::invalid_argument("refresh_constant must be positive");

  const Rat gamma = cfg.cluster.gamma;
  const Rat eps = cfg.cluster.eps;
  const Rat search_ratio = (Rat(1) + 3 * gamma) * r_guess;
  const Rat insert_bound = (Rat(1) + 6 * gamma) * r_guess;

  // Refresh budget per root: refresh_constant·gamma⁻⁵·eps⁻⁵, rounded up.
  Rat cap_r = cfg.refresh_constant;
  for (int i = 0; i < 5; ++i) cap_r /= gamma * eps;
  std::int64_t refresh_cap = std::int64_t{1} << 62;
  if (cap_r < refresh_cap) {
    const BigInt cap_num = boost::multiprecision::numerator(cap_r);
    const BigInt cap_den = boost::multiprecision::denominator(cap_r);
    refresh_cap = (BigInt((cap_num + cap_den - 1) / cap_den)).convert_to<std::int64_t>();
  }

  std::vector<Rat> p_hat = p.p;
  PartialFamily out;

  const auto mass_hat = [&](const std::vector<int>& members) {
    Rat sum = 0;
    for (int v : members) sum += p_hat[static_cast<std::size_t>(v)];
    return sum;
  };
  const auto strip = [&](const std::vector<int>& members) {
    std::vector<int> kept;
    kept.reserve(members.size());
    for (int v : members)
      if (p_hat[static_cast<std::size_t>(v)] > 0) kept.push_back(v);
    return kept;
  };
  const auto accept = [&](const std::vector<int>& members, const Rat& cover2_value) {
    out.clusters.push_back(members);
    out.covered_mass += p.mass_of(members);
    out.total_cover2 += cover2_value;
    for (int v : members) p_hat[static_cast<std::size_t>(v)] = 0;
  };

  // Fast mode forgets vertices whose mass is too small to matter, whole
  // groups at a time so atoms stay intact.
  if (mode == FamilyMode::fast && cd.total() > 0) {
    for (const auto& group : groups_ascending(inst)) {
      bool all_tiny = true;
      for (int v : group)
        if (p_hat[static_cast<std::size_t>(v)] * 4 * cd.total() > gamma * cd.of(v)) {
          all_tiny = false;
          break;
        }
      if (all_tiny)
        for (int v : group) p_hat[static_cast<std::size_t>(v)] = 0;
    }
  }

  // Every group that is already cheap enough joins the family outright.
  for (const auto& group : groups_ascending(inst)) {
    if (out.covered_mass >= gamma) break;
    const Rat mass = mass_hat(group);
    if (mass == 0) continue;
    const Rat c2 = cover2(g, cd, group);
    if (c2 <= 2 * mass * insert_bound) accept(group, c2);
  }
  if (out.covered_mass >= gamma) return out;

  // Root pool.
  std::vector<int> roots;
  if (mode == FamilyMode::poly) {
    for (int v = 0; v < n; ++v)
      if (p_hat[static_cast<std::size_t>(v)] > 0) roots.push_back(v);
  } else {
    const int rounds = static_cast<int>(std::ceil(
        std::log(static_cast<double>(std::max(2, n))) / to_double(eps * eps)));
    Rng rng(derive_seed(seed, "family-roots"));
    std::vector<char> picked(static_cast<std::size_t>(n), 0);
    for (int round = 0; round < rounds; ++round)
      for (int v = 0; v < n; ++v) {
        if (picked[static_cast<std::size_t>(v)] || p_hat[static_cast<std::size_t>(v)] == 0)
          continue;
        if (rng.below(static_cast<std::uint64_t>(g.pos_degree(v))) == 0)
          picked[static_cast<std::size_t>(v)] = 1;
      }
    for (int v = 0; v < n; ++v)
      if (picked[static_cast<std::size_t>(v)]) roots.push_back(v);
    // Mass-band diagnostic over the sampled roots.
    if (cd.total() > 0)
      for (int u : roots) {
        const Rat& mass = p.p[static_cast<std::size_t>(u)];
        if (16 * mass * cd.total() < gamma * cd.of(u) || mass * cd.total() > 16 * cd.of(u))
          ++out.roots_outside_band;
      }
  }

  std::vector<RootState> states(roots.size());
  std::vector<int> overlap(static_cast<std::size_t>(n), 0);
  std::priority_queue<PoolEntry, std::vector<PoolEntry>, PoolOrder> pool;

  const auto set_overlap = [&](const std::vector<int>& old_members,
                               const std::vector<int>& new_members) {
    for (int v : old_members) --overlap[static_cast<std::size_t>(v)];
    for (int v : new_members) {
      const int c = ++overlap[static_cast<std::size_t>(v)];
      out.max_overlap = std::max(out.max_overlap, c);
    }
  };

  // (Re)build one root's cluster from the current masses and queue it.
  const auto compute_cluster = [&](RootState& st, bool counts_as_refresh) {
    if (counts_as_refresh) {
      if (st.refreshes >= refresh_cap)
        throw std::logic_error("a root needed more refreshes than the configured bound");
      ++st.refreshes;
      out.max_refreshes = std::max(out.max_refreshes, st.refreshes);
    }
    std::vector<Rat> weight(static_cast<std::size_t>(n));
    for (int v = 0; v < n; ++v)
      weight[static_cast<std::size_t>(v)] = search_ratio * p_hat[static_cast<std::size_t>(v)] - cd.of(v);
    const RootContext ctx = make_root_context(inst, st.root, std::move(weight));
    const std::uint64_t stream = static_cast<std::uint64_t>(st.refreshes) *
                                     static_cast<std::uint64_t>(n) +
                                 static_cast<std::uint64_t>(st.root);
    const auto found = generate_cluster_by_sampling(g, ctx, cfg.cluster, derive_seed(seed, "family-root", stream));
    set_overlap(st.cluster, {});
    st.cluster.clear();
    st.dead = true;
    ++st.version;
    if (!found) return;
    const std::vector<int> kept = strip(*found);
    const Rat mass = mass_hat(kept);
    if (kept.empty() || mass == 0) return;
    st.cluster = kept;
    st.p_at_creation = mass;
    st.dead = false;
    set_overlap({}, st.cluster);
    pool.push({cover2(g, cd, kept) / (2 * mass), st.root, st.version});
  };

  std::vector<int> state_of(static_cast<std::size_t>(n), -1);
  for (std::size_t i = 0; i < roots.size(); ++i) {
    states[i].root = roots[i];
    state_of[static_cast<std::size_t>(roots[i])] = static_cast<int>(i);
    compute_cluster(states[i], false);
  }

  while (out.covered_mass < gamma) {
    if (pool.empty()) {
      out.exhausted = true;
      return out;
    }
    const PoolEntry entry = pool.top();
    pool.pop();
    RootState& st = states[static_cast<std::size_t>(state_of[static_cast<std::size_t>(entry.root)])];
    if (st.dead || entry.version != st.version) continue;

    const std::vector<int> stripped = strip(st.cluster);
    const Rat mass = mass_hat(stripped);
    if (stripped.empty() || mass == 0 || mass <= (Rat(1) - gamma) * st.p_at_creation) {
      compute_cluster(st, true);
      continue;
    }
    const Rat c2 = cover2(g, cd, stripped);
    if (c2 > 2 * mass * insert_bound) {
      // The same masses would reproduce the same cluster, so retrying cannot
      // improve this root.
      set_overlap(st.cluster, {});
      st.cluster.clear();
      st.dead = true;
      continue;
    }

    accept(stripped, c2);
    set_overlap(st.cluster, {});
    st.cluster.clear();
    st.dead = true;
    if (mode == FamilyMode::poly && out.covered_mass < gamma) {
      // Rebuild every live root whose cluster lost a vertex to the family.
      for (auto& other : states) {
        if (other.dead) continue;
        bool touched = false;
        for (int v : other.cluster)
          if (p_hat[static_cast<std::size_t>(v)] == 0) {
            touched = true;
            break;
          }
        if (touched) compute_cluster(other, true);
      }
    }
  }
  return out;
}

}  // namespace cc

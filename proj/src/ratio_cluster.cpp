#include "cc/ratio_cluster.hpp"

#include "cc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <stdexcept>

namespace cc {

void validate_params(const RatioClusterParams& params) {
  if (params.gamma <= 0) throw std::invalid_argument("gamma must be positive");
  if (params.eps <= 0 || params.eps >= 1) throw std::invalid_argument("eps must lie in (0, 1)");
  if (params.eta < 2) throw std::invalid_argument("eta must be at least 2");
  if (params.eta0 < 1) throw std::invalid_argument("eta0 must be positive");
  if (params.sample_size < params.eta0)
    throw std::invalid_argument("sample_size must be at least eta0");
  if (params.size_grid_ratio <= 1) throw std::invalid_argument("size_grid_ratio must exceed 1");
  if (params.repeat_multiplier < 1)
    throw std::invalid_argument("repeat_multiplier must be positive");
  if (params.exhaustive_limit < 0)
    throw std::invalid_argument("exhaustive_limit must be non-negative");
  if (params.sampling_budget < 1) throw std::invalid_argument("sampling_budget must be positive");
}

Rat RootContext::weight_of(const std::vector<int>& members) const {
  Rat sum = 0;
  for (int v : members) sum += weight[static_cast<std::size_t>(v)];
  return sum;
}

RootContext make_root_context(const PreclusteredInstance& inst, int root,
                              std::vector<Rat> weight) {
  if (root < 0 || root >= inst.n()) throw std::invalid_argument("root out of range");
  if (static_cast<int>(weight.size()) != inst.n())
    throw std::invalid_argument("weight vector must have one entry per vertex");
  RootContext ctx;
  ctx.root = root;
  ctx.group = inst.group_of(root);
  const std::vector<int> partners = candidate_set(inst, root);
  std::set_union(ctx.group.begin(), ctx.group.end(), partners.begin(), partners.end(),
                 std::back_inserter(ctx.candidates));
  std::set_difference(ctx.candidates.begin(), ctx.candidates.end(), ctx.group.begin(),
                      ctx.group.end(), std::back_inserter(ctx.outside));
  ctx.weight = std::move(weight);
  return ctx;
}

void validate_root_context(const RootContext& ctx, int n) {
  if (ctx.root < 0 || ctx.root >= n) throw std::invalid_argument("root out of range");
  if (static_cast<int>(ctx.weight.size()) != n)
    throw std::invalid_argument("weight vector must have one entry per vertex");
  if (ctx.group.empty() || !std::is_sorted(ctx.group.begin(), ctx.group.end()))
    throw std::invalid_argument("group must be nonempty and ascending");
  if (!std::binary_search(ctx.group.begin(), ctx.group.end(), ctx.root))
    throw std::invalid_argument("group must contain the root");
  if (!std::is_sorted(ctx.candidates.begin(), ctx.candidates.end()))
    throw std::invalid_argument("candidates must be ascending");
  if (!std::includes(ctx.candidates.begin(), ctx.candidates.end(), ctx.group.begin(),
                     ctx.group.end()))
    throw std::invalid_argument("candidates must contain the group");
  if (ctx.candidates.front() < 0 || ctx.candidates.back() >= n)
    throw std::invalid_argument("candidate out of range");
  std::vector<int> expect;
  std::set_difference(ctx.candidates.begin(), ctx.candidates.end(), ctx.group.begin(),
                      ctx.group.end(), std::back_inserter(expect));
  if (expect != ctx.outside)
    throw std::invalid_argument("outside must equal candidates minus group");
}

std::int64_t marginal2(const SignedGraph& g, const Bitset& members, int v) {
  if (!members.any()) throw std::invalid_argument("marginal of an empty set");
  const std::int64_t size = members.count();
  const std::int64_t inside = g.plus_count_in(v, members);
  const std::int64_t self = members.test(v) ? 1 : 0;
  return (g.pos_degree(v) - 1) + 2 * size - 4 * inside + 2 * self;
}

std::int64_t marginal2(const SignedGraph& g, const std::vector<int>& members, int v) {
  return marginal2(g, make_bitset(g.n(), members), v);
}

Rat est_marg(const SignedGraph& g, const std::vector<int>& sample, const Rat& t_guess, int v) {
  if (sample.empty()) throw std::invalid_argument("est_marg needs a nonempty sample");
  std::int64_t hits = 0;
  for (int u : sample)
    if (g.is_plus(u, v)) ++hits;  // the self-loop makes u == v count
  return Rat(g.pos_degree(v) - 1, 2) + t_guess -
         2 * t_guess * Rat(hits, static_cast<std::int64_t>(sample.size()));
}

std::vector<Rat> size_guess_grid(const SignedGraph& g, int root,
                                 const RatioClusterParams& params) {
  const Rat eps4 = params.eps * params.eps * params.eps * params.eps;
  const Rat lo = params.eps * g.pos_degree(root);
  const Rat hi = Rat(g.pos_degree(root)) / eps4;
  std::vector<Rat> grid;
  for (Rat value = 1; value <= hi; value *= params.size_grid_ratio)
    if (value >= lo) grid.push_back(value);
  return grid;
}

std::vector<int> generate_cluster(const SignedGraph& g, const RootContext& ctx,
                                  const std::vector<std::vector<int>>& samples,
                                  const std::vector<Rat>& guesses,
                                  const RatioClusterParams& params) {
  const std::size_t eta = static_cast<std::size_t>(params.eta);
  if (samples.size() != eta || guesses.size() != eta)
    throw std::invalid_argument("need exactly eta samples and guesses");
  for (const auto& sample : samples)
    if (sample.empty()) throw std::invalid_argument("empty sample set");

  std::vector<int> grown = ctx.group;
  const Rat slack = Rat(6 * static_cast<std::int64_t>(ctx.candidates.size()),
                        static_cast<std::int64_t>(eta));
  const std::size_t m = ctx.outside.size();
  const std::size_t base = m / eta;
  for (std::size_t i = 0; i < eta; ++i) {
    const std::size_t begin = i * base;
    const std::size_t end = (i + 1 == eta) ? m : (i + 1) * base;
    for (std::size_t j = begin; j < end; ++j) {
      const int v = ctx.outside[j];
      if (est_marg(g, samples[i], guesses[i], v) + slack <= ctx.weight[v])
        grown.push_back(v);
    }
  }
  std::sort(grown.begin(), grown.end());
  return grown;
}

namespace {

// (value, multiplicity) pairs of a multiset, values ascending.
std::vector<std::pair<int, int>> tally(std::vector<int> pool) {
  std::sort(pool.begin(), pool.end());
  std::vector<std::pair<int, int>> out;
  for (int v : pool) {
    if (!out.empty() && out.back().first == v)
      ++out.back().second;
    else
      out.emplace_back(v, 1);
  }
  return out;
}

// Emits sub-multisets of exactly `need` more elements drawn from counts[j..],
// nondecreasing, taking more copies of the smaller value first so that equal
// sizes come out in lexicographic order of the sorted element list.
void emit_submultisets(const std::vector<std::pair<int, int>>& counts, std::size_t j, int need,
                       std::vector<int>& current, std::size_t cap,
                       std::vector<std::vector<int>>& out) {
  if (need == 0) {
    out.push_back(current);
    return;
  }
  if (j == counts.size() || out.size() >= cap) return;
  const int most = std::min(counts[j].second, need);
  for (int copies = most; copies >= 0 && out.size() < cap; --copies) {
    current.insert(current.end(), static_cast<std::size_t>(copies), counts[j].first);
    emit_submultisets(counts, j + 1, need - copies, current, cap, out);
    current.resize(current.size() - static_cast<std::size_t>(copies));
  }
}

// All sub-multisets of the pool with 1 ≤ size ≤ max_size, ordered by
// increasing size then lexicographically; at most `cap` results.
std::vector<std::vector<int>> sub_multisets(const std::vector<int>& pool, int max_size,
                                            std::size_t cap) {
  const auto counts = tally(pool);
  std::vector<std::vector<int>> out;
  std::vector<int> current;
  for (int size = 1; size <= max_size && out.size() < cap; ++size)
    emit_submultisets(counts, 0, size, current, cap, out);
  return out;
}

// True when T (ascending) satisfies the exact doubled test 2·cost(T) ≤ 2·w(T).
bool fits_weight(const SignedGraph& g, const RootContext& ctx, const std::vector<int>& t) {
  return Rat(cluster_cost2(g, t)) <= 2 * ctx.weight_of(t);
}

// Subset enumeration over the fringe, increasing size then lexicographic;
// returns the first K(r) ∪ subset whose cost fits its weight.
std::optional<std::vector<int>> exhaustive_search(const SignedGraph& g, const RootContext& ctx) {
  const int m = static_cast<int>(ctx.outside.size());
  for (int size = 0; size <= m; ++size) {
    std::vector<int> pick(static_cast<std::size_t>(size));
    std::iota(pick.begin(), pick.end(), 0);
    for (;;) {
      std::vector<int> chosen;
      chosen.reserve(pick.size());
      for (int idx : pick) chosen.push_back(ctx.outside[static_cast<std::size_t>(idx)]);
      std::vector<int> t;
      std::merge(ctx.group.begin(), ctx.group.end(), chosen.begin(), chosen.end(),
                 std::back_inserter(t));
      if (fits_weight(g, ctx, t)) return t;
      // Advance to the next size-`size` index combination.
      int pos = size - 1;
      while (pos >= 0 && pick[static_cast<std::size_t>(pos)] == m - size + pos) --pos;
      if (pos < 0) break;
      ++pick[static_cast<std::size_t>(pos)];
      for (int q = pos + 1; q < size; ++q)
        pick[static_cast<std::size_t>(q)] = pick[static_cast<std::size_t>(q - 1)] + 1;
    }
  }
  return std::nullopt;
}

}  // namespace

std::optional<std::vector<int>> generate_cluster_by_sampling(const SignedGraph& g,
                                                             const RootContext& ctx,
                                                             const RatioClusterParams& params,
                                                             std::uint64_t seed) {
  validate_params(params);
  validate_root_context(ctx, g.n());

  if (static_cast<int>(ctx.candidates.size()) <= params.exhaustive_limit)
    return exhaustive_search(g, ctx);
  if (ctx.outside.empty()) {
    // Only K(r) itself is reachable; no sampling needed.
    if (fits_weight(g, ctx, ctx.group)) return ctx.group;
    return std::nullopt;
  }

  std::vector<Rat> grid = size_guess_grid(g, ctx.root, params);
  if (grid.empty()) grid.push_back(1);  // degenerate window; still try size 1
  const std::size_t eta = static_cast<std::size_t>(params.eta);
  const std::size_t n_guesses = grid.size();
  // Enough sub-multisets per chunk to fill the evaluation budget even if the
  // odometer below only ever advances one chunk.
  const std::size_t subs_cap =
      static_cast<std::size_t>(params.sampling_budget) / std::max<std::size_t>(1, n_guesses) + 2;
  const int reps = params.repeat_multiplier *
                   static_cast<int>(std::ceil(std::log(static_cast<double>(std::max(2, g.n())))));

  for (int rep = 0; rep < reps; ++rep) {
    Rng rng(derive_seed(seed, "cluster-sample", static_cast<std::uint64_t>(rep)));
    std::vector<std::vector<std::vector<int>>> subs(eta);
    for (std::size_t i = 0; i < eta; ++i) {
      std::vector<int> pool(static_cast<std::size_t>(params.sample_size));
      for (int& v : pool) v = ctx.candidates[rng.below(ctx.candidates.size())];
      subs[i] = sub_multisets(pool, params.eta, subs_cap);
    }
    // Pair index = sub-multiset index · |grid| + guess index; the odometer
    // walks the product space with the last chunk varying fastest.
    std::vector<std::size_t> pair_count(eta);
    for (std::size_t i = 0; i < eta; ++i) pair_count[i] = subs[i].size() * n_guesses;
    std::vector<std::size_t> at(eta, 0);
    std::vector<std::vector<int>> samples(eta);
    std::vector<Rat> guesses(eta);
    for (std::int64_t spent = 0; spent < params.sampling_budget; ++spent) {
      for (std::size_t i = 0; i < eta; ++i) {
        samples[i] = subs[i][at[i] / n_guesses];
        guesses[i] = grid[at[i] % n_guesses];
      }
      const std::vector<int> grown = generate_cluster(g, ctx, samples, guesses, params);
      if (fits_weight(g, ctx, grown)) return grown;
      // Advance the odometer; stop this repetition when the space is spent.
      std::size_t pos = eta;
      while (pos > 0) {
        --pos;
        if (++at[pos] < pair_count[pos]) break;
        at[pos] = 0;
        if (pos == 0) spent = params.sampling_budget;
      }
    }
  }
  return std::nullopt;
}

}  // namespace cc

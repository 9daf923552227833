#include "cc/mwu.hpp"

#include "cc/rng.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <map>
#include <stdexcept>
#include <string>
#include <thread>
#include <utility>

namespace cc {

void validate_mwu_params(const MwuParams& params) {
  validate_params(params.family.cluster);
  if (params.family.refresh_constant < 1)
    throw std::invalid_argument("refresh_constant must be positive");
  if (params.t_mw < 1) throw std::invalid_argument("round count must be positive");
  if (2 * params.gamma() >= 1)
    throw std::invalid_argument("gamma must be below 1/2 so the completion scale stays positive");
}

MwuParams desk_params() { return MwuParams{}; }

MwuParams paper_params() {
  MwuParams p;
  const double gamma = to_double(p.gamma());
  const double eps = to_double(p.eps());
  p.t_mw = static_cast<int>(std::ceil(std::log(1.0 / gamma) / std::pow(gamma, 4)));
  p.assert_uncovered_bound = true;
  auto& c = p.family.cluster;
  c.eta0 = c.eta * c.eta * c.eta;
  c.sample_size = static_cast<int>(
      std::ceil(static_cast<double>(c.eta) * c.eta0 / (gamma * gamma * std::pow(eps, 8))));
  c.sampling_budget = std::int64_t{1} << 40;
  return p;
}

VertexDistribution snapshot_distribution(const std::vector<long double>& weights) {
  if (weights.empty()) throw std::invalid_argument("no weights to snapshot");
  long double sum = 0;
  for (const long double w : weights) {
    if (!std::isfinite(static_cast<double>(w)) || w <= 0)
      throw std::invalid_argument("weights must stay positive and finite");
    sum += w;
  }
  const long double scale = 18446744073709551616.0L;  // 2^64
  std::vector<BigInt> cells(weights.size());
  BigInt total = 0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    const long double scaled = weights[i] / sum * scale;
    if (scaled < 1)
      cells[i] = 1;
    else if (scaled >= scale)
      cells[i] = BigInt(1) << 64;
    else
      cells[i] = BigInt(static_cast<std::uint64_t>(scaled));
    total += cells[i];
  }
  VertexDistribution p;
  p.p.reserve(weights.size());
  for (const BigInt& q : cells) p.p.push_back(Rat(q, total));
  return p;
}

std::optional<CoverSolution> solve_cover_lp(const SignedGraph& g, const PreclusteredInstance& inst,
                                            const CrossDegrees& cd, const MwuParams& params,
                                            const Rat& r_guess, std::uint64_t seed,
                                            CoverLpDiagnostics* diag) {
  validate_mwu_params(params);
  const int n = g.n();
  for (int v = 0; v < n; ++v)
    if (cd.of(v) <= 0)
      throw std::invalid_argument("vertex " + std::to_string(v) +
                                  " has no crossing degree; split such vertices off first");

  CoverLpDiagnostics local;
  CoverLpDiagnostics& out = diag ? *diag : local;
  out = CoverLpDiagnostics{};

  const Rat gamma = params.gamma();
  std::vector<long double> w(static_cast<std::size_t>(n));
  for (int v = 0; v < n; ++v) w[static_cast<std::size_t>(v)] = cd.of(v).convert_to<long double>();

  std::map<std::vector<int>, Rat> averaged;
  Rat min_dot = 0;
  const long double rate = static_cast<long double>(to_double(gamma * gamma * gamma));
  const long double lift = std::exp(rate);  // uncovered vertices have margin −1

  for (int t = 0; t < params.t_mw; ++t) {
    const VertexDistribution p = snapshot_distribution(w);
    const PartialFamily fam = find_family(g, inst, cd, p, r_guess, params.mode, params.family,
                                          derive_seed(seed, "mwu-round", static_cast<std::uint64_t>(t)));
    if (fam.exhausted) {
      out.exhausted_round = t;
      return std::nullopt;
    }
    const CoverSolution point = family_to_point(fam, n, gamma);
    const Rat& value = point.entries().front().value;  // identical on every set

    // ⟨p, m⟩ = value·p(𝓕) − 1, exactly; non-negative because the family
    // reached mass gamma and the value is min(1/p(𝓕), 1/gamma).
    const Rat dot = value * fam.covered_mass - 1;
    if (t == 0 || dot < min_dot) min_dot = dot;

    std::vector<char> covered(static_cast<std::size_t>(n), 0);
    for (const auto& e : point.entries()) {
      averaged[e.members] += value;
      for (int v : e.members) covered[static_cast<std::size_t>(v)] = 1;
    }

    const long double drop = std::exp(-rate * static_cast<long double>(to_double(value) - 1.0));
    long double total = 0;
    for (int v = 0; v < n; ++v) {
      w[static_cast<std::size_t>(v)] *= covered[static_cast<std::size_t>(v)] ? drop : lift;
      total += w[static_cast<std::size_t>(v)];
    }
    for (long double& weight : w) weight /= total;
    ++out.rounds_run;
  }
  out.min_margin_dot = min_dot;

  for (auto& [members, value] : averaged) value /= params.t_mw;

  std::vector<Rat> coverage(static_cast<std::size_t>(n), Rat(0));
  for (const auto& [members, value] : averaged)
    for (int v : members) coverage[static_cast<std::size_t>(v)] += value;

  // Whole groups whose coverage fell short get their own entry set to 1.
  const Rat low = 1 - 2 * gamma;
  for (int v = 0; v < n; ++v)
    if (coverage[static_cast<std::size_t>(v)] <= low) out.uncovered_mass += cd.of(v);
  for (int v = 0; v < n; ++v) {
    if (coverage[static_cast<std::size_t>(v)] > low) continue;
    const std::vector<int> group = inst.group_of(v);
    if (group.front() != v) continue;  // handle each group once
    averaged[group] = 1;
    ++out.completed_groups;
  }
  if (params.assert_uncovered_bound && out.uncovered_mass > 2 * gamma * cd.total())
    throw std::logic_error("uncovered crossing degree exceeded the 2·gamma·d_cross(V) bound");

  std::vector<CoverEntry> entries;
  entries.reserve(averaged.size());
  for (auto& [members, value] : averaged) {
    Rat scaled = value / low;
    if (scaled > 1) scaled = 1;
    entries.push_back({std::move(scaled), members});
  }
  CoverSolution solution(n, std::move(entries));
  for (int v = 0; v < n; ++v)
    if (solution.coverage(v) < 1)
      throw std::logic_error("coverage below 1 after completion at vertex " + std::to_string(v));
  return solution;
}

namespace {

int thread_request() {
  const char* env = std::getenv("CC_THREADS");
  if (!env) return 1;
  const int parsed = std::atoi(env);
  return std::clamp(parsed, 1, 64);
}

}  // namespace

ClusterLpResult solve_cluster_lp(const SignedGraph& g, const MwuParams& params, std::uint64_t seed) {
  validate_mwu_params(params);
  const int n = g.n();

  PreclusterConfig pcfg;
  pcfg.eps = params.eps();
  const PreclusteredInstance inst = build_preclustering(g, pcfg);
  const CrossDegrees cd = compute_d_cross(g, inst);

  PipelineDiagnostics diag;
  std::vector<std::vector<int>> fixed;
  std::vector<char> active(static_cast<std::size_t>(n), 1);
  for (int a = 0; a < inst.atom_count(); ++a) {
    if (cd.atom_value(a) != 0) continue;
    fixed.push_back(inst.atom_members(a));
    for (int v : fixed.back()) active[static_cast<std::size_t>(v)] = 0;
    ++diag.fixed_atoms;
  }
  for (int v = 0; v < n; ++v) {
    if (inst.in_atom(v) || cd.of(v) != 0) continue;
    fixed.push_back({v});
    active[static_cast<std::size_t>(v)] = 0;
    ++diag.fixed_singletons;
  }

  std::vector<int> to_old;
  std::vector<int> to_new(static_cast<std::size_t>(n), -1);
  for (int v = 0; v < n; ++v)
    if (active[static_cast<std::size_t>(v)]) {
      to_new[static_cast<std::size_t>(v)] = static_cast<int>(to_old.size());
      to_old.push_back(v);
    }
  const int na = static_cast<int>(to_old.size());
  diag.active_vertices = na;
  const std::int64_t d_out = conversion_denominator(params.t_mw, params.gamma());

  const auto finish = [&](std::vector<SolutionEntry> entries) {
    for (const auto& cluster : fixed) entries.push_back({d_out, cluster});
    FractionalClusterSolution solution(n, d_out, std::move(entries));
    diag.cost = solution_cost(g, solution);
    return ClusterLpResult{std::move(solution), std::move(diag)};
  };

  if (na == 0) return finish({});

  // Induced subproblem on the active vertices.  Fixed clusters have no
  // positive edges to the rest, so degrees and crossing degrees carry over.
  std::vector<std::pair<int, int>> edges;
  for (int v : to_old)
    for (int u : g.pos_adj(v))
      if (u > v && active[static_cast<std::size_t>(u)])
        edges.push_back({to_new[static_cast<std::size_t>(v)], to_new[static_cast<std::size_t>(u)]});
  const SignedGraph sub_g(na, edges);

  std::vector<std::vector<int>> sub_atoms;
  for (int a = 0; a < inst.atom_count(); ++a) {
    if (cd.atom_value(a) == 0) continue;
    std::vector<int> members;
    for (int v : inst.atom_members(a)) members.push_back(to_new[static_cast<std::size_t>(v)]);
    sub_atoms.push_back(std::move(members));
  }
  std::vector<std::pair<int, int>> sub_adm;
  for (int v : to_old)
    for (int u : inst.adm_neighbors(v))
      if (u > v && active[static_cast<std::size_t>(u)])
        sub_adm.push_back({to_new[static_cast<std::size_t>(v)], to_new[static_cast<std::size_t>(u)]});
  const PreclusteredInstance sub_inst(na, std::move(sub_atoms), sub_adm);
  const CrossDegrees sub_cd = compute_d_cross(sub_g, sub_inst);

  const std::vector<Rat> grid = r_grid(sub_g, sub_cd, params.gamma());
  struct Candidate {
    bool solved = false;
    Rat cost;
    std::vector<SolutionEntry> entries;
    int exhausted_round = -1;
  };
  std::vector<Candidate> candidates(grid.size());
  const auto run_guess = [&](std::size_t i) {
    CoverLpDiagnostics guess_diag;
    const auto cover = solve_cover_lp(sub_g, sub_inst, sub_cd, params, grid[i],
                                      derive_seed(seed, "pipeline-guess", i), &guess_diag);
    Candidate c;
    c.exhausted_round = guess_diag.exhausted_round;
    if (cover) {
      const FractionalClusterSolution converted =
          convert_cover_to_cluster(*cover, sub_inst, sub_g, sub_cd, params.t_mw, params.gamma());
      c.solved = true;
      c.cost = solution_cost(sub_g, converted);
      c.entries = converted.entries();
    }
    candidates[i] = std::move(c);
  };

  const int threads = thread_request();
  if (threads <= 1 || grid.size() <= 1) {
    for (std::size_t i = 0; i < grid.size(); ++i) run_guess(i);
  } else {
    std::vector<std::thread> pool;
    for (int k = 0; k < threads; ++k)
      pool.emplace_back([&, k] {
        for (std::size_t i = static_cast<std::size_t>(k); i < grid.size();
             i += static_cast<std::size_t>(threads))
          run_guess(i);
      });
    for (std::thread& worker : pool) worker.join();
  }

  int best = -1;
  for (std::size_t i = 0; i < grid.size(); ++i) {
    diag.guesses.push_back(
        {grid[i], candidates[i].solved, candidates[i].cost, candidates[i].exhausted_round});
    if (candidates[i].solved &&
        (best < 0 || candidates[i].cost < candidates[static_cast<std::size_t>(best)].cost))
      best = static_cast<int>(i);
  }

  std::vector<SolutionEntry> entries;
  if (best < 0) {
    diag.fallback = true;
    for (int v : to_old) entries.push_back({d_out, {v}});
  } else {
    diag.chosen_r = grid[static_cast<std::size_t>(best)];
    for (const auto& e : candidates[static_cast<std::size_t>(best)].entries) {
      std::vector<int> members;
      members.reserve(e.members.size());
      for (int v : e.members) members.push_back(to_old[static_cast<std::size_t>(v)]);
      entries.push_back({e.k, std::move(members)});
    }
  }
  return finish(std::move(entries));
}

}  // namespace cc

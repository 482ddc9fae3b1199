#include "districting/arr.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>
#include <string>

#include "districting/rng.hpp"

namespace districting {

void perturb_into(const FractionalSeed& seed, std::mt19937_64& rng, PerturbMode mode,
                  FractionalSeed& out) {
  if (out.node_count() != seed.node_count() || out.district_count() != seed.district_count()) {
    out = FractionalSeed(seed.node_count(), seed.district_count());
  }
  const auto src = seed.values();
  const auto dst = out.values();
  if (mode == PerturbMode::kDown) {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] * u01(rng);
  } else {
    for (std::size_t i = 0; i < src.size(); ++i) dst[i] = src[i] + (1.0 - src[i]) * u01(rng);
  }
}

FractionalSeed perturb(const FractionalSeed& seed, std::mt19937_64& rng, PerturbMode mode) {
  FractionalSeed out(seed.node_count(), seed.district_count());
  perturb_into(seed, rng, mode, out);
  return out;
}

double rmsd(const FractionalSeed& seed) {
  const auto values = seed.values();
  if (values.empty()) throw std::invalid_argument("rmsd: empty seed");
  double sum = 0.0;
  for (double v : values) {
    const double dev = v - 0.5;
    sum += dev * dev;
  }
  return std::sqrt(sum / static_cast<double>(values.size()));
}

double decelerator(double r) {
  if (!(r >= 0.0 && r <= 0.5)) {
    throw std::invalid_argument("decelerator: rmsd " + std::to_string(r) + " outside [0, 0.5]");
  }
  return 1.0 / (1.0 + std::exp(4.0 * r));
}

void smooth_seed_in_place(FractionalSeed& seed, const Plan& best, double alpha) {
  if (!(alpha > 0.0 && alpha < 1.0)) {
    throw std::invalid_argument("smooth_seed: alpha " + std::to_string(alpha) +
                                " outside (0, 1)");
  }
  const NodeId n = seed.node_count();
  const std::int32_t k = seed.district_count();
  if (static_cast<NodeId>(best.assignment.size()) != n) {
    throw std::invalid_argument("smooth_seed: plan does not match seed dimensions");
  }
  const double keep = 1.0 - alpha;
  for (NodeId u = 0; u < n; ++u) {
    const std::int32_t target = best.assignment[u];
    if (target < 0 || target >= k) {
      throw std::invalid_argument("smooth_seed: plan label out of range");
    }
    for (std::int32_t d = 0; d < k; ++d) {
      seed(u, d) = keep * seed(u, d) + (d == target ? alpha : 0.0);
    }
  }
}

FractionalSeed smooth_seed(const FractionalSeed& prev, const Plan& best, double alpha) {
  FractionalSeed out = prev;
  smooth_seed_in_place(out, best, alpha);
  return out;
}

double reset_probability(std::int64_t n_local, const FractionalSeed& seed, std::int64_t divisor) {
  if (n_local < 0) throw std::invalid_argument("reset_probability: negative n_local");
  if (divisor < 1) throw std::invalid_argument("reset_probability: divisor must be >= 1");
  const double run = std::min(static_cast<double>(n_local) / static_cast<double>(divisor), 1.0);
  return run * rmsd(seed);
}

namespace {

// Relabels districts by order of first appearance so plans that differ
// only by label permutation compare equal.
Plan canonical_labels(const Plan& plan, std::int32_t k) {
  Plan out;
  out.assignment.resize(plan.assignment.size());
  std::vector<std::int32_t> relabel(k, -1);
  std::int32_t next = 0;
  for (std::size_t i = 0; i < plan.assignment.size(); ++i) {
    std::int32_t& r = relabel[plan.assignment[i]];
    if (r < 0) r = next++;
    out.assignment[i] = r;
  }
  return out;
}

struct SingleRunResult {
  Plan best_plan;
  Rational best_score;
  bool feasible = false;
  TrialTrace trace;
};

SingleRunResult run_single(const ProblemInstance& inst, const ArrConfig& cfg,
                           std::uint64_t stream_seed) {
  const AdjacencyGraph& g = inst.graph();
  const NodeId n = g.node_count();
  const std::int32_t k = inst.districts();
  const Rational big_m(inst.big_m());

  std::mt19937_64 rng(stream_seed);
  FractionalSeed seed = FractionalSeed::centroid(n, k);
  FractionalSeed perturbed(n, k);

  SingleRunResult result;
  result.trace.records.reserve(static_cast<std::size_t>(cfg.max_trials));
  std::int64_t n_local = 0;

  for (std::int64_t t = 0; t < cfg.max_trials; ++t) {
    if (t > 0) {
      const double alpha = decelerator(rmsd(seed));
      smooth_seed_in_place(seed, result.best_plan, alpha);
    }
    perturb_into(seed, rng, cfg.perturbation_mode, perturbed);
    Plan plan = round_to_plan(perturbed, g, k);
    const PlanEvaluation eval = evaluate_plan(inst, plan);

    if (t == 0 || eval.score < result.best_score) {
      result.best_plan = std::move(plan);
      result.best_score = eval.score;
      result.feasible = eval.feasible;
      n_local = 0;
    } else if (cfg.relabel_invariant_nlocal
                   ? canonical_labels(plan, k) == canonical_labels(result.best_plan, k)
                   : plan == result.best_plan) {
      ++n_local;
    }

    const double seed_rmsd = rmsd(seed);
    const double p_reset =
        std::min(static_cast<double>(n_local) / static_cast<double>(cfg.reset_run_divisor), 1.0) *
        seed_rmsd;
    const bool did_reset = u01(rng) < p_reset;
    if (did_reset) {
      seed.fill(0.5);
      n_local = 0;
    }

    if (eval.feasible && !result.trace.first_feasible_trial) {
      result.trace.first_feasible_trial = t;
    }
    result.trace.records.push_back({t, eval.score, result.best_score, seed_rmsd, did_reset});
  }
  return result;
}

}  // namespace

ArrResult run_arr(const ProblemInstance& inst, const ArrConfig& cfg) {
  if (cfg.max_trials < 1) throw std::invalid_argument("run_arr: max_trials must be >= 1");
  if (cfg.restarts < 1) throw std::invalid_argument("run_arr: restarts must be >= 1");
  if (cfg.reset_run_divisor < 1) {
    throw std::invalid_argument("run_arr: reset_run_divisor must be >= 1");
  }
  if (inst.graph().node_count() < inst.districts()) {
    throw std::invalid_argument("run_arr: fewer nodes than districts");
  }

  std::vector<SingleRunResult> runs(cfg.restarts);
  std::exception_ptr failure = nullptr;
#pragma omp parallel for schedule(dynamic) if (cfg.restarts > 1)
  for (std::int32_t r = 0; r < cfg.restarts; ++r) {
    try {
      runs[r] = run_single(inst, cfg, derive_stream_seed(cfg.rng_seed, r));
    } catch (...) {
#pragma omp critical
      if (!failure) failure = std::current_exception();
    }
  }
  if (failure) std::rethrow_exception(failure);

  std::int32_t winner = 0;
  for (std::int32_t r = 1; r < cfg.restarts; ++r) {
    if (runs[r].best_score < runs[winner].best_score) winner = r;
  }

  ArrResult result;
  result.best_plan = std::move(runs[winner].best_plan);
  result.best_score = runs[winner].best_score;
  result.feasible = runs[winner].feasible;
  result.trace = std::move(runs[winner].trace);
  result.total_trials = cfg.max_trials * cfg.restarts;
  result.winning_restart = winner;
  return result;
}

}  // namespace districting

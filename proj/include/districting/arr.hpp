#pragma once

#include <cstdint>
#include <optional>
#include <random>
#include <vector>

#include "districting/model.hpp"
#include "districting/rounding.hpp"

namespace districting {

// Down-mode draws each perturbed entry from U[0, y]; up-mode from
// U[y, 1]. Down is the default.
enum class PerturbMode { kDown, kUp };

struct ArrConfig {
  std::int64_t max_trials = 1;
  PerturbMode perturbation_mode = PerturbMode::kDown;
  std::int64_t reset_run_divisor = 20;
  std::uint64_t rng_seed = 0;
  std::int32_t restarts = 1;
  // Count a trial toward n_local when its plan equals the incumbent up
  // to district relabeling, not only on exact assignment equality.
  bool relabel_invariant_nlocal = false;
};

struct TrialRecord {
  std::int64_t trial = 0;
  Rational score;       // conditional objective of this trial's rounded plan
  Rational best_score;  // incumbent score after this trial
  double rmsd = 0.0;    // of the seed this trial rounded from
  bool reset = false;   // seed was reset to the centroid after this trial
};

struct TrialTrace {
  std::vector<TrialRecord> records;
  std::optional<std::int64_t> first_feasible_trial;
};

struct ArrResult {
  Plan best_plan;
  Rational best_score;
  bool feasible = false;
  TrialTrace trace;  // of the winning restart
  std::int64_t total_trials = 0;
  std::int32_t winning_restart = 0;
};

// Componentwise random perturbation; entries stay in [0,1].
FractionalSeed perturb(const FractionalSeed& seed, std::mt19937_64& rng, PerturbMode mode);
void perturb_into(const FractionalSeed& seed, std::mt19937_64& rng, PerturbMode mode,
                  FractionalSeed& out);

// Root-mean-square deviation from the all-0.5 centroid: 0 at the
// centroid, 0.5 at any 0/1 indicator.
double rmsd(const FractionalSeed& seed);

// Smoothing rate 1/(1 + e^(4r)) for r in [0, 0.5]: 0.5 at the centroid
// down to 1/(1+e^2) at an integer solution. Throws outside the domain.
double decelerator(double r);

// Convex combination (1-alpha)*prev + alpha*indicator(best). Requires
// 0 < alpha < 1 and matching dimensions.
FractionalSeed smooth_seed(const FractionalSeed& prev, const Plan& best, double alpha);
void smooth_seed_in_place(FractionalSeed& seed, const Plan& best, double alpha);

// min(n_local/divisor, 1) * rmsd(seed).
double reset_probability(std::int64_t n_local, const FractionalSeed& seed, std::int64_t divisor);

// Adaptive randomized rounding. Starting from the centroid seed, each
// trial perturbs the seed, rounds it to a connected partition and
// scores it with the two-phase conditional objective; the seed then
// drifts toward the incumbent best plan at the decelerator rate, and a
// run of trials that keep re-finding the incumbent arms a randomized
// reset back to the centroid. Restarts are independent ARR runs on
// derived rng streams; the best plan across restarts wins, with score
// ties going to the lower restart index. Deterministic given
// cfg.rng_seed, independent of thread count.
ArrResult run_arr(const ProblemInstance& inst, const ArrConfig& cfg);

}  // namespace districting

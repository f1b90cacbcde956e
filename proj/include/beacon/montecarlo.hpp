#pragma once

#include <vector>

#include "beacon/attack_reorg.hpp"
#include "beacon/config.hpp"
#include "beacon/rewards.hpp"

namespace beacon {

struct Estimate {
    double point = 0.0;
    double std_error = 0.0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
};

// Mean attack cost over the trials where a feasible window existed.  When no
// trial succeeds there is no number to report; callers must check.
struct ReorgCostEstimate {
    std::int64_t successes = 0;
    std::int64_t trials = 0;
    std::uint64_t seed = 0;
    Gwei mean_cost;
    double std_error_gwei = 0.0;

    bool has_value() const { return successes > 0; }
};

struct ReorgCurveRow {
    std::int64_t n = 0;
    Estimate probability;
    ReorgCostEstimate cost;
};

// One pass over `trials` independently drawn epoch schedules, evaluating
// every requested reorg length against each schedule.  Trial i draws from
// sub_seed(seed, i), so results are independent of both evaluation batching
// and the number of worker threads.
std::vector<ReorgCurveRow> reorg_curve(const SimConfig& config, const RewardParams& params,
                                       const std::vector<std::int64_t>& lengths,
                                       std::int64_t trials, std::uint64_t seed, int jobs = 1);

Estimate estimate_reorg_probability(const SimConfig& config, std::int64_t n, std::int64_t trials,
                                    std::uint64_t seed, int jobs = 1);

ReorgCostEstimate estimate_reorg_cost(const SimConfig& config, const RewardParams& params,
                                      std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                      int jobs = 1);

struct DelayVerification {
    Estimate estimate;
    double exact = 0.0;
    double z_score = 0.0;
};

// Coin-flip Monte Carlo check of the exact no-two-consecutive-justifications
// recurrence.
DelayVerification verify_delay_probability(std::int64_t n, double p_justify, std::int64_t trials,
                                           std::uint64_t seed, int jobs = 1);

}  // namespace beacon

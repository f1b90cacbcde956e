#include "beacon/montecarlo.hpp"

#include <algorithm>
#include <cmath>
#include <thread>

#include "beacon/attack_finality.hpp"
#include "beacon/rng.hpp"
#include "beacon/schedule.hpp"

namespace beacon {

namespace {

int clamp_jobs(int jobs, std::int64_t trials) {
    if (jobs < 1) throw ConfigError("jobs must be >= 1");
    return int(std::min<std::int64_t>(jobs, std::max<std::int64_t>(trials, 1)));
}

// Runs fn(trial_index) over [0, trials) on `jobs` threads in contiguous
// chunks. fn must only touch per-thread state; the caller merges afterwards.
template <typename Fn>
void for_each_trial(std::int64_t trials, int jobs, Fn&& make_worker) {
    if (jobs == 1) {
        auto worker = make_worker(0);
        for (std::int64_t t = 0; t < trials; ++t) worker(t);
        return;
    }
    std::vector<std::thread> threads;
    threads.reserve(std::size_t(jobs));
    for (int j = 0; j < jobs; ++j) {
        const std::int64_t lo = trials * j / jobs;
        const std::int64_t hi = trials * (j + 1) / jobs;
        threads.emplace_back([lo, hi, worker = make_worker(j)]() mutable {
            for (std::int64_t t = lo; t < hi; ++t) worker(t);
        });
    }
    for (auto& th : threads) th.join();
}

struct LengthAccumulator {
    std::int64_t successes = 0;
    std::int64_t sum_k = 0;
    std::int64_t sum_k2 = 0;

    void merge(const LengthAccumulator& o) {
        successes += o.successes;
        sum_k += o.sum_k;
        sum_k2 += o.sum_k2;
    }
};

Estimate make_estimate(std::int64_t successes, std::int64_t trials, std::uint64_t seed) {
    const double p = double(successes) / double(trials);
    return Estimate{p, std::sqrt(p * (1.0 - p) / double(trials)), trials, seed};
}

}  // namespace

std::vector<ReorgCurveRow> reorg_curve(const SimConfig& config, const RewardParams& params,
                                       const std::vector<std::int64_t>& lengths,
                                       std::int64_t trials, std::uint64_t seed, int jobs) {
    config.validate();
    if (trials < 1) throw ConfigError("trials must be >= 1");
    for (const auto n : lengths)
        if (n < 1) throw ConfigError("reorg length must be >= 1");
    jobs = clamp_jobs(jobs, trials);

    std::vector<std::vector<LengthAccumulator>> partial(
        std::size_t(jobs), std::vector<LengthAccumulator>(lengths.size()));

    for_each_trial(trials, jobs, [&](int job) {
        auto* acc = &partial[std::size_t(job)];
        return [&, acc](std::int64_t trial) {
            const auto schedule =
                build_schedule(config.total_validators(), config.slots_per_epoch,
                               config.committee_size, config.stake_fraction,
                               sub_seed(seed, std::uint64_t(trial)));
            for (std::size_t i = 0; i < lengths.size(); ++i) {
                const auto window = epoch_reorg_feasible(schedule, lengths[i]);
                if (!window) continue;
                auto& a = (*acc)[i];
                ++a.successes;
                std::int64_t k = 0;
                for (Slot s = window->start_slot + window->m;
                     s < window->start_slot + window->m + window->n; ++s)
                    k += schedule.attacker_seats(s);
                a.sum_k += k;
                a.sum_k2 += k * k;
            }
        };
    });

    const Gwei unit = inclusion_reward(params, 1);
    std::vector<ReorgCurveRow> rows;
    rows.reserve(lengths.size());
    for (std::size_t i = 0; i < lengths.size(); ++i) {
        LengthAccumulator total;
        for (const auto& p : partial) total.merge(p[i]);

        ReorgCostEstimate cost;
        cost.successes = total.successes;
        cost.trials = trials;
        cost.seed = seed;
        if (total.successes > 0) {
            cost.mean_cost = Gwei(unit.exact() * total.sum_k / total.successes);
            if (total.successes > 1) {
                const double s = double(total.successes);
                const double mean_k = double(total.sum_k) / s;
                const double var_k =
                    (double(total.sum_k2) - s * mean_k * mean_k) / (s - 1.0);
                cost.std_error_gwei = unit.to_double() * std::sqrt(std::max(var_k, 0.0) / s);
            }
        }
        rows.push_back(ReorgCurveRow{lengths[i], make_estimate(total.successes, trials, seed),
                                     cost});
    }
    return rows;
}

Estimate estimate_reorg_probability(const SimConfig& config, std::int64_t n, std::int64_t trials,
                                    std::uint64_t seed, int jobs) {
    return reorg_curve(config, RewardParams{}, {n}, trials, seed, jobs).front().probability;
}

ReorgCostEstimate estimate_reorg_cost(const SimConfig& config, const RewardParams& params,
                                      std::int64_t n, std::int64_t trials, std::uint64_t seed,
                                      int jobs) {
    return reorg_curve(config, params, {n}, trials, seed, jobs).front().cost;
}

DelayVerification verify_delay_probability(std::int64_t n, double p_justify, std::int64_t trials,
                                           std::uint64_t seed, int jobs) {
    if (n < 1) throw ConfigError("delay length must be >= 1");
    if (trials < 1) throw ConfigError("trials must be >= 1");
    if (p_justify < 0.0 || p_justify > 1.0) throw ConfigError("p_justify must lie in [0, 1]");
    jobs = clamp_jobs(jobs, trials);

    std::vector<std::int64_t> partial(std::size_t(jobs), 0);
    for_each_trial(trials, jobs, [&](int job) {
        auto* count = &partial[std::size_t(job)];
        return [&, count](std::int64_t trial) {
            std::mt19937_64 gen(sub_seed(seed, std::uint64_t(trial)));
            bool prev_justified = false;
            bool ok = true;
            for (std::int64_t k = 0; k < n; ++k) {
                const bool justified = uniform01(gen) < p_justify;
                if (justified && prev_justified) {
                    ok = false;
                    break;
                }
                prev_justified = justified;
            }
            if (ok) ++*count;
        };
    });

    std::int64_t successes = 0;
    for (const auto c : partial) successes += c;

    DelayVerification v;
    v.estimate = make_estimate(successes, trials, seed);
    v.exact = delay_probability(n, p_justify);
    v.z_score = v.estimate.std_error > 0.0
                    ? (v.estimate.point - v.exact) / v.estimate.std_error
                    : 0.0;
    return v;
}

}  // namespace beacon

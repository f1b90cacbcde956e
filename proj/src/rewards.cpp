#include "beacon/rewards.hpp"

#include <limits>
#include <stdexcept>

namespace beacon {

namespace mp = boost::multiprecision;

Gwei::Gwei(Rational value) : value_(std::move(value)) {
    if (value_ < 0) throw std::invalid_argument("Gwei: negative amount");
}

std::int64_t Gwei::rendered() const {
    // floor(x + 1/2) on the exact rational
    const BigInt n = mp::numerator(value_);
    const BigInt d = mp::denominator(value_);
    const BigInt rounded = (2 * n + d) / (2 * d);
    if (rounded > std::numeric_limits<std::int64_t>::max())
        throw std::overflow_error("Gwei: rendered value exceeds int64");
    return rounded.convert_to<std::int64_t>();
}

Gwei Gwei::operator*(std::int64_t k) const {
    if (k < 0) throw std::invalid_argument("Gwei: negative multiplier");
    return Gwei(value_ * k);
}

void RewardParams::validate() const {
    if (base_reward_factor <= 0 || base_rewards_per_epoch <= 0 || proposer_reward_quotient <= 0 ||
        inactivity_penalty_quotient <= 0)
        throw ConfigError("reward quotients must be strictly positive");
    if (max_effective_balance <= 0) throw ConfigError("max_effective_balance must be positive");
    if (total_validators <= 0) throw ConfigError("total_validators must be positive");
}

BigInt isqrt(const BigInt& n) {
    if (n < 0) throw std::invalid_argument("isqrt: negative argument");
    return mp::sqrt(n);
}

Gwei base_reward(const RewardParams& params) {
    params.validate();
    const BigInt root = isqrt(params.total_staked());
    if (root == 0) throw ConfigError("base_reward: zero total stake");
    const Rational rho = Rational(BigInt(params.max_effective_balance) * params.base_reward_factor,
                                  BigInt(params.base_rewards_per_epoch) * root);
    return Gwei(rho);
}

Gwei inclusion_reward(const RewardParams& params, std::int64_t d) {
    if (d < 1) throw std::invalid_argument("inclusion_reward: delay must be >= 1");
    const auto q = params.proposer_reward_quotient;
    return Gwei(base_reward(params).exact() * (q - 1) / (Rational(q) * d));
}

Gwei max_attestation_value(const RewardParams& params) {
    const Rational rho = base_reward(params).exact();
    return Gwei(rho * 3 + inclusion_reward(params, 1).exact());
}

Gwei inactivity_leak(const RewardParams& params, std::int64_t e_f) {
    params.validate();
    if (e_f < 0) throw std::invalid_argument("inactivity_leak: negative epoch count");
    if (e_f <= 4) return Gwei();
    return Gwei(Rational(BigInt(params.max_effective_balance) * e_f,
                         BigInt(params.inactivity_penalty_quotient)));
}

double to_usd(const Gwei& amount, const RewardParams& params) {
    if (params.usd_per_eth <= 0) throw ConfigError("usd_per_eth must be positive");
    return amount.to_double() / 1e9 * params.usd_per_eth;
}

}  // namespace beacon

#pragma once

#include <boost/multiprecision/cpp_int.hpp>
#include <cstdint>

#include "beacon/types.hpp"

namespace beacon {

using Rational = boost::multiprecision::cpp_rational;
using BigInt = boost::multiprecision::cpp_int;

// Exact non-negative Gwei quantity.  All arithmetic stays rational; rounding
// happens only when a caller asks for the rendered integer value.
class Gwei {
public:
    Gwei() : value_(0) {}
    explicit Gwei(Rational value);
    static Gwei from_int(std::int64_t gwei) { return Gwei(Rational(gwei)); }

    const Rational& exact() const { return value_; }
    std::int64_t rendered() const;  // round half-up
    double to_double() const { return value_.convert_to<double>(); }

    Gwei operator+(const Gwei& o) const { return Gwei(value_ + o.value_); }
    Gwei operator*(std::int64_t k) const;
    bool operator==(const Gwei& o) const { return value_ == o.value_; }
    bool operator<(const Gwei& o) const { return value_ < o.value_; }

private:
    Rational value_;
};

struct RewardParams {
    std::int64_t base_reward_factor = 64;
    std::int64_t base_rewards_per_epoch = 4;
    std::int64_t proposer_reward_quotient = 8;
    std::int64_t inactivity_penalty_quotient = std::int64_t(1) << 24;
    std::int64_t max_effective_balance = 32'000'000'000;
    std::int64_t total_validators = 4096;
    double usd_per_eth = 500.0;

    void validate() const;
    BigInt total_staked() const {
        return BigInt(total_validators) * max_effective_balance;
    }
};

BigInt isqrt(const BigInt& n);

Gwei base_reward(const RewardParams& params);                          // rho
Gwei inclusion_reward(const RewardParams& params, std::int64_t d);     // iota(d)
Gwei max_attestation_value(const RewardParams& params);                // nu
Gwei inactivity_leak(const RewardParams& params, std::int64_t e_f);    // lambda(e_f)
double to_usd(const Gwei& amount, const RewardParams& params);

}  // namespace beacon

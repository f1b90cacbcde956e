#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <cmath>
#include <cstdint>

#include "beacon/rewards.hpp"

using namespace beacon;

namespace {

// Integer square root oracle: binary search entirely in BigInt, written
// without reference to the library's implementation.
BigInt isqrt_oracle(const BigInt& n) {
    BigInt lo = 0, hi = n + 1;
    while (hi - lo > 1) {
        const BigInt mid = (lo + hi) / 2;
        if (mid * mid <= n)
            lo = mid;
        else
            hi = mid;
    }
    return lo;
}

// Half-up rounding oracle on exact fractions.
std::int64_t round_half_up(std::int64_t num, std::int64_t den) {
    // num, den > 0; round(num/den) with .5 going up.
    return (2 * num + den) / (2 * den);
}

}  // namespace

TEST_CASE("gwei arithmetic is exact and rounds half-up only when rendered") {
    const Gwei third(Rational(1, 3));
    const Gwei sum = third + third + third;
    CHECK(sum == Gwei::from_int(1));
    CHECK(sum.rendered() == 1);

    CHECK(Gwei(Rational(1, 2)).rendered() == 1);      // exactly .5 goes up
    CHECK(Gwei(Rational(49, 100)).rendered() == 0);
    CHECK(Gwei(Rational(3, 2)).rendered() == 2);
    CHECK(Gwei(Rational(7, 2)).rendered() == 4);

    for (std::int64_t num = 0; num <= 500; ++num) {
        CHECK(Gwei(Rational(num, 7)).rendered() == round_half_up(num, 7));
    }

    CHECK((Gwei(Rational(5, 4)) * 4) == Gwei::from_int(5));
    CHECK_THROWS_AS(Gwei(Rational(-1)), std::invalid_argument);
    CHECK_THROWS_AS(Gwei(Rational(1)) * -2, std::invalid_argument);
}

TEST_CASE("integer square root matches the binary-search oracle") {
    for (std::int64_t n = 0; n <= 2000; ++n) CHECK(isqrt(BigInt(n)) == isqrt_oracle(BigInt(n)));
    const BigInt big = BigInt("131072000000000");  // 4096 * 32e9
    CHECK(isqrt(big) == isqrt_oracle(big));
    CHECK(isqrt(big) == 11448668);
}

TEST_CASE("base reward at the default scale") {
    RewardParams params;
    // Oracle: 32e9 * 64 / (4 * floor(sqrt(4096 * 32e9))), computed here as
    // an exact fraction before comparing against the library.
    const BigInt denom = BigInt(4) * isqrt_oracle(BigInt(4096) * 32'000'000'000);
    const Rational expected = Rational(BigInt(32'000'000'000) * 64, denom);

    const Gwei rho = base_reward(params);
    CHECK(rho.exact() == expected);
    CHECK(rho.rendered() == 44721);
    CHECK(rho.to_double() == doctest::Approx(44721.35972).epsilon(1e-8));
}

TEST_CASE("inclusion reward scales inversely with delay") {
    RewardParams params;
    const Gwei rho = base_reward(params);
    const Gwei iota1 = inclusion_reward(params, 1);

    // iota(d) = (7/8) rho / d exactly.
    CHECK(iota1.exact() == rho.exact() * 7 / 8);
    CHECK(inclusion_reward(params, 2).exact() == rho.exact() * 7 / 16);
    CHECK(inclusion_reward(params, 32).exact() == rho.exact() * 7 / 256);
    CHECK(iota1.rendered() == 39131);
    CHECK_THROWS_AS(inclusion_reward(params, 0), std::invalid_argument);
    CHECK_THROWS_AS(inclusion_reward(params, -3), std::invalid_argument);
}

TEST_CASE("max attestation value combines three duties and proposer share") {
    RewardParams params;
    const Gwei rho = base_reward(params);
    const Gwei nu = max_attestation_value(params);
    CHECK(nu.exact() == rho.exact() * 3 + rho.exact() * 7 / 8);
    CHECK(nu.exact() == rho.exact() * 31 / 8);
    const std::int64_t nu_int = nu.rendered();
    CHECK(nu_int >= 173294);  // quoted rounded value is 173294 +- 1
    CHECK(nu_int <= 173296);
    CHECK(nu.to_double() == doctest::Approx(173295.2689).epsilon(1e-8));
}

TEST_CASE("inactivity leak starts after four epochs of missed finality") {
    RewardParams params;
    CHECK(inactivity_leak(params, 0) == Gwei());
    CHECK(inactivity_leak(params, 4) == Gwei());
    // lambda(e_f) = balance * e_f / 2^24 for e_f > 4.
    const Rational coeff(BigInt(32'000'000'000), BigInt(1) << 24);
    CHECK(inactivity_leak(params, 5).exact() == coeff * 5);
    CHECK(inactivity_leak(params, 100).exact() == coeff * 100);
    CHECK(coeff.convert_to<double>() == doctest::Approx(1907.3486).epsilon(1e-6));
    CHECK_THROWS_AS(inactivity_leak(params, -1), std::invalid_argument);
}

TEST_CASE("usd conversion applies the configured price to exact gwei") {
    RewardParams params;
    params.usd_per_eth = 500.0;
    CHECK(to_usd(Gwei::from_int(1'000'000'000), params) == doctest::Approx(500.0));
    CHECK(to_usd(Gwei::from_int(2'000'000), params) == doctest::Approx(1.0));
    params.usd_per_eth = 1000.0;
    CHECK(to_usd(Gwei::from_int(2'000'000), params) == doctest::Approx(2.0));
}

TEST_CASE("reward params validation") {
    RewardParams params;
    CHECK_NOTHROW(params.validate());
    params.total_validators = 0;
    CHECK_THROWS_AS(params.validate(), ConfigError);
    params = RewardParams{};
    params.proposer_reward_quotient = 0;
    CHECK_THROWS_AS(params.validate(), ConfigError);
}

TEST_CASE("rendered rejects values outside the int64 range") {
    const Rational huge = Rational(BigInt(1) << 80);
    CHECK_THROWS(Gwei(huge).rendered());
    CHECK_NOTHROW(Gwei(huge).to_double());
}

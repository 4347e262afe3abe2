#include <doctest.h>

#include <bit>
#include <cmath>
#include <vector>

#include "qtransfer/channel.hpp"
#include "qtransfer/entpur.hpp"
#include "qtransfer/errors.hpp"

using namespace qtransfer;

namespace {

// Independent reference: walks the algorithm pair by pair, enumerating every
// pass/fail pattern instead of grouping by the binomial count.
struct BruteForce {
    std::vector<double> lambda;  // lambda[k] after k rounds

    explicit BruteForce(double lam0) {
        double l = lam0;
        for (int k = 0; k < 12; ++k) {
            lambda.push_back(l);
            l = (10 * l * l - 2 * l + 1) / (8 * l * l - 4 * l + 5);
        }
    }

    static double teleport(double l) { return (2 * l + 1) / 3; }

    double value(int count, int round, int stored) const {
        if (count % 2 == 1) {
            stored = round;
            --count;
        }
        const double fallback = stored >= 0 ? teleport(lambda[static_cast<std::size_t>(stored)]) : 0.5;
        if (count == 0) return fallback;
        const int pairs = count / 2;
        const double l = lambda[static_cast<std::size_t>(round)];
        const double p = (8 * l * l - 4 * l + 5) / 9;
        double total = 0.0;
        for (unsigned mask = 0; mask < (1U << pairs); ++mask) {
            const int j = std::popcount(mask);
            const double prob = std::pow(p, j) * std::pow(1 - p, pairs - j);
            double v;
            if (j == 0)
                v = fallback;
            else if (j == 1)
                v = teleport(lambda[static_cast<std::size_t>(round + 1)]);
            else
                v = value(j, round + 1, stored);
            total += prob * v;
        }
        return total;
    }
};

double dp(int n, double l) { return expected_fidelity_dp(n, WernerParam(l)).expected_fidelity; }

}  // namespace

TEST_CASE("pass_probability") {
    CHECK(pass_probability(WernerParam(1.0)) == 1.0);
    CHECK(pass_probability(WernerParam(0.25)) == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(pass_probability(WernerParam(0.5)) == doctest::Approx(5.0 / 9.0).epsilon(1e-15));
}

TEST_CASE("purify_lambda") {
    CHECK(purify_lambda(WernerParam(1.0)).value() == 1.0);
    CHECK(std::abs(purify_lambda(WernerParam(0.5)).value() - 0.5) <= 1e-14);
    CHECK(std::abs(purify_lambda(WernerParam(0.7)).value() - 4.5 / 6.12) <= 1e-14);
    for (int k = 1; k < 1000; ++k) {
        const double l = 0.5 + 0.5 * k / 1000.0;
        CHECK(purify_lambda(WernerParam(l)).value() > l);
    }
}

TEST_CASE("purified_bell_diagonal") {
    const PurifiedPair ideal = purified_bell_diagonal(WernerParam(1.0));
    CHECK(ideal.weights.phi_plus == 1.0);
    CHECK(ideal.weights.phi_minus == 0.0);
    CHECK(ideal.pass_probability == 1.0);

    const PurifiedPair mid = purified_bell_diagonal(WernerParam(0.7));
    const double p = 6.12 / 9;
    CHECK(std::abs(mid.pass_probability - p) <= 1e-15);
    CHECK(std::abs(mid.weights.phi_plus - (10 * 0.49 - 1.4 + 1) / (9 * p)) <= 1e-14);

    for (int k = 0; k <= 20; ++k) {
        const WernerParam l(k / 20.0);
        const PurifiedPair pp = purified_bell_diagonal(l);
        CHECK(std::abs(pp.weights.phi_plus - purify_lambda(l).value()) <= 1e-14);
        CHECK(twirl_to_werner(pp.weights).value() == pp.weights.phi_plus);
    }

    // Twirling the purified pair at 0.8 gives the recurrence value.
    const double p08 = (8 * 0.64 - 3.2 + 5) / 9;
    CHECK(std::abs(twirl_to_werner(purified_bell_diagonal(WernerParam(0.8)).weights).value() -
                   (10 * 0.64 - 1.6 + 1) / (9 * p08)) <= 1e-14);
}

TEST_CASE("outcome_probability") {
    CHECK(outcome_probability(1, 1, WernerParam(1.0)) == 1.0);
    CHECK(outcome_probability(1, 0, WernerParam(1.0)) == 0.0);
    const WernerParam fair(0.25);
    CHECK(outcome_probability(2, 0, fair) == doctest::Approx(0.25));
    CHECK(outcome_probability(2, 1, fair) == doctest::Approx(0.5));
    CHECK(outcome_probability(2, 2, fair) == doctest::Approx(0.25));
    const double p = 6.92 / 9;
    CHECK(std::abs(outcome_probability(4, 3, WernerParam(0.8)) - 4 * p * p * p * (2.08 / 9)) <= 1e-15);
    CHECK_THROWS_AS(outcome_probability(2, 3, fair), InputError);
    CHECK_THROWS_AS(outcome_probability(2, -1, fair), InputError);
}

TEST_CASE("step_oracle reproduces the closed form") {
    const PurifiedPair ideal = step_oracle(WernerParam(1.0));
    CHECK(std::abs(ideal.pass_probability - 1.0) <= 1e-12);
    CHECK(std::abs(ideal.weights.phi_plus - 1.0) <= 1e-12);

    const PurifiedPair mixed = step_oracle(WernerParam(0.25));
    CHECK(std::abs(mixed.pass_probability - 0.5) <= 1e-12);
    for (BellLabel b : kBellLabels) CHECK(std::abs(mixed.weights.weight(b) - 0.25) <= 1e-12);

    for (int k = 0; k < 20; ++k) {
        const WernerParam l(k / 19.0);
        const PurifiedPair oracle = step_oracle(l);
        const PurifiedPair closed = purified_bell_diagonal(l);
        CHECK(std::abs(oracle.pass_probability - closed.pass_probability) <= 1e-12);
        for (BellLabel b : kBellLabels)
            CHECK(std::abs(oracle.weights.weight(b) - closed.weights.weight(b)) <= 1e-12);
    }
}

TEST_CASE("expected_fidelity_dp hand-evaluated paths") {
    for (double l : {0.3, 0.55, 0.8, 1.0}) CHECK(dp(1, l) == single_shot_fidelity(WernerParam(l)));

    const double p = 6.92 / 9;
    const double f1 = (2 * (5.8 / 6.92) + 1) / 3;
    CHECK(std::abs(dp(2, 0.8) - (p * f1 + (1 - p) / 2)) <= 1e-14);
    CHECK(std::abs(dp(2, 0.8) - 0.801482) <= 1e-6);
    // p F(lambda_1) + (1 - p) F(0.8) = 2991 / 3375 exactly.
    CHECK(std::abs(dp(3, 0.8) - 2991.0 / 3375.0) <= 1e-14);

    CHECK(expected_fidelity_dp(1, WernerParam(0.8)).path_count == 1);
    CHECK(expected_fidelity_dp(3, WernerParam(0.8)).path_count == 2);
    CHECK(expected_fidelity_dp(4, WernerParam(0.8)).path_count == 4);

    CHECK_THROWS_AS(expected_fidelity_dp(0, WernerParam(0.8)), InputError);
    CHECK_THROWS_AS(expected_fidelity_dp(3, WernerParam(0.2)), DomainError);
}

TEST_CASE("expected_fidelity_dp matches per-pair enumeration") {
    for (double l : {0.26, 0.4, 0.5, 0.62, 0.8, 0.97})
        for (int n = 1; n <= 14; ++n) {
            const BruteForce ref(l);
            CHECK(std::abs(dp(n, l) - ref.value(n, 0, -1)) <= 1e-13);
        }
}

TEST_CASE("expected_fidelity_dp invariants") {
    for (int n = 1; n <= 33; ++n)
        for (int k = 1; k < 20; ++k) {
            const EntPurResult r = expected_fidelity_dp(n, WernerParam(0.25 + 0.75 * k / 20));
            CHECK(r.expected_fidelity >= 0.5);
            CHECK(r.expected_fidelity <= 1.0);
            CHECK(std::abs(r.probability_mass - 1.0) <= 1e-12);
        }

    for (double l : {0.6, 0.7, 0.8, 0.9})
        for (int k = 1; k <= 15; ++k) {
            CHECK(dp(2 * k + 1, l) > dp(2 * k, l));
            CHECK(dp(2 * k + 1, l) > dp(2 * k + 2, l));
        }

    // At 1/2 every odd-N path ends at exactly 2/3, so allow for summation rounding.
    for (double l : {0.26, 0.3, 0.4, 0.5})
        for (int n = 2; n <= 32; ++n) CHECK(dp(1, l) >= dp(n, l) - 1e-15);
}

TEST_CASE("lambda_schedule iterates the recurrence") {
    const auto s = lambda_schedule(9, WernerParam(0.8));
    REQUIRE(s.size() >= 5);
    CHECK(s[0] == 0.8);
    for (std::size_t k = 1; k < s.size(); ++k)
        CHECK(s[k] == purify_lambda(WernerParam(s[k - 1])).value());
}

TEST_CASE("mc_simulate degenerate cases are exact") {
    for (int n : {1, 2, 5, 9}) {
        const EntPurResult r = mc_simulate(n, WernerParam(1.0), 5000, 3);
        CHECK(*r.mc_estimate == 1.0);
        CHECK(*r.mc_stderr == 0.0);
    }
    const EntPurResult single = mc_simulate(1, WernerParam(0.63), 5000, 3);
    CHECK(*single.mc_estimate == single_shot_fidelity(WernerParam(0.63)));
    CHECK(*single.mc_stderr == 0.0);
    CHECK(*single.samples == 5000);
    CHECK(*single.seed == 3);
}

TEST_CASE("mc_simulate agrees with the DP") {
    const EntPurResult r = mc_simulate(9, WernerParam(0.8), 200000, 17);
    CHECK(*r.mc_stderr > 0.0);
    CHECK(std::abs(*r.mc_estimate - r.expected_fidelity) <= 5 * *r.mc_stderr);

    const EntPurResult again = mc_simulate(9, WernerParam(0.8), 200000, 17);
    CHECK(*again.mc_estimate == *r.mc_estimate);
    CHECK(*again.mc_stderr == *r.mc_stderr);
    const EntPurResult other = mc_simulate(9, WernerParam(0.8), 200000, 18);
    CHECK(*other.mc_estimate != *r.mc_estimate);

    CHECK_THROWS_AS(mc_simulate(9, WernerParam(0.8), 0, 1), InputError);
}

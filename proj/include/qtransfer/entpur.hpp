#pragma once

// Entanglement purification strategy: purify the N ebits with the Deutsch
// recurrence until one is left, then teleport through it.
//
// Repeated algorithm, starting with count = N ebits at round 0:
//   - odd count: store one ebit (it remembers the current round) and continue
//     with count - 1;
//   - purify count/2 pairs; j of them pass;
//   - j >= 2: next round with j ebits; j = 1: teleport through it;
//     j = 0: teleport through the last stored ebit, or give up (fidelity 1/2).

#include <cstdint>
#include <optional>
#include <vector>

#include "qtransfer/qmath.hpp"

namespace qtransfer {

/// (8 l^2 - 4 l + 5) / 9
double pass_probability(const WernerParam& lam);
/// Werner parameter of a passed pair after twirling: (10 l^2 - 2 l + 1) / (8 l^2 - 4 l + 5).
WernerParam purify_lambda(const WernerParam& lam);

struct PurifiedPair {
    BellDiagonal weights;
    double pass_probability = 1.0;
};

/// Closed-form post-selected Bell weights of one purification step.
PurifiedPair purified_bell_diagonal(const WernerParam& lam);

/// Binomial probability that j of `pairs` purified pairs pass.
double outcome_probability(int pairs, int j, const WernerParam& lam);

/// Density-matrix simulation of one step on werner(l) (x) werner(l), qubit
/// order A1 B1 A2 B2: Alice rotates by Rx(pi/2), Bob by Rx(-pi/2), bilateral
/// CNOT 1 -> 2, both targets measured, coinciding results kept.
PurifiedPair step_oracle(const WernerParam& lam);

struct PurificationDPState {
    int count = 0;
    int round = 0;
    std::optional<int> stored_round;

    friend bool operator==(const PurificationDPState&, const PurificationDPState&) = default;
};

struct EntPurResult {
    double expected_fidelity = 0.0;
    std::uint64_t path_count = 0;     // terminal paths of the outcome tree
    double probability_mass = 0.0;    // sum of terminal path probabilities
    std::optional<double> mc_estimate;
    std::optional<double> mc_stderr;
    std::optional<std::uint64_t> samples;
    std::optional<std::uint64_t> seed;
};

/// lambda_0, lambda_1, ... for the rounds an N-ebit run can reach.
std::vector<double> lambda_schedule(int n_ebits, const WernerParam& lam0);

/// Exact expectation of the terminal fidelity over all algorithm paths.
/// Requires n_ebits >= 1 and lambda0 >= 1/4.
EntPurResult expected_fidelity_dp(int n_ebits, const WernerParam& lam0);

// Monte Carlo estimate of the same expectation. Samples are split into
// kMcPartitions fixed partitions, each with its own generator seeded from
// (seed, partition), and merged in partition order, so the OpenMP kernel and
// the serial reference return bit-identical results.
inline constexpr int kMcPartitions = 64;

EntPurResult mc_simulate(int n_ebits, const WernerParam& lam0, std::uint64_t samples,
                         std::uint64_t seed);
EntPurResult mc_simulate_serial(int n_ebits, const WernerParam& lam0, std::uint64_t samples,
                                std::uint64_t seed);

}  // namespace qtransfer

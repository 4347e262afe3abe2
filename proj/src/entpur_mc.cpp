// Sampled execution of the repeated purification algorithm.

#include <cmath>
#include <random>
#include <vector>

#include "entpur_detail.hpp"
#include "qtransfer/entpur.hpp"

namespace qtransfer {

namespace {

using detail::Schedule;

// Welford accumulator; merged with Chan's pairwise update.
struct RunningStats {
    std::uint64_t n = 0;
    double mean = 0.0;
    double m2 = 0.0;

    void push(double x) {
        ++n;
        const double delta = x - mean;
        mean += delta / static_cast<double>(n);
        m2 += delta * (x - mean);
    }

    void merge(const RunningStats& o) {
        if (o.n == 0) return;
        if (n == 0) {
            *this = o;
            return;
        }
        const double na = static_cast<double>(n), nb = static_cast<double>(o.n);
        const double delta = o.mean - mean;
        const double total = na + nb;
        mean += delta * nb / total;
        m2 += o.m2 + delta * delta * na * nb / total;
        n += o.n;
    }
};

double uniform01(std::mt19937_64& rng) { return static_cast<double>(rng() >> 11) * 0x1.0p-53; }

double sample_terminal_fidelity(const Schedule& s, int n_ebits, std::mt19937_64& rng) {
    int count = n_ebits;
    std::size_t round = 0;
    std::optional<int> stored;
    for (;;) {
        if (count % 2 == 1) {
            stored = static_cast<int>(round);
            --count;
        }
        if (count == 0) return s.fallback(stored);
        int passed = 0;
        for (int pair = 0; pair < count / 2; ++pair)
            if (uniform01(rng) < s.pass[round]) ++passed;
        if (passed == 0) return s.fallback(stored);
        if (passed == 1) return s.fidelity[round + 1];
        count = passed;
        ++round;
    }
}

std::uint64_t partition_size(std::uint64_t samples, int k) {
    const auto parts = static_cast<std::uint64_t>(kMcPartitions);
    return samples / parts + (static_cast<std::uint64_t>(k) < samples % parts ? 1 : 0);
}

RunningStats run_partition(const Schedule& s, int n_ebits, std::uint64_t samples,
                           std::uint64_t seed, int k) {
    std::seed_seq seq{static_cast<std::uint32_t>(seed), static_cast<std::uint32_t>(seed >> 32),
                      static_cast<std::uint32_t>(k)};
    std::mt19937_64 rng(seq);
    RunningStats st;
    const std::uint64_t count = partition_size(samples, k);
    for (std::uint64_t i = 0; i < count; ++i) st.push(sample_terminal_fidelity(s, n_ebits, rng));
    return st;
}

EntPurResult finish(int n_ebits, const WernerParam& lam0, const std::vector<RunningStats>& parts,
                    std::uint64_t samples, std::uint64_t seed) {
    RunningStats total;
    for (const auto& p : parts) total.merge(p);
    EntPurResult res = expected_fidelity_dp(n_ebits, lam0);
    res.mc_estimate = total.mean;
    res.mc_stderr = total.n > 1 ? std::sqrt(total.m2 / static_cast<double>(total.n - 1) /
                                            static_cast<double>(total.n))
                                : 0.0;
    res.samples = samples;
    res.seed = seed;
    return res;
}

void validate_samples(std::uint64_t samples) {
    if (samples < 1) throw InputError("mc_simulate: need at least one sample");
}

}  // namespace

EntPurResult mc_simulate(int n_ebits, const WernerParam& lam0, std::uint64_t samples,
                         std::uint64_t seed) {
    detail::validate_run(n_ebits, lam0, "mc_simulate");
    validate_samples(samples);
    const Schedule s(n_ebits, lam0);
    std::vector<RunningStats> parts(kMcPartitions);
#pragma omp parallel for schedule(static)
    for (int k = 0; k < kMcPartitions; ++k) parts[k] = run_partition(s, n_ebits, samples, seed, k);
    return finish(n_ebits, lam0, parts, samples, seed);
}

EntPurResult mc_simulate_serial(int n_ebits, const WernerParam& lam0, std::uint64_t samples,
                                std::uint64_t seed) {
    detail::validate_run(n_ebits, lam0, "mc_simulate_serial");
    validate_samples(samples);
    const Schedule s(n_ebits, lam0);
    std::vector<RunningStats> parts(kMcPartitions);
    for (int k = 0; k < kMcPartitions; ++k) parts[k] = run_partition(s, n_ebits, samples, seed, k);
    return finish(n_ebits, lam0, parts, samples, seed);
}

}  // namespace qtransfer

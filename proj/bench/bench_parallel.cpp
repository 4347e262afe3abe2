// Wall-clock comparison of the OpenMP kernels and their serial references.

#include <omp.h>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <vector>

#include "qtransfer/compare.hpp"
#include "qtransfer/entpur.hpp"

using namespace qtransfer;

namespace {

template <class F>
double best_of(int reps, F&& f) {
    double best = 1e300;
    for (int i = 0; i < reps; ++i) {
        const auto t0 = std::chrono::steady_clock::now();
        f();
        best = std::min(best, std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count());
    }
    return best;
}

void report(const char* name, double serial, double parallel, bool same) {
    std::printf("%-28s serial %8.4fs  openmp %8.4fs  speedup %5.2fx  %s\n", name, serial, parallel,
                serial / parallel, same ? "identical" : "MISMATCH");
}

}  // namespace

int main(int argc, char** argv) {
    const std::uint64_t samples = argc > 1 ? std::strtoull(argv[1], nullptr, 10) : 2'000'000;
    const int reps = 3;
    std::printf("threads: %d, mc samples: %llu\n", omp_get_max_threads(),
                static_cast<unsigned long long>(samples));

    EntPurResult a, b;
    const WernerParam l(0.8);
    const double ts = best_of(reps, [&] { a = mc_simulate_serial(15, l, samples, 1); });
    const double tp = best_of(reps, [&] { b = mc_simulate(15, l, samples, 1); });
    report("mc_simulate N=15", ts, tp, *a.mc_estimate == *b.mc_estimate && *a.mc_stderr == *b.mc_stderr);

    std::vector<int> ns;
    for (int n = 1; n <= 64; ++n) ns.push_back(n);
    const auto grid = interior_grid(200);
    std::vector<SweepRow> ra, rb;
    const double ss = best_of(reps, [&] { ra = sweep_serial(kAllMethods, ns, grid); });
    const double sp = best_of(reps, [&] { rb = sweep(kAllMethods, ns, grid); });
    bool same = ra.size() == rb.size();
    for (std::size_t i = 0; same && i < ra.size(); ++i) same = ra[i].fidelity == rb[i].fidelity;
    report("sweep 3x64x200", ss, sp, same);
    return same ? 0 : 1;
}

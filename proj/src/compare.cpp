#include "qtransfer/compare.hpp"

#include <algorithm>
#include <string>

#include "qtransfer/entpur.hpp"
#include "qtransfer/errors.hpp"
#include "qtransfer/estimate.hpp"
#include "qtransfer/qubitpur.hpp"

namespace qtransfer {

namespace {

template <typename T>
std::vector<T> sorted_unique(std::span<const T> xs) {
    std::vector<T> v(xs.begin(), xs.end());
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    return v;
}

std::vector<SweepRow> sweep_layout(std::span<const Method> methods, std::span<const int> n_values,
                                   std::span<const double> lambda_grid) {
    if (methods.empty() || n_values.empty() || lambda_grid.empty())
        throw InputError("sweep: methods, n values and lambda grid must be nonempty");
    for (int n : n_values)
        if (n < 1) throw InputError("sweep: n must be positive");
    for (double l : lambda_grid)
        if (!(l > kLambdaCrit && l < 1.0))
            throw DomainError("sweep: lambda0 " + std::to_string(l) + " outside (1/4, 1)");

    std::vector<SweepRow> rows;
    for (Method m : sorted_unique(methods))
        for (int n : sorted_unique(n_values))
            for (double l : sorted_unique(lambda_grid)) rows.push_back({m, n, l, 0.0});
    return rows;
}

}  // namespace

std::string_view to_string(Method m) {
    switch (m) {
        case Method::ent_pur: return "ent_pur";
        case Method::qubit_pur: return "qubit_pur";
        case Method::estimation: return "estimation";
    }
    return "?";
}

Method parse_method(std::string_view name) {
    if (name == "ent_pur" || name == "ent") return Method::ent_pur;
    if (name == "qubit_pur" || name == "qubit") return Method::qubit_pur;
    if (name == "estimation" || name == "est") return Method::estimation;
    throw InputError("unknown method '" + std::string(name) + "'");
}

double effective_entpur_fidelity(int n, const WernerParam& lam0) {
    if (n < 1) throw InputError("effective_entpur_fidelity: n must be positive");
    const int used = (n % 2 == 0) ? n - 1 : n;
    return expected_fidelity_dp(used, lam0).expected_fidelity;
}

double method_fidelity(Method method, int n, const WernerParam& lam0) {
    switch (method) {
        case Method::ent_pur: return effective_entpur_fidelity(n, lam0);
        case Method::qubit_pur: return average_fidelity(n, lam0).expected_fidelity;
        case Method::estimation: return estimation_fidelity(n).fidelity;
    }
    throw InputError("method_fidelity: invalid method");
}

std::vector<double> interior_grid(int points) {
    if (points < 1) throw InputError("interior_grid: need at least one point");
    std::vector<double> grid;
    grid.reserve(static_cast<std::size_t>(points));
    for (int k = 0; k < points; ++k)
        grid.push_back(kLambdaCrit + (1.0 - kLambdaCrit) * (k + 1.0) / (points + 1.0));
    return grid;
}

std::vector<SweepRow> sweep(std::span<const Method> methods, std::span<const int> n_values,
                            std::span<const double> lambda_grid) {
    std::vector<SweepRow> rows = sweep_layout(methods, n_values, lambda_grid);
    const auto count = static_cast<long>(rows.size());
#pragma omp parallel for schedule(dynamic)
    for (long i = 0; i < count; ++i) {
        auto& r = rows[static_cast<std::size_t>(i)];
        r.fidelity = method_fidelity(r.method, r.n, WernerParam(r.lambda0));
    }
    return rows;
}

std::vector<SweepRow> sweep_serial(std::span<const Method> methods, std::span<const int> n_values,
                                   std::span<const double> lambda_grid) {
    std::vector<SweepRow> rows = sweep_layout(methods, n_values, lambda_grid);
    for (auto& r : rows) r.fidelity = method_fidelity(r.method, r.n, WernerParam(r.lambda0));
    return rows;
}

std::optional<double> crossing_point(Method method, int n, double tol) {
    if (n < 1) throw InputError("crossing_point: n must be positive");
    if (!(tol >= 1e-12)) throw InputError("crossing_point: tolerance must be >= 1e-12");
    if (method == Method::estimation)
        throw InputError("crossing_point: estimation has no crossing with itself");

    const double target = estimation_fidelity(n).fidelity;
    auto gap = [&](double l) { return method_fidelity(method, n, WernerParam(l)) - target; };

    // Prescan [1/4, 1]; exact zeros are skipped so a bracket straddles them.
    double lo = 0.0, hi = 0.0;
    int changes = 0;
    std::optional<std::pair<double, double>> prev;  // (lambda, gap) of last nonzero sample
    for (int k = 0; k < kCrossingPrescanPoints; ++k) {
        const double l = kLambdaCrit + (1.0 - kLambdaCrit) * k / (kCrossingPrescanPoints - 1.0);
        const double g = gap(l);
        if (g == 0.0) continue;
        if (prev && (prev->second < 0.0) != (g < 0.0)) {
            ++changes;
            lo = prev->first;
            hi = l;
        }
        prev = {l, g};
    }
    if (changes == 0) return std::nullopt;
    if (changes > 1)
        throw AmbiguityError("crossing_point: " + std::to_string(changes) + " sign changes for " +
                                 std::string(to_string(method)) + " at N = " + std::to_string(n),
                             n);

    const bool rising = gap(lo) < 0.0;
    while (hi - lo > tol) {
        const double mid = 0.5 * (lo + hi);
        const double g = gap(mid);
        if (g == 0.0) return mid;
        if ((g < 0.0) == rising)
            lo = mid;
        else
            hi = mid;
    }
    return 0.5 * (lo + hi);
}

CrossingResult crossing_points(int n, double tol) {
    return {n, crossing_point(Method::ent_pur, n, tol), crossing_point(Method::qubit_pur, n, tol),
            tol};
}

Method recommend(int n, const WernerParam& lam0) {
    const double channel = average_fidelity(n, lam0).expected_fidelity;
    return channel > estimation_fidelity(n).fidelity ? Method::qubit_pur : Method::estimation;
}

}  // namespace qtransfer

#pragma once

// Head-to-head comparison of the three transfer strategies.

#include <optional>
#include <span>
#include <string_view>
#include <vector>

#include "qtransfer/qmath.hpp"

namespace qtransfer {

enum class Method { ent_pur, qubit_pur, estimation };
inline constexpr Method kAllMethods[] = {Method::ent_pur, Method::qubit_pur, Method::estimation};

std::string_view to_string(Method m);
/// Accepts ent_pur/ent, qubit_pur/qubit, estimation/est.
Method parse_method(std::string_view name);

/// Entanglement purification with the odd-count rule: an even supply first
/// discards one ebit, so n even is evaluated with n - 1 ebits.
double effective_entpur_fidelity(int n, const WernerParam& lam0);

/// Fidelity of `method` as used in comparisons (even-n rule applied to ent_pur).
double method_fidelity(Method method, int n, const WernerParam& lam0);

struct SweepRow {
    Method method = Method::estimation;
    int n = 1;
    double lambda0 = 0.0;
    double fidelity = 0.0;
};

/// `points` equally spaced values strictly inside (1/4, 1).
std::vector<double> interior_grid(int points);

/// One row per (method, n, lambda0), ordered by method, then n, then lambda0.
/// The OpenMP kernel and the serial reference produce identical rows.
std::vector<SweepRow> sweep(std::span<const Method> methods, std::span<const int> n_values,
                            std::span<const double> lambda_grid);
std::vector<SweepRow> sweep_serial(std::span<const Method> methods, std::span<const int> n_values,
                                   std::span<const double> lambda_grid);

struct CrossingResult {
    int n = 1;
    std::optional<double> lambda_1;  // entanglement purification vs estimation
    std::optional<double> lambda_2;  // qubit purification vs estimation
    double tolerance = 1e-12;
};

inline constexpr int kCrossingPrescanPoints = 64;

/// lambda0 in (1/4, 1) where `method` matches the estimation fidelity, or
/// nullopt when the prescan sees no sign change. Throws AmbiguityError when
/// it sees more than one.
std::optional<double> crossing_point(Method method, int n, double tol);
CrossingResult crossing_points(int n, double tol = 1e-12);

/// qubit_pur when it beats estimation strictly, estimation otherwise.
Method recommend(int n, const WernerParam& lam0);

}  // namespace qtransfer

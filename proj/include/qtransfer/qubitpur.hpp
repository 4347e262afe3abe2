#pragma once

// Teleport-all-then-purify strategy. Bob holds N copies of the mixture
// c1 |psi><psi| + c0 |psi_bar><psi_bar| and projects them onto total-spin
// sectors; sector M = 2J keeps M qubits, the rest pair up into singlets.

#include <cstdint>
#include <map>
#include <optional>

#include "qtransfer/channel.hpp"
#include "qtransfer/qmath.hpp"

namespace qtransfer {

/// M -> p_M, keys n, n - 2, ..., 1 or 0.
struct OutcomeDistribution {
    int n = 1;
    WernerParam lambda0;
    std::map<int, double> probs;
};

struct QubitPurResult {
    double expected_fidelity = 0.0;
    OutcomeDistribution distribution;
    std::map<int, double> per_m_fidelity;  // M -> f_M
};

/// c1 = (1 + 2 l) / 3, c0 = 2 (1 - l) / 3 over the whole [0, 1] range.
MixtureCoefficients mixture_coefficients(const WernerParam& lam0);

/// Number of spin-M/2 sectors in n spin-1/2 particles:
/// C(n, k) - C(n, k - 1) with k = (n - M) / 2. Exact for n <= 62.
std::uint64_t multiplicity(int n, int m);

OutcomeDistribution outcome_distribution(int n, const WernerParam& lam0);

/// Single-qubit fidelity of one qubit of the M-qubit purified state; 1/2 at M = 0.
double single_qubit_fidelity(int m, const WernerParam& lam0);

/// Sum over M of p_M f_M. Requires lambda0 >= 1/4.
QubitPurResult average_fidelity(int n, const WernerParam& lam0);

inline constexpr int kMaxSpinOracleQubits = 8;
inline constexpr int kMaxQuadratureQubits = 4;
inline constexpr int kDefaultQuadratureNodes = 64;

/// p_M as traces of total-spin eigenprojectors on rho_B^{(x)n}, from an
/// explicit S^2 eigendecomposition. n <= 8. Averaged results must not depend
/// on `psi`; it defaults to a generic direction.
OutcomeDistribution spin_projector_oracle(int n, const WernerParam& lam0,
                                          std::optional<BlochAngles> psi = std::nullopt);

/// f_M from the integral representation of the M-qubit purified state:
/// Gauss-Legendre in cos(theta') times `nodes` uniform azimuths, reduced to
/// one qubit by partial trace. 1 <= m <= 4, nodes >= 32.
double reduced_state_quadrature_oracle(int m, const WernerParam& lam0,
                                       int nodes = kDefaultQuadratureNodes,
                                       std::optional<BlochAngles> psi = std::nullopt);

}  // namespace qtransfer

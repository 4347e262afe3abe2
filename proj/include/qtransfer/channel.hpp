#pragma once

// Teleportation through a Werner-state ebit. Bob receives the mixture
// c1 |psi><psi| + c0 |psi_bar><psi_bar| with c1 = (1 + 2 lambda) / 3.

#include <array>

#include "qtransfer/qmath.hpp"

namespace qtransfer {

/// Weights of |psi> (c1) and its orthogonal partner (c0) in Bob's state.
struct MixtureCoefficients {
    double c1 = 1.0;
    double c0 = 0.0;
};

/// Requires lambda >= 1/4.
MixtureCoefficients teleport_map(const WernerParam& lam);

/// (2 lambda + 1) / 3. Accepts the whole [0, 1] range; the no-ebit fallback
/// is single_shot_fidelity(1/4) = 1/2.
double single_shot_fidelity(const WernerParam& lam);

/// c1 |psi><psi| + c0 |psi_bar><psi_bar| for the given input direction.
DensityOperator mixture_state(const MixtureCoefficients& mix, const BlochAngles& psi);

struct TeleportRun {
    DensityOperator bob;
    std::array<double, 4> outcome_probabilities{};  // indexed like kBellLabels
};

/// Full three-qubit simulation: |psi><psi| (x) werner(lambda), Bell measurement
/// on qubits 0 and 1, Pauli correction on qubit 2, outcome-weighted average.
TeleportRun teleport_oracle_run(const WernerParam& lam, const BlochAngles& psi);
DensityOperator teleport_oracle(const WernerParam& lam, const BlochAngles& psi);

/// Correction Bob applies for a Bell outcome: phi+ -> I, psi+ -> X, phi- -> Z, psi- -> XZ.
ComplexMatrix pauli_correction(BellLabel outcome);

}  // namespace qtransfer

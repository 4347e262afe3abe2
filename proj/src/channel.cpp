#include "qtransfer/channel.hpp"

#include "qtransfer/errors.hpp"

namespace qtransfer {

MixtureCoefficients teleport_map(const WernerParam& lam) {
    require_protocol_range(lam, "teleport_map");
    const double l = lam.value();
    return {(1.0 + 2.0 * l) / 3.0, 2.0 * (1.0 - l) / 3.0};
}

double single_shot_fidelity(const WernerParam& lam) { return (2.0 * lam.value() + 1.0) / 3.0; }

DensityOperator mixture_state(const MixtureCoefficients& mix, const BlochAngles& psi) {
    const Ket a = bloch_to_ket(psi);
    const Ket b = orthogonal_ket(psi);
    return DensityOperator(ComplexMatrix::outer(a, a) * Complex(mix.c1) +
                           ComplexMatrix::outer(b, b) * Complex(mix.c0));
}

ComplexMatrix pauli_correction(BellLabel outcome) {
    switch (outcome) {
        case BellLabel::phi_plus: return ComplexMatrix::identity(2);
        case BellLabel::psi_plus: return pauli_x();
        case BellLabel::phi_minus: return pauli_z();
        case BellLabel::psi_minus: return pauli_x() * pauli_z();
    }
    throw InputError("pauli_correction: invalid outcome");
}

TeleportRun teleport_oracle_run(const WernerParam& lam, const BlochAngles& psi) {
    const DensityOperator input = DensityOperator::pure(bloch_to_ket(psi));
    const DensityOperator joint = tensor(input, werner_density(lam));

    constexpr int kAlice[] = {0, 1};
    constexpr int kBob[] = {2};
    std::vector<ComplexMatrix> projectors;
    for (BellLabel l : kBellLabels) {
        const Ket b = bell_state(l);
        projectors.push_back(embed(ComplexMatrix::outer(b, b), kAlice, 3));
    }
    const auto branches = measure_projective(joint, projectors);

    TeleportRun run{DensityOperator::pure(bloch_to_ket(psi)), {}};
    ComplexMatrix bob(2);
    for (std::size_t k = 0; k < branches.size(); ++k) {
        run.outcome_probabilities[k] = branches[k].probability;
        if (!branches[k].state) continue;
        const DensityOperator received = partial_trace(*branches[k].state, kBob);
        const ComplexMatrix u = pauli_correction(kBellLabels[k]);
        bob += (u * received.matrix() * u.adjoint()) * Complex(branches[k].probability);
    }
    run.bob = DensityOperator(std::move(bob));
    return run;
}

DensityOperator teleport_oracle(const WernerParam& lam, const BlochAngles& psi) {
    return teleport_oracle_run(lam, psi).bob;
}

}  // namespace qtransfer

#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>

#include "qtransfer/channel.hpp"
#include "qtransfer/errors.hpp"

using namespace qtransfer;

TEST_CASE("teleport_map") {
    const auto ideal = teleport_map(WernerParam(1.0));
    CHECK(ideal.c1 == 1.0);
    CHECK(ideal.c0 == 0.0);
    const auto useless = teleport_map(WernerParam(0.25));
    CHECK(useless.c1 == doctest::Approx(0.5).epsilon(1e-15));
    CHECK(useless.c0 == doctest::Approx(0.5).epsilon(1e-15));
    const auto mid = teleport_map(WernerParam(0.7));
    CHECK(std::abs(mid.c1 - 0.8) <= 1e-15);
    CHECK(std::abs(mid.c0 - 0.2) <= 1e-15);
    CHECK_THROWS_AS(teleport_map(WernerParam(0.2)), DomainError);
}

TEST_CASE("single_shot_fidelity") {
    CHECK(single_shot_fidelity(WernerParam(1.0)) == 1.0);
    CHECK(single_shot_fidelity(WernerParam(0.25)) == 0.5);
    CHECK(std::abs(single_shot_fidelity(WernerParam(0.7)) - 0.8) <= 1e-15);
    // Below 1/4 is still defined mathematically.
    CHECK(single_shot_fidelity(WernerParam(0.0)) == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("mixed output state has the closed-form fidelity") {
    const BlochAngles psi(1.2, 4.0);
    const DensityOperator rho = mixture_state(teleport_map(WernerParam(0.7)), psi);
    CHECK(std::abs(fidelity_pure(bloch_to_ket(psi), rho) - 0.8) <= 1e-14);
}

TEST_CASE("teleport_oracle examples") {
    const BlochAngles psi(std::numbers::pi / 3, 1.1);
    const DensityOperator ideal = teleport_oracle(WernerParam(1.0), psi);
    CHECK(max_abs_diff(ideal.matrix(), DensityOperator::pure(bloch_to_ket(psi)).matrix()) <= 1e-12);

    const DensityOperator mixed = teleport_oracle(WernerParam(0.25), psi);
    CHECK(max_abs_diff(mixed.matrix(), ComplexMatrix::identity(2) * Complex(0.5)) <= 1e-12);

    const DensityOperator mid = teleport_oracle(WernerParam(0.7), psi);
    CHECK(max_abs_diff(mid.matrix(), mixture_state(teleport_map(WernerParam(0.7)), psi).matrix()) <= 1e-12);
}

TEST_CASE("teleport_oracle matches the mixture for random inputs") {
    std::mt19937_64 rng(2024);
    std::uniform_real_distribution<double> lam(0.25, 1.0), th(0.0, std::numbers::pi),
        ph(0.0, 2 * std::numbers::pi);
    for (int i = 0; i < 50; ++i) {
        const WernerParam l(lam(rng));
        const BlochAngles psi(th(rng), ph(rng));
        const TeleportRun run = teleport_oracle_run(l, psi);
        CHECK(max_abs_diff(run.bob.matrix(), mixture_state(teleport_map(l), psi).matrix()) <= 1e-12);
        CHECK(std::abs(fidelity_pure(bloch_to_ket(psi), run.bob) - single_shot_fidelity(l)) <= 1e-12);
        for (double p : run.outcome_probabilities) CHECK(std::abs(p - 0.25) <= 1e-12);
    }
}

TEST_CASE("every Pauli correction is needed") {
    // Replacing any correction with the identity breaks the ideal channel.
    const BlochAngles psi(1.0, 0.5);
    for (BellLabel l : {BellLabel::psi_plus, BellLabel::phi_minus, BellLabel::psi_minus})
        CHECK(max_abs_diff(pauli_correction(l), ComplexMatrix::identity(2)) > 0.5);
    CHECK(is_unitary(pauli_correction(BellLabel::psi_minus)));
    CHECK(fidelity_pure(bloch_to_ket(psi), teleport_oracle(WernerParam(1.0), psi)) ==
          doctest::Approx(1.0).epsilon(1e-12));
}

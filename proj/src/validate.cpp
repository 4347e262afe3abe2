#include "qtransfer/validate.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <random>

#include "qtransfer/compare.hpp"
#include "qtransfer/entpur.hpp"
#include "qtransfer/estimate.hpp"
#include "qtransfer/qubitpur.hpp"

namespace qtransfer {

namespace {

class Suite {
public:
    // Passes when `error <= tol`.
    void record(std::string name, double error, double tol) {
        const bool ok = std::isfinite(error) && error <= tol;
        report_.checks.push_back({std::move(name), ok, error, tol});
    }
    ValidationReport take() { return std::move(report_); }

private:
    ValidationReport report_;
};

double weights_diff(const BellDiagonal& a, const BellDiagonal& b) {
    double worst = 0.0;
    for (BellLabel l : kBellLabels) worst = std::max(worst, std::abs(a.weight(l) - b.weight(l)));
    return worst;
}

void check_teleportation(Suite& suite, const ClosedForms& forms, std::uint64_t seed) {
    std::mt19937_64 rng(seed);
    std::uniform_real_distribution<double> lam(kLambdaCrit, 1.0), theta(0.0, std::numbers::pi),
        phi(0.0, 2 * std::numbers::pi);
    double state_err = 0.0, fid_err = 0.0, outcome_err = 0.0;
    for (int trial = 0; trial < 50; ++trial) {
        const WernerParam l(lam(rng));
        const BlochAngles psi(theta(rng), phi(rng));
        const TeleportRun run = teleport_oracle_run(l, psi);
        const DensityOperator expected = mixture_state(forms.teleport_mixture(l.value()), psi);
        state_err = std::max(state_err, max_abs_diff(run.bob.matrix(), expected.matrix()));
        fid_err = std::max(fid_err, std::abs(fidelity_pure(bloch_to_ket(psi), run.bob) -
                                             forms.teleport_fidelity(l.value())));
        for (double p : run.outcome_probabilities)
            outcome_err = std::max(outcome_err, std::abs(p - 0.25));
    }
    suite.record("teleport_oracle_state", state_err, 1e-12);
    suite.record("teleport_oracle_fidelity", fid_err, 1e-12);
    suite.record("teleport_outcomes_uniform", outcome_err, 1e-12);
}

void check_purification_step(Suite& suite, const ClosedForms& forms) {
    double w_err = 0.0, p_err = 0.0, twirl_err = 0.0;
    for (int k = 0; k < 20; ++k) {
        const double l = k / 19.0;
        const PurifiedPair oracle = step_oracle(WernerParam(l));
        w_err = std::max(w_err, weights_diff(oracle.weights, forms.purified_weights(l)));
        p_err = std::max(p_err, std::abs(oracle.pass_probability - forms.pass_probability(l)));
        twirl_err = std::max(twirl_err, std::abs(oracle.weights.phi_plus - forms.purify_lambda(l)));
    }
    suite.record("step_oracle_weights", w_err, 1e-12);
    suite.record("step_oracle_pass_probability", p_err, 1e-12);
    suite.record("step_oracle_twirled_lambda", twirl_err, 1e-12);

    suite.record("purify_lambda_fixed_points",
                 std::max(std::abs(forms.purify_lambda(0.5) - 0.5),
                          std::abs(forms.purify_lambda(1.0) - 1.0)),
                 1e-14);
    // Largest lambda - purify(lambda) on (1/2, 1); must stay negative.
    double worst = -1.0;
    for (int k = 1; k <= 1000; ++k) {
        const double l = 0.5 + 0.5 * k / 1001.0;
        worst = std::max(worst, l - forms.purify_lambda(l));
    }
    suite.record("purify_lambda_improves_above_half", worst < 0.0 ? 0.0 : 1.0, 0.0);
}

void check_qubit_purification(Suite& suite, const ClosedForms& forms) {
    double small = 0.0, large = 0.0;
    for (double l : {0.3, 0.5, 0.7, 0.9}) {
        for (int n = 1; n <= kMaxSpinOracleQubits; ++n) {
            const OutcomeDistribution oracle = spin_projector_oracle(n, WernerParam(l));
            const auto closed = forms.outcome_probs(n, l);
            double err = oracle.probs.size() == closed.size() ? 0.0 : 1.0;
            for (const auto& [m, p] : oracle.probs) {
                const auto it = closed.find(m);
                err = std::max(err, it == closed.end() ? 1.0 : std::abs(p - it->second));
            }
            double& slot = n <= 6 ? small : large;
            slot = std::max(slot, err);
        }
    }
    suite.record("spin_projector_oracle_n_le_6", small, 1e-10);
    suite.record("spin_projector_oracle_n_7_8", large, 1e-8);

    double quad = 0.0;
    for (double l : {0.3, 0.6, 0.9})
        for (int m = 1; m <= kMaxQuadratureQubits; ++m)
            quad = std::max(quad, std::abs(reduced_state_quadrature_oracle(m, WernerParam(l)) -
                                           forms.qubit_fidelity(m, l)));
    suite.record("quadrature_oracle_fidelity", quad, 1e-6);

    double norm = 0.0;
    for (int n = 1; n <= 20; ++n)
        for (int k = 0; k < 20; ++k) {
            double total = 0.0;
            for (const auto& [m, p] : forms.outcome_probs(n, k / 19.0)) total += p;
            norm = std::max(norm, std::abs(total - 1.0));
        }
    suite.record("qubitpur_normalization", norm, 1e-12);

    double ident = 0.0;
    for (double l : interior_grid(20)) {
        const double c1 = (1.0 + 2.0 * l) / 3.0;
        for (int n : {1, 2})
            ident = std::max(ident,
                             std::abs(average_fidelity(n, WernerParam(l)).expected_fidelity - c1));
    }
    suite.record("qubitpur_n1_n2_identity", ident, 1e-12);
}

void check_entanglement_purification(Suite& suite, const ValidationConfig& config) {
    double mass = 0.0;
    for (int n = 1; n <= 33; ++n)
        for (double l : interior_grid(20))
            mass = std::max(mass, std::abs(expected_fidelity_dp(n, WernerParam(l)).probability_mass - 1.0));
    suite.record("entpur_dp_probability_mass", mass, 1e-12);

    // Deviation in standard errors; a zero standard error demands exact agreement.
    double sigmas = 0.0;
    const std::pair<int, double> cases[] = {{5, 0.7}, {9, 0.8}, {15, 0.9}};
    for (const auto& [n, l] : cases) {
        const EntPurResult r = mc_simulate(n, WernerParam(l), config.mc_samples, config.seed);
        const double diff = std::abs(*r.mc_estimate - r.expected_fidelity);
        sigmas = std::max(sigmas, *r.mc_stderr > 0.0 ? diff / *r.mc_stderr
                                                     : (diff == 0.0 ? 0.0 : INFINITY));
    }
    suite.record("entpur_dp_vs_monte_carlo_sigmas", sigmas, 5.0);
}

void check_comparison(Suite& suite) {
    double worst = -1.0;
    for (double l : interior_grid(200)) {
        const WernerParam lam(l);
        worst = std::max(worst, effective_entpur_fidelity(9, lam) -
                                    average_fidelity(9, lam).expected_fidelity);
    }
    suite.record("qubitpur_dominates_entpur_n9", std::max(worst, 0.0), 1e-12);
    suite.record("estimation_values",
                 std::max(std::abs(estimation_fidelity(1).fidelity - 2.0 / 3.0),
                          std::abs(estimation_fidelity(9).fidelity - 10.0 / 11.0)),
                 0.0);
}

}  // namespace

ClosedForms ClosedForms::library() {
    ClosedForms f;
    f.teleport_mixture = [](double l) { return teleport_map(WernerParam(l)); };
    f.teleport_fidelity = [](double l) { return single_shot_fidelity(WernerParam(l)); };
    f.pass_probability = [](double l) { return qtransfer::pass_probability(WernerParam(l)); };
    f.purify_lambda = [](double l) { return qtransfer::purify_lambda(WernerParam(l)).value(); };
    f.purified_weights = [](double l) { return purified_bell_diagonal(WernerParam(l)).weights; };
    f.outcome_probs = [](int n, double l) { return outcome_distribution(n, WernerParam(l)).probs; };
    f.qubit_fidelity = [](int m, double l) { return single_qubit_fidelity(m, WernerParam(l)); };
    return f;
}

bool ValidationReport::passed() const {
    return std::all_of(checks.begin(), checks.end(), [](const CheckResult& c) { return c.passed; });
}

ValidationReport run_validation(const ValidationConfig& config, const ClosedForms& forms) {
    Suite suite;
    check_teleportation(suite, forms, config.seed);
    check_purification_step(suite, forms);
    check_qubit_purification(suite, forms);
    check_entanglement_purification(suite, config);
    check_comparison(suite);
    return suite.take();
}

}  // namespace qtransfer

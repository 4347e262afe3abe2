#pragma once

// Oracle suite: every closed form is checked against an independent
// computation (density-matrix simulation, spin projectors, quadrature,
// Monte Carlo). Closed forms are passed in so a harness can plant a mutation
// and confirm the suite catches it.

#include <cstdint>
#include <functional>
#include <map>
#include <string>
#include <vector>

#include "qtransfer/channel.hpp"
#include "qtransfer/qmath.hpp"

namespace qtransfer {

struct ClosedForms {
    std::function<MixtureCoefficients(double)> teleport_mixture;
    std::function<double(double)> teleport_fidelity;
    std::function<double(double)> pass_probability;
    std::function<double(double)> purify_lambda;
    std::function<BellDiagonal(double)> purified_weights;
    std::function<std::map<int, double>(int, double)> outcome_probs;
    std::function<double(int, double)> qubit_fidelity;

    /// The forms implemented by this library.
    static ClosedForms library();
};

struct ValidationConfig {
    std::uint64_t seed = 0;
    std::uint64_t mc_samples = 200000;
};

struct CheckResult {
    std::string name;
    bool passed = false;
    double max_error = 0.0;  // worst deviation seen, in the check's own metric
    double tolerance = 0.0;
};

struct ValidationReport {
    std::vector<CheckResult> checks;
    bool passed() const;
};

ValidationReport run_validation(const ValidationConfig& config,
                                const ClosedForms& forms = ClosedForms::library());

}  // namespace qtransfer

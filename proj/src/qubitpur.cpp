#include "qtransfer/qubitpur.hpp"

#include <cmath>
#include <numbers>
#include <string>

#include "qtransfer/errors.hpp"
#include "qtransfer/quadrature.hpp"

namespace qtransfer {

namespace {

constexpr int kExactBinomialLimit = 30;
const BlochAngles kDefaultDirection{1.1, 0.7};

void validate_sector(int n, int m, std::string_view who) {
    if (n < 1) throw InputError(std::string(who) + ": n must be positive");
    if (m < 0 || m > n || (n - m) % 2 != 0)
        throw InputError(std::string(who) + ": M = " + std::to_string(m) +
                         " is not a spin sector of " + std::to_string(n) + " qubits");
}

std::uint64_t binomial_exact(int n, int k) {
    if (k < 0 || k > n) return 0;
    k = std::min(k, n - k);
    unsigned __int128 c = 1;
    for (int i = 1; i <= k; ++i) c = c * static_cast<unsigned>(n - k + i) / static_cast<unsigned>(i);
    return static_cast<std::uint64_t>(c);
}

// sum_{i < terms} r^i
double geometric_sum(double r, int terms) {
    double s = 0.0, pw = 1.0;
    for (int i = 0; i < terms; ++i) {
        s += pw;
        pw *= r;
    }
    return s;
}

// log d_M via d_M = C(n, k) (M + 1) / ((n + M) / 2 + 1).
double log_multiplicity(int n, int m) {
    const int k = (n - m) / 2;
    return std::lgamma(n + 1.0) - std::lgamma(k + 1.0) - std::lgamma(n - k + 1.0) +
           std::log(m + 1.0) - std::log((n + m) / 2 + 1.0);
}

// p_M = d_M (c0 c1)^k c1^M sum_{i <= M} (c0/c1)^i, with k = (n - M) / 2.
double sector_probability(int n, int m, const MixtureCoefficients& c) {
    const int k = (n - m) / 2;
    const double r = c.c0 / c.c1;
    const double s = geometric_sum(r, m + 1);
    if (n <= kExactBinomialLimit) {
        const auto d = static_cast<double>(multiplicity(n, m));
        return d * std::pow(c.c0 * c.c1, k) * std::pow(c.c1, m) * s;
    }
    if (k > 0 && c.c0 == 0.0) return 0.0;
    double lp = log_multiplicity(n, m) + m * std::log(c.c1) + std::log(s);
    if (k > 0) lp += k * std::log(c.c0 * c.c1);
    return std::exp(lp);
}

ComplexMatrix total_spin_component(const ComplexMatrix& pauli, int n) {
    const std::size_t dim = std::size_t{1} << n;
    ComplexMatrix total(dim);
    const ComplexMatrix half = pauli * Complex(0.5);
    for (int q = 0; q < n; ++q) total += embed(half, std::span<const int>(&q, 1), n);
    return total;
}

}  // namespace

MixtureCoefficients mixture_coefficients(const WernerParam& lam0) {
    const double l = lam0.value();
    return {(1.0 + 2.0 * l) / 3.0, 2.0 * (1.0 - l) / 3.0};
}

std::uint64_t multiplicity(int n, int m) {
    validate_sector(n, m, "multiplicity");
    if (n > 62) throw ResourceError("multiplicity: n > 62 overflows 64-bit integers");
    if (m == n) return 1;
    const int k = (n - m) / 2;
    return binomial_exact(n, k) - binomial_exact(n, k - 1);
}

OutcomeDistribution outcome_distribution(int n, const WernerParam& lam0) {
    if (n < 1) throw InputError("outcome_distribution: n must be positive");
    const MixtureCoefficients c = mixture_coefficients(lam0);
    OutcomeDistribution dist{n, lam0, {}};
    for (int m = n % 2; m <= n; m += 2) dist.probs[m] = sector_probability(n, m, c);
    return dist;
}

double single_qubit_fidelity(int m, const WernerParam& lam0) {
    if (m < 0) throw InputError("single_qubit_fidelity: M must be nonnegative");
    if (m == 0) return 0.5;
    // With r = c0/c1 and S_k = sum_{i<k} r^i the closed form reduces to
    // sum_{k=1..M} S_k / (M S_{M+1}); no cancellation, and r = 1 gives 1/2.
    const MixtureCoefficients c = mixture_coefficients(lam0);
    const double r = c.c0 / c.c1;
    double partial = 0.0, acc = 0.0, pw = 1.0;
    for (int k = 1; k <= m; ++k) {
        partial += pw;  // S_k
        pw *= r;
        acc += partial;
    }
    const double full = partial + pw;  // S_{M+1}
    return acc / (m * full);
}

QubitPurResult average_fidelity(int n, const WernerParam& lam0) {
    require_protocol_range(lam0, "average_fidelity");
    QubitPurResult res;
    res.distribution = outcome_distribution(n, lam0);
    for (const auto& [m, p] : res.distribution.probs) {
        const double f = single_qubit_fidelity(m, lam0);
        res.per_m_fidelity[m] = f;
        res.expected_fidelity += p * f;
    }
    return res;
}

OutcomeDistribution spin_projector_oracle(int n, const WernerParam& lam0,
                                          std::optional<BlochAngles> psi) {
    if (n < 1) throw InputError("spin_projector_oracle: n must be positive");
    if (n > kMaxSpinOracleQubits)
        throw ResourceError("spin_projector_oracle: n = " + std::to_string(n) + " exceeds 8 qubits");

    const DensityOperator single =
        mixture_state(mixture_coefficients(lam0), psi.value_or(kDefaultDirection));
    DensityOperator rho = single;
    for (int k = 1; k < n; ++k) rho = tensor(rho, single);

    const ComplexMatrix sx = total_spin_component(pauli_x(), n);
    const ComplexMatrix sy = total_spin_component(pauli_y(), n);
    const ComplexMatrix sz = total_spin_component(pauli_z(), n);
    const ComplexMatrix s2 = sx * sx + sy * sy + sz * sz;
    const HermitianEigensystem eig = hermitian_eigensystem(s2);

    OutcomeDistribution dist{n, lam0, {}};
    std::size_t i = 0;
    while (i < eig.values.size()) {
        const double head = eig.values[i];
        double p = 0.0;
        std::size_t j = i;
        for (; j < eig.values.size() && std::abs(eig.values[j] - head) <= 1e-8 * std::max(1.0, std::abs(head)); ++j) {
            const Ket& v = eig.vectors[j];
            p += inner(v, rho.matrix().apply(v)).real();
        }
        // J(J + 1) = head, M = 2J.
        const double two_j = std::sqrt(1.0 + 4.0 * head) - 1.0;
        const int m = static_cast<int>(std::lround(two_j));
        if (std::abs(two_j - m) > 1e-6 || (n - m) % 2 != 0)
            throw std::runtime_error("spin_projector_oracle: eigenvalue " + std::to_string(head) +
                                     " is not J(J+1) for an allowed sector");
        dist.probs[m] += p;
        i = j;
    }
    return dist;
}

double reduced_state_quadrature_oracle(int m, const WernerParam& lam0, int nodes,
                                       std::optional<BlochAngles> psi) {
    if (m < 1 || m > kMaxQuadratureQubits)
        throw InputError("reduced_state_quadrature_oracle: M must be in 1..4");
    if (nodes < 32) throw InputError("reduced_state_quadrature_oracle: need at least 32 nodes");

    const BlochAngles dir = psi.value_or(kDefaultDirection);
    const Ket up = bloch_to_ket(dir);
    const Ket down = orthogonal_ket(dir);
    const MixtureCoefficients c = mixture_coefficients(lam0);
    const double a1 = std::sqrt(c.c1), a0 = std::sqrt(c.c0);

    const QuadratureRule gl = gauss_legendre(nodes);
    const std::size_t dim = std::size_t{1} << m;
    ComplexMatrix integral(dim);
    for (std::size_t i = 0; i < gl.nodes.size(); ++i) {
        const double u = gl.nodes[i];
        const double cos_half = std::sqrt((1.0 + u) / 2.0);
        const double sin_half = std::sqrt((1.0 - u) / 2.0);
        for (int k = 0; k < nodes; ++k) {
            const double azimuth = 2.0 * std::numbers::pi * k / nodes;
            const Complex phase = std::polar(1.0, azimuth);
            Ket one(2);
            for (std::size_t b = 0; b < 2; ++b)
                one[b] = a1 * cos_half * up[b] + a0 * sin_half * phase * down[b];
            Ket power = one;
            for (int q = 1; q < m; ++q) power = kron(power, one);
            // dOmega / 4 pi = (du / 2) (dphi / 2 pi)
            integral += ComplexMatrix::outer(power, power) * Complex(gl.weights[i] / 2.0 / nodes);
        }
    }
    // Normalization (c1 - c0)(M + 1) / (c1^{M+1} - c0^{M+1}) = (M + 1) / (c1^M sum_i r^i).
    const double norm = (m + 1) / (std::pow(c.c1, m) * geometric_sum(c.c0 / c.c1, m + 1));
    const DensityOperator rho_m(integral * Complex(norm));
    constexpr int kFirst[] = {0};
    return fidelity_pure(up, partial_trace(rho_m, kFirst));
}

}  // namespace qtransfer

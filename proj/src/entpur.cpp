#include "qtransfer/entpur.hpp"

#include <cmath>
#include <map>
#include <numbers>
#include <string>
#include <tuple>

#include "qtransfer/channel.hpp"
#include "qtransfer/errors.hpp"
#include "entpur_detail.hpp"

namespace qtransfer {

double pass_probability(const WernerParam& lam) {
    const double l = lam.value();
    return (8.0 * l * l - 4.0 * l + 5.0) / 9.0;
}

WernerParam purify_lambda(const WernerParam& lam) {
    const double l = lam.value();
    const double next = (10.0 * l * l - 2.0 * l + 1.0) / (8.0 * l * l - 4.0 * l + 5.0);
    return WernerParam(std::min(next, 1.0));
}

PurifiedPair purified_bell_diagonal(const WernerParam& lam) {
    const double l = lam.value();
    const double p = pass_probability(lam);
    const double phi_plus = (10.0 * l * l - 2.0 * l + 1.0) / (9.0 * p);
    const double phi_minus = 2.0 * (l - l * l) / (3.0 * p);
    const double psi = 2.0 * (1.0 - l) * (1.0 - l) / (9.0 * p);
    return {BellDiagonal::make(phi_plus, psi, phi_minus, psi), p};
}

double outcome_probability(int pairs, int j, const WernerParam& lam) {
    if (pairs < 1) throw InputError("outcome_probability: pairs must be positive");
    if (j < 0 || j > pairs)
        throw InputError("outcome_probability: j = " + std::to_string(j) + " outside [0, " +
                         std::to_string(pairs) + "]");
    const double p = pass_probability(lam);
    double binom = 1.0;
    for (int k = 1; k <= j; ++k) binom = binom * (pairs - j + k) / k;
    return binom * std::pow(p, j) * std::pow(1.0 - p, pairs - j);
}

PurifiedPair step_oracle(const WernerParam& lam) {
    using std::numbers::pi;
    const DensityOperator w = werner_density(lam);
    DensityOperator rho = tensor(w, w);

    const ComplexMatrix alice = rotation_x(pi / 2);
    const ComplexMatrix bob = rotation_x(-pi / 2);
    for (int q : {0, 2}) rho = apply_unitary(rho, alice, std::span<const int>(&q, 1));
    for (int q : {1, 3}) rho = apply_unitary(rho, bob, std::span<const int>(&q, 1));

    constexpr int kAliceCnot[] = {0, 2};
    constexpr int kBobCnot[] = {1, 3};
    rho = apply_unitary(rho, cnot(), kAliceCnot);
    rho = apply_unitary(rho, cnot(), kBobCnot);

    std::vector<ComplexMatrix> projectors;
    for (int a = 0; a < 2; ++a)
        for (int b = 0; b < 2; ++b)
            projectors.push_back(computational_projector(4, 2, a) *
                                 computational_projector(4, 3, b));
    const auto branches = measure_projective(rho, projectors);

    // Outcomes 00 and 11 coincide.
    double pass = 0.0;
    ComplexMatrix kept(16);
    for (std::size_t k : {std::size_t{0}, std::size_t{3}}) {
        if (!branches[k].state) continue;
        pass += branches[k].probability;
        kept += branches[k].state->matrix() * Complex(branches[k].probability);
    }
    constexpr int kControls[] = {0, 1};
    const DensityOperator pair =
        partial_trace(DensityOperator(kept * Complex(1.0 / pass)), kControls);
    return {bell_weights(pair), pass};
}

namespace {

using detail::Schedule;

struct DPValue {
    double fidelity = 0.0;
    double mass = 0.0;
    std::uint64_t paths = 0;
};

class PurificationDP {
public:
    explicit PurificationDP(const Schedule& s) : s_(s) {}

    DPValue solve(PurificationDPState st) {
        if (st.count % 2 == 1) {
            st.stored_round = st.round;
            --st.count;
        }
        if (st.count == 0) return {s_.fallback(st.stored_round), 1.0, 1};

        const auto key = std::make_tuple(st.count, st.round, st.stored_round.value_or(-1));
        if (auto it = memo_.find(key); it != memo_.end()) return it->second;

        const int pairs = st.count / 2;
        const auto r = static_cast<std::size_t>(st.round);
        const double p = s_.pass[r];
        DPValue out;
        double binom = 1.0;  // C(pairs, j)
        for (int j = 0; j <= pairs; ++j) {
            if (j > 0) binom = binom * (pairs - j + 1) / j;
            const double w = binom * std::pow(p, j) * std::pow(1.0 - p, pairs - j);
            DPValue branch;
            if (j == 0)
                branch = {s_.fallback(st.stored_round), 1.0, 1};
            else if (j == 1)
                branch = {s_.fidelity[r + 1], 1.0, 1};
            else
                branch = solve({j, st.round + 1, st.stored_round});
            out.fidelity += w * branch.fidelity;
            out.mass += w * branch.mass;
            out.paths += branch.paths;
        }
        memo_.emplace(key, out);
        return out;
    }

private:
    const Schedule& s_;
    std::map<std::tuple<int, int, int>, DPValue> memo_;
};

}  // namespace

std::vector<double> lambda_schedule(int n_ebits, const WernerParam& lam0) {
    return Schedule(std::max(n_ebits, 1), lam0).lambda;
}

EntPurResult expected_fidelity_dp(int n_ebits, const WernerParam& lam0) {
    detail::validate_run(n_ebits, lam0, "expected_fidelity_dp");
    const Schedule schedule(n_ebits, lam0);
    PurificationDP dp(schedule);
    const DPValue v = dp.solve({n_ebits, 0, std::nullopt});
    EntPurResult res;
    res.expected_fidelity = v.fidelity;
    res.probability_mass = v.mass;
    res.path_count = v.paths;
    return res;
}

}  // namespace qtransfer

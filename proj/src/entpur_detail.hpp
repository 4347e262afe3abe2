#pragma once

#include <algorithm>
#include <optional>
#include <string>
#include <string_view>
#include <vector>

#include "qtransfer/channel.hpp"
#include "qtransfer/entpur.hpp"
#include "qtransfer/errors.hpp"

namespace qtransfer::detail {

inline int max_rounds(int n_ebits) {
    int r = 0;
    while ((1 << r) < std::max(n_ebits, 2)) ++r;
    return r + 1;
}

// Per-round quantities shared by the DP and the sampler.
struct Schedule {
    std::vector<double> lambda;
    std::vector<double> pass;
    std::vector<double> fidelity;

    Schedule(int n_ebits, const WernerParam& lam0) {
        const int rounds = max_rounds(n_ebits) + 1;
        WernerParam l = lam0;
        for (int k = 0; k <= rounds; ++k) {
            lambda.push_back(l.value());
            pass.push_back(pass_probability(l));
            fidelity.push_back(single_shot_fidelity(l));
            l = purify_lambda(l);
        }
    }

    double fallback(const std::optional<int>& stored) const {
        return stored ? fidelity[static_cast<std::size_t>(*stored)] : 0.5;
    }
};

inline void validate_run(int n_ebits, const WernerParam& lam0, std::string_view who) {
    if (n_ebits < 1) throw InputError(std::string(who) + ": need at least one ebit");
    require_protocol_range(lam0, who);
}

}  // namespace qtransfer::detail

#pragma once

namespace qtransfer {

struct EstimationResult {
    int n = 1;
    double fidelity = 2.0 / 3.0;
};

/// Optimal fidelity of measuring n copies and re-preparing: (n + 1) / (n + 2).
/// Does not involve the channel at all.
EstimationResult estimation_fidelity(int n);

}  // namespace qtransfer

#include "qtransfer/estimate.hpp"

#include "qtransfer/errors.hpp"

namespace qtransfer {

EstimationResult estimation_fidelity(int n) {
    if (n < 1) throw InputError("estimation_fidelity: n must be positive");
    return {n, (n + 1.0) / (n + 2.0)};
}

}  // namespace qtransfer

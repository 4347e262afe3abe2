#include <doctest.h>

#include "qtransfer/errors.hpp"
#include "qtransfer/estimate.hpp"

using namespace qtransfer;

TEST_CASE("estimation_fidelity values") {
    CHECK(estimation_fidelity(1).fidelity == 2.0 / 3.0);
    CHECK(estimation_fidelity(9).fidelity == 10.0 / 11.0);
    CHECK(estimation_fidelity(9).n == 9);
    CHECK(estimation_fidelity(1000000).fidelity < 1.0);
    CHECK_THROWS_AS(estimation_fidelity(0), InputError);
    CHECK_THROWS_AS(estimation_fidelity(-3), InputError);
}

TEST_CASE("estimation_fidelity is strictly increasing") {
    double prev = estimation_fidelity(1).fidelity;
    for (int n = 2; n <= 1000000; ++n) {
        const double f = estimation_fidelity(n).fidelity;
        if (!(f > prev)) {
            FAIL("not increasing at n = " << n);
        }
        prev = f;
    }
    CHECK(prev >= 2.0 / 3.0);
}

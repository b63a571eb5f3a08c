#include "doctest.h"

#include <cmath>
#include <vector>

#include "atse/kernels.hpp"
#include "atse/rng.hpp"

using namespace atse;

namespace {

std::vector<double> random_vec(Rng& rng, std::size_t n, double lo, double hi) {
    std::vector<double> v(n);
    for (double& x : v) x = rng.uniform_real(lo, hi);
    return v;
}

}  // namespace

TEST_CASE("kernels: small exact cases") {
    std::vector<double> a{1.0, 2.0, 3.0};
    std::vector<double> b{4.0, -5.0, 6.0};
    CHECK(kernels::dot(a, b) == doctest::Approx(12.0));
    CHECK(kernels::sum(a) == doctest::Approx(6.0));
    CHECK(kernels::sumsq(b) == doctest::Approx(77.0));
    CHECK(kernels::max(b) == 6.0);
    CHECK(kernels::sum(std::vector<double>{}) == 0.0);
    CHECK(std::isinf(kernels::max(std::vector<double>{})));

    std::vector<double> out(3);
    kernels::scaled_sq_err(a, 1.0, 2.0, out);
    CHECK(out[0] == 0.0);
    CHECK(out[1] == 2.0);
    CHECK(out[2] == 8.0);

    std::vector<double> y{1.0, 1.0, 1.0};
    kernels::axpy(2.0, a, y);
    CHECK(y[0] == 3.0);
    CHECK(y[2] == 7.0);
}

// SIMD variants must agree with the scalar references across lengths that
// exercise both the vector body and the remainder loop.
TEST_CASE("kernels: dispatched backend matches scalar reference") {
    Rng rng(20240811);
    for (std::size_t n : {0u, 1u, 2u, 3u, 4u, 5u, 7u, 8u, 15u, 16u, 17u, 33u, 100u, 257u}) {
        auto a = random_vec(rng, n, -50.0, 50.0);
        auto b = random_vec(rng, n, -50.0, 50.0);

        CHECK(kernels::dot(a, b) ==
              doctest::Approx(kernels::scalar::dot(a, b)).epsilon(1e-12));
        CHECK(kernels::sum(a) == doctest::Approx(kernels::scalar::sum(a)).epsilon(1e-12));
        CHECK(kernels::sumsq(a) ==
              doctest::Approx(kernels::scalar::sumsq(a)).epsilon(1e-12));
        CHECK(kernels::max(a) == kernels::scalar::max(a));

        std::vector<double> got(n);
        std::vector<double> want(n);
        kernels::scaled_sq_err(a, 3.5, 0.25, got);
        kernels::scalar::scaled_sq_err(a, 3.5, 0.25, want);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-14));

        auto y1 = b;
        auto y2 = b;
        kernels::axpy(-1.75, a, y1);
        kernels::scalar::axpy(-1.75, a, y2);
        for (std::size_t i = 0; i < n; ++i)
            CHECK(y1[i] == doctest::Approx(y2[i]).epsilon(1e-14));
    }
}

TEST_CASE("kernels: backend reporting") {
    auto name = kernels::active_backend();
    CHECK((name == "scalar" || name == "avx2"));
}

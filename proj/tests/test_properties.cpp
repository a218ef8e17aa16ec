#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <random>

#include "nlsob/orlicz.hpp"
#include "nlsob/verify.hpp"
#include "oracles.hpp"

using namespace nlsob;

namespace {

GridFunction random_function(std::mt19937_64& rng, int n = 512) {
    return abs_value(sample_1d(oracle::random_pl(rng, 7), -4.0, 4.0, n));
}

}  // namespace

TEST_CASE("Luxemburg norm is homogeneous and subadditive") {
    std::mt19937_64 rng(11);
    std::uniform_real_distribution<double> c(0.1, 10.0);
    const YoungFunction phi = power_young(32.0, 4.0);
    for (int i = 0; i < 20; ++i) {
        auto u = random_function(rng), v = random_function(rng);
        const double a = c(rng);
        const double nu = luxemburg_norm(u, phi).value.value;
        CHECK(luxemburg_norm(scaled(u, a), phi).value.value == doctest::Approx(a * nu).epsilon(1e-9));
        GridFunction w = u;
        for (std::size_t j = 0; j < w.values.size(); ++j) w.values[j] += v.values[j];
        CHECK(luxemburg_norm(w, phi).value.value <= (nu + luxemburg_norm(v, phi).value.value) * (1 + 1e-9));
    }
}

TEST_CASE("Young inequality with the numeric conjugate") {
    std::mt19937_64 rng(12);
    std::uniform_real_distribution<double> e(-2.0, 2.0);
    const YoungFunction phi = combine(power_young(1.0, 2.0), power_young(0.5, 3.0), CombineMode::max);
    const YoungFunction conj = conjugate(phi);
    for (int i = 0; i < 200; ++i) {
        const double s = std::pow(10.0, e(rng)), t = std::pow(10.0, e(rng));
        CHECK(s * t <= (phi(s) + conj(t)) * (1 + 1e-6));
    }
}

TEST_CASE("growth condition holds at random pairs") {
    std::mt19937_64 rng(13);
    std::uniform_real_distribution<double> e(-2.5, 2.5);
    for (double s : {0.125, 0.25, 0.375}) {
        auto setup = prepare_gns(fractional_kernel(1, 2.0, s), VerifyMode::assumption_a);
        REQUIRE(setup.ok);
        const auto& phi = setup.value.phi;
        const double th = setup.value.theta;
        for (int i = 0; i < 100; ++i) {
            double a = std::pow(10.0, e(rng)), b = std::pow(10.0, e(rng));
            if (a > b) std::swap(a, b);
            CHECK(phi(th * a / b) <= phi(a) / phi(b) * (1 + 1e-9));
        }
    }
}

TEST_CASE("seminorm scales with the amplitude and ignores translation") {
    std::mt19937_64 rng(14);
    const Kernel k = fractional_kernel(1, 2.0, 0.3);
    for (int i = 0; i < 5; ++i) {
        auto f = oracle::random_pl(rng, 6);
        auto u = sample_1d(f, -4.0, 4.0, 512);
        auto v = sample_1d([&](double x) { return f(x - 0.25); }, -4.0, 4.0, 512);
        const double su = nonlocal_seminorm(u, k).value;
        CHECK(nonlocal_seminorm(scaled(u, -2.0), k).value == doctest::Approx(4.0 * su).epsilon(1e-12));
        CHECK(nonlocal_seminorm(v, k).value == doctest::Approx(su).epsilon(1e-9));
    }
}

TEST_CASE("GNS holds for random functions and fractional kernels") {
    std::mt19937_64 rng(15);
    std::uniform_real_distribution<double> sd(0.1, 0.45);
    for (int i = 0; i < 8; ++i) {
        const double s = sd(rng);
        auto setup = prepare_gns(fractional_kernel(1, 2.0, s), VerifyMode::assumption_a);
        REQUIRE(setup.ok);
        auto u = random_function(rng);
        for (double t : {2.0, 3.0}) CHECK(verify_gns(u, setup.value, t).pass);
        CHECK(verify_fractional_gns(u, s, 2.0).pass);
    }
}

TEST_CASE("lower and upper proof bounds bracket the norms for random functions") {
    std::mt19937_64 rng(16);
    auto setup = prepare_gns(fractional_kernel(1, 2.0, 0.25), VerifyMode::assumption_a);
    REQUIRE(setup.ok);
    for (int i = 0; i < 8; ++i) {
        auto c = proof_chain(random_function(rng), setup.value, 2.0);
        CHECK(c.lower_ok);
        CHECK(c.upper_ok);
    }
}

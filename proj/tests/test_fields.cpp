#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>
#include <sstream>

#include "nlsob/fields.hpp"
#include "nlsob/kernels.hpp"
#include "oracles.hpp"

using namespace nlsob;
using doctest::Approx;

namespace {

GridFunction hat1d(int n = 1024) {
    return sample_1d([](double x) { return oracle::hat(x, 0.0, 1.0); }, -4.0, 4.0, n);
}

}  // namespace

TEST_CASE("grid norms") {
    auto u = hat1d();
    CHECK(lp_norm(u, 1.0) == Approx(1.0).epsilon(1e-12));
    CHECK(lp_norm(u, 2.0) == Approx(std::sqrt(2.0 / 3.0)).epsilon(1e-4));
    CHECK(sup_norm(u) == 1.0);
    auto ind = sample_1d([](double x) { return x >= 0 && x < 2 ? 1.0 : 0.0; }, -4.0, 4.0, 1024);
    CHECK(support_measure(ind) == Approx(2.0));
    CHECK(mean_on(ind, interval_set(-1.0, 1.0)) == Approx(0.5));
    CHECK(lp_norm(scaled(u, -3.0), 1.0) == Approx(3.0));
    auto c = coarsen(u);
    CHECK(c.n[0] == 512);
    CHECK(c.h == Approx(2.0 * u.h));
}

TEST_CASE("gradient seminorm") {
    for (double p : {1.0, 2.0, 3.0}) CHECK(gradient_seminorm(hat1d(), p) == Approx(std::pow(2.0, 1.0 / p)).epsilon(1e-12));
    auto s = sample_1d([](double x) { return x >= 0 && x <= 1 ? std::sin(oracle::pi * x) : 0.0; },
                       -1.0, 2.0, 3072, Smoothness::smooth);
    CHECK(std::pow(gradient_seminorm(s, 2.0), 2) == Approx(oracle::pi * oracle::pi / 2.0).epsilon(1e-4));
    auto flat = sample_1d([](double) { return 2.0; }, 0.0, 1.0, 64);
    CHECK(gradient_seminorm(flat, 2.0) == 0.0);
}

TEST_CASE("nonlocal seminorm of an indicator with the ball kernel") {
    auto u = sample_1d([](double x) { return x >= 0 && x < 1 ? 1.0 : 0.0; }, -4.0, 4.0, 1024);
    for (double p : {1.0, 2.0}) {
        Kernel k = ball_kernel(1, p);
        auto r = nonlocal_seminorm(u, k);
        CHECK(r.value == Approx(2.0).epsilon(2e-2));
    }
    GridFunction z = scaled(u, 0.0);
    CHECK(nonlocal_seminorm(z, ball_kernel(1, 2.0)).value == 0.0);
}

TEST_CASE("fractional seminorm of the hat") {
    // closed form of iint |u(x)-u(y)|^2 |x-y|^{-3/2} for the unit hat
    auto u = hat1d();
    const Kernel k = fractional_kernel(1, 2.0, 0.25);
    auto r = nonlocal_seminorm(u, k);
    auto q = [&](double h) {
        return oracle::midpoint(
            [&](double x) {
                const double d = oracle::hat(x + h, 0, 1) - oracle::hat(x, 0, 1);
                return d * d;
            },
            -2.0 - h, 2.0, 4000);
    };
    double ref = 0.0;
    ref += 2.0 * oracle::midpoint([&](double h) { return q(h) * std::pow(h, -1.5); }, 0.0, 4.0, 800);
    ref += 2.0 * (4.0 / 3.0) * 2.0 * std::pow(4.0, -0.5);  // q(h) = 2||u||_2^2 once |h| > 2
    CHECK(r.value == Approx(ref).epsilon(1e-2));
}

TEST_CASE("restricted seminorm is at most the full one") {
    auto u = hat1d();
    const Kernel k = fractional_kernel(1, 2.0, 0.25);
    CHECK(nonlocal_seminorm_on(u, k, interval_set(0.0, 1.0)).value <= nonlocal_seminorm(u, k).value);
}

TEST_CASE("K_dp") {
    CHECK(K_dp(1, 2.0) == Approx(1.0));
    CHECK(K_dp(1, 3.5) == Approx(1.0));
    CHECK(K_dp(2, 2.0) == Approx(0.5));
    CHECK(K_dp(3, 2.0) == Approx(1.0 / 3.0));
}

TEST_CASE("BBM target and zero function") {
    auto u = sample_1d([](double x) { return oracle::hat(x, 0.0, 1.0); }, -2.0, 2.0, 1024);
    auto b = bbm_limit_check(u, 2.0, {0.9, 0.99});
    CHECK(b.target == Approx(2.0));
    auto z = bbm_limit_check(scaled(u, 0.0), 2.0, {0.9});
    CHECK(z.ratio.front() == 1.0);
}

TEST_CASE("BBM target in two dimensions") {
    auto u = sample_2d([](double x, double y) { return oracle::bump(std::hypot(x, y), 0.0, 1.0); },
                       -1.5, 1.5, -1.5, 1.5, 64, Smoothness::smooth);
    auto b = bbm_limit_check(u, 2.0, {0.99});
    const double g = std::pow(gradient_seminorm(u, 2.0), 2.0);
    CHECK(b.target == Approx(oracle::pi * 0.5 * g));
}

TEST_CASE("rearrangement of radial and indicator functions") {
    auto u = sample_1d([](double x) { return oracle::hat(x, 0.0, 1.0); }, -4.0, 4.0, 1024);
    auto r = rearrange_function(u);
    for (double s : {0.1, 0.5, 0.9}) CHECK(std::abs(level_measure(r.u, s) - level_measure(u, s)) <= u.h);
    auto ind = sample_1d([](double x) { return x >= 1.0 && x < 2.5 ? 1.0 : 0.0; }, -4.0, 4.0, 1024);
    auto ri = rearrange_function(ind);
    CHECK(ri.profile(0.7) == 1.0);
    CHECK(ri.profile(0.76) == 0.0);
    CHECK(ri.level_measure(0.5) == Approx(1.5));
}

TEST_CASE("rearranged two-bump keeps its norms") {
    auto u = sample_1d([](double x) { return oracle::hat(x, -1.5, 1.0) + 0.5 * oracle::hat(x, 1.5, 0.5); },
                       -4.0, 4.0, 1024);
    auto r = rearrange_function(u);
    for (double q : {1.0, 2.0, 4.0})
        CHECK(std::abs(std::pow(lp_norm(r.u, q), q) - std::pow(lp_norm(u, q), q)) <= u.h);
}

TEST_CASE("grid csv round trip") {
    auto u = sample_2d([](double x, double y) { return x * y; }, 0, 1, 0, 2, 8);
    std::stringstream ss;
    write_grid_csv(ss, u);
    auto v = read_grid_csv(ss);
    CHECK(v.d == 2);
    CHECK(v.n[1] == u.n[1]);
    for (std::size_t i = 0; i < u.values.size(); ++i) CHECK(v.values[i] == u.values[i]);
}

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <cmath>

#include "nlsob/verify.hpp"
#include "oracles.hpp"

using namespace nlsob;
using doctest::Approx;

namespace {

GridFunction grid(const std::function<double(double)>& f) { return sample_1d(f, -4.0, 4.0, 1024); }
GridFunction hat() { return grid([](double x) { return oracle::hat(x, 0, 1); }); }
GridFunction zero() { return grid([](double) { return 0.0; }); }

}  // namespace

TEST_CASE("report settles on margin and tolerance") {
    InequalityReport r;
    r.lhs = 1.0;
    r.rhs = 1.0 - 1e-7;
    r.tolerance = 1e-6;
    r.settle();
    CHECK(r.pass);
    r.tolerance = 1e-8;
    r.settle();
    CHECK_FALSE(r.pass);
    r.indeterminate = true;
    r.lhs = 0.0;
    r.settle();
    CHECK_FALSE(r.pass);
}

TEST_CASE("theta constant closed form") {
    const YoungFunction p32 = power_young(32.0, 4.0);
    const double theta = std::pow(2.0, -1.25);
    auto c = theta_constant(2.0, 2.0, 1.0, theta, p32);
    REQUIRE(c.ok);
    const double ref = 2.0 * std::pow(2.0 * (2.0 / 3.0) * 32.0 * std::pow(theta / 2.0, 4.0), -0.5);
    CHECK(c.value == Approx(ref));
    double prev = c.value;
    for (double t : {2.5, 3.0, 4.0}) {
        auto ct = theta_constant(t, 2.0, 1.0, theta, p32);
        CHECK(std::isfinite(ct.value));
        CHECK(ct.value != prev);
        prev = ct.value;
    }
}

TEST_CASE("GNS setup strategies") {
    auto f = prepare_gns(fractional_kernel(1, 2.0, 0.25), VerifyMode::assumption_a);
    REQUIRE(f.ok);
    CHECK(f.value.strategy == GnsStrategy::direct);
    CHECK(f.value.theta == Approx(std::pow(2.0, -1.25)).epsilon(1e-6));
    CHECK(f.value.kappa == 1.0);
    auto mx = prepare_gns(max_fractional_kernel(1, 2.0, 0.125, 0.25), VerifyMode::assumption_a);
    REQUIRE(mx.ok);
    CHECK(mx.value.strategy == GnsStrategy::per_component);
    CHECK(mx.value.c2 == Approx(2.0).epsilon(1e-6));
    auto mn = prepare_gns(min_fractional_kernel(1, 2.0, 0.125, 0.25), VerifyMode::assumption_a);
    REQUIRE(mn.ok);
    CHECK(mn.value.strategy == GnsStrategy::minorant);
    CHECK(mn.value.theta >= 0.5);
    auto mr2 = prepare_gns(min_fractional_kernel(1, 2.0, 0.125, 0.25), VerifyMode::main_result2);
    REQUIRE(mr2.ok);
    CHECK(mr2.value.kappa == 1.0);
    CHECK_FALSE(prepare_gns(ball_kernel(1, 2.0), VerifyMode::assumption_a).ok);
}

TEST_CASE("GNS on the examples") {
    const Kernel k = fractional_kernel(1, 2.0, 0.25);
    auto z = verify_gns(zero(), k, 2.0);
    CHECK(z.pass);
    CHECK(z.lhs == 0.0);
    auto h = verify_gns(hat(), k, 2.0);
    CHECK(h.pass);
    CHECK(h.margin() > 0);
    auto ind = verify_gns(grid([](double x) { return x >= 0 && x < 1 ? 1.0 : 0.0; }), k, 2.0);
    CHECK(ind.pass);
    auto bad = verify_gns(hat(), ball_kernel(1, 2.0), 2.0);
    CHECK(bad.indeterminate);
    CHECK_FALSE(bad.pass);
}

TEST_CASE("GNS in main-result2 mode") {
    auto r = verify_gns(hat(), min_fractional_kernel(1, 2.0, 0.125, 0.25), 2.0, VerifyMode::main_result2);
    CHECK(r.pass);
}

TEST_CASE("fractional GNS with the Brezis constant") {
    CHECK(brezis_constant(1, 2.0, 0.25) == Approx(std::pow(2.0, 1.25)));
    CHECK(verify_fractional_gns(zero(), 0.25, 2.0).pass);
    auto h = verify_fractional_gns(hat(), 0.25, 2.0);
    CHECK(h.pass);
    CHECK(h.constant == Approx(std::pow(2.0, 1.25)));
}

TEST_CASE("Poincare") {
    const Kernel k = fractional_kernel(1, 2.0, 0.25);
    const SetSpec om = interval_set(0.0, 1.0);
    auto c = verify_poincare(grid([](double) { return 3.0; }), om, k);
    CHECK(c.pass);
    CHECK(c.lhs == Approx(0.0).epsilon(1e-12));
    auto lin = verify_poincare(grid([](double x) { return x; }), om, k);
    CHECK(lin.constant == Approx(1.0));
    CHECK(lin.lhs * lin.lhs == Approx(1.0 / 12.0).epsilon(1e-3));
    CHECK(lin.pass);
}

TEST_CASE("Friedrichs") {
    const Kernel k = fractional_kernel(1, 2.0, 0.25);
    const SetSpec om = interval_set(0.0, 1.0);
    auto z = verify_friedrichs(zero(), om, k);
    CHECK(z.pass);
    CHECK(z.constant == Approx(std::pow(2.0 * std::pow(2.0, 2.5), -0.5)));
    CHECK(verify_friedrichs(grid([](double x) { return oracle::hat(x, 0.5, 0.5); }), om, k).pass);
}

TEST_CASE("inverse problem") {
    auto r = verify_inverse_problem(4.0, 32.0, 2.0, 1);
    CHECK(r.pass);
    auto eq = verify_inverse_problem(2.0, 32.0, 2.0, 1);
    CHECK(eq.indeterminate);
    CHECK(eq.notes.rfind("refused", 0) == 0);
    // d = 2, p = 1: 1/q = 1/p - 1/d at q = 2
    auto edge = verify_inverse_problem(2.0, 1.0, 1.0, 2);
    CHECK(edge.indeterminate);
    CHECK(edge.notes.rfind("refused", 0) == 0);
}

TEST_CASE("proof chain on the hat") {
    auto s = prepare_gns(fractional_kernel(1, 2.0, 0.25), VerifyMode::assumption_a);
    REQUIRE(s.ok);
    auto c = proof_chain(hat(), s.value, 2.0);
    CHECK(c.lower_ok);
    CHECK(c.upper_ok);
    CHECK(c.lower <= c.seminorm);
    CHECK(c.norm_p <= c.upper);
}

// Acceptance binary: one PASS/FAIL line per criterion.

#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "nlsob/fields.hpp"
#include "nlsob/kernels.hpp"
#include "nlsob/levelset.hpp"
#include "nlsob/orlicz.hpp"
#include "nlsob/verify.hpp"
#include "nlsob/young.hpp"
#include "oracles.hpp"

using namespace nlsob;

namespace {

struct Outcome {
    bool pass = true;
    std::ostringstream detail;
    void require(bool ok, const std::string& what) {
        if (!ok) {
            pass = false;
            detail << " [failed: " << what << "]";
        }
    }
};

int failures = 0;

void criterion(int id, const char* name, double limit_s, const std::function<void(Outcome&)>& body) {
    Outcome o;
    o.detail.precision(8);
    const auto t0 = std::chrono::steady_clock::now();
    try {
        body(o);
    } catch (const std::exception& e) {
        o.pass = false;
        o.detail << " [exception: " << e.what() << "]";
    }
    const double took =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    o.require(took < limit_s, "runtime");
    if (!o.pass) ++failures;
    std::printf("%s criterion %d %s:%s; %.2f s (limit %.0f s)\n", o.pass ? "PASS" : "FAIL", id,
                name, o.detail.str().c_str(), took, limit_s);
    std::fflush(stdout);
}

constexpr double kLo = -4.0, kHi = 4.0;
constexpr int kRes = 1024;

struct Sample {
    std::string name;
    std::function<double(double)> f;
    Smoothness smooth;
};

std::vector<Sample> corpus() {
    return {
        {"hat", [](double x) { return oracle::hat(x, 0.0, 1.0); }, Smoothness::piecewise_linear},
        {"indicator", [](double x) { return x >= -0.5 && x < 0.5 ? 1.0 : 0.0; },
         Smoothness::piecewise_linear},
        {"bump", [](double x) { return oracle::bump(x, 0.0, 1.0); }, Smoothness::smooth},
        {"two-bump",
         [](double x) { return oracle::hat(x, -1.5, 1.0) + 0.5 * oracle::hat(x, 1.5, 0.5); },
         Smoothness::piecewise_linear},
    };
}

GridFunction sample(const Sample& s, double lambda = 1.0) {
    const double grow = std::max(1.0, 1.0 / lambda);
    return sample_1d([&](double x) { return s.f(lambda * x); }, kLo * grow, kHi * grow,
                     static_cast<int>(kRes * grow), s.smooth);
}

struct NamedSetup {
    std::string name;
    GnsSetup setup;
};

std::vector<NamedSetup> corpus_kernels(Outcome& o) {
    std::vector<std::pair<std::string, Kernel>> ks = {
        {"fractional s=1/8", fractional_kernel(1, 2.0, 0.125)},
        {"fractional s=1/4", fractional_kernel(1, 2.0, 0.25)},
        {"max-fractional", max_fractional_kernel(1, 2.0, 0.125, 0.25)},
        {"min-fractional", min_fractional_kernel(1, 2.0, 0.125, 0.25)},
    };
    std::vector<NamedSetup> out;
    for (auto& [name, k] : ks) {
        auto s = prepare_gns(k, VerifyMode::assumption_a);
        o.require(s.ok, name + " setup: " + s.reason);
        if (s.ok) out.push_back({name, s.value});
    }
    return out;
}

}  // namespace

int main() {
    criterion(1, "critical-function reproduction", 1.0, [](Outcome& o) {
        auto w = w_profile(fractional_kernel(1, 2.0, 0.25));
        o.require(w.ok, "w profile");
        auto phi = critical_young(w.value);
        o.require(phi.ok, "critical_young");
        auto [e, c] = fit_power(phi.value.ts(), phi.value.values());
        const double c_ref = oracle::critical_coef(1, 2.0, 0.25);
        o.detail << " exponent " << e << ", coefficient " << c << " (closed form " << c_ref << ")";
        o.require(std::abs(e - 4.0) <= 1e-3, "exponent 4 +- 0.001");
        o.require(std::abs(c - 32.0) <= 0.1, "coefficient 32 +- 0.1");
        o.require(std::abs(c_ref - 32.0) < 1e-9, "closed-form coefficient");
    });

    criterion(2, "nu-sharp closed form", 1.0, [](Outcome& o) {
        const Kernel k = fractional_kernel(1, 2.0, 0.25);
        double worst = 0.0;
        for (double m : {0.5, 1.0, 2.0, 8.0}) {
            const double ref = oracle::gamma_s(1, 2.0, 0.25) * std::pow(m, -0.5);
            const double tail = oracle::fractional_tail(1, 2.0, 0.25, oracle::eta(m, 1));
            o.require(std::abs(ref / tail - 1.0) < 1e-12, "closed forms agree");
            worst = std::max(worst, std::abs(nu_sharp(k, m) / ref - 1.0));
        }
        const double at2 = nu_sharp(k, 2.0);
        o.detail << " max rel error " << worst << ", nu#(2) = " << at2;
        o.require(worst <= 1e-6, "relative error <= 1e-6");
        o.require(std::abs(at2 - 4.0) <= 4e-6, "nu#(2) = 4");
    });

    criterion(3, "indicator-norm exactness", 1.0, [](Outcome& o) {
        struct Case {
            YoungFunction phi;
            double c, q;
        };
        auto crit = [](double s) {
            return critical_young(w_profile(fractional_kernel(1, 2.0, s)).value).value;
        };
        std::vector<Case> cases = {
            {crit(0.25), 32.0, 4.0},
            {crit(0.125), oracle::critical_coef(1, 2.0, 0.125), oracle::pstar(1, 2.0, 0.125)},
            {power_young(1.0, 2.0), 1.0, 2.0},
            {power_young(2.5, 3.0), 2.5, 3.0},
            {conjugate(power_young(1.0, 2.0)), 0.25, 2.0},
        };
        double worst = 0.0;
        int pairs = 0;
        for (const auto& cs : cases)
            for (double m : {0.5, 2.0}) {
                auto u = sample_1d([&](double x) { return x >= 0.0 && x < m ? 1.0 : 0.0; }, kLo,
                                   kHi, kRes);
                auto n = luxemburg_norm(u, cs.phi);
                o.require(n.ok, "norm computed");
                const double ref = oracle::power_indicator_norm(cs.c, cs.q, m);
                worst = std::max(worst, std::abs(n.value.value / ref - 1.0));
                ++pairs;
            }
        o.detail << " " << pairs << " pairs, max rel error " << worst;
        o.require(pairs == 10, "10 pairs");
        o.require(worst <= 1e-6, "relative error <= 1e-6");
    });

    criterion(4, "BBM limit", 30.0, [](Outcome& o) {
        auto u = sample_1d([](double x) { return oracle::hat(x, 0.0, 1.0); }, -2.0, 2.0, kRes);
        const double target = 2.0;  // |S^0|/p * K_{1,2} * int |u'|^2 = 1 * 1 * 2
        auto b = bbm_limit_check(u, 2.0, {0.90, 0.95, 0.99});
        o.require(std::abs(b.target - target) < 1e-9, "target 2");
        bool monotone = true;
        for (std::size_t i = 0; i < b.weighted.size(); ++i) {
            const double r = b.weighted[i] / target;
            o.detail << " s=" << b.s[i] << ": " << b.weighted[i];
            if (i > 0) monotone = monotone && std::abs(r - 1.0) < std::abs(b.weighted[i - 1] / target - 1.0);
        }
        o.require(std::abs(b.weighted.back() / target - 1.0) <= 0.1, "within 10% at s=0.99");
        o.require(monotone, "ratios monotone toward 1");
    });

    criterion(5, "end-to-end GNS on the golden corpus", 300.0, [](Outcome& o) {
        auto setups = corpus_kernels(o);
        for (const auto& s : setups) {
            if (s.name == "max-fractional")
                o.require(s.setup.strategy == GnsStrategy::per_component, "max uses per-component");
            if (s.name == "min-fractional")
                o.require(s.setup.strategy == GnsStrategy::minorant, "min uses minorant");
        }
        int n = 0, passed = 0;
        double worst = kInf;
        for (const auto& f : corpus()) {
            const auto u = sample(f);
            for (const auto& s : setups)
                for (double t : {2.0, 3.0}) {
                    auto r = verify_gns(u, s.setup, t);
                    ++n;
                    passed += r.pass;
                    worst = std::min(worst, r.margin() / r.rhs);
                    if (!r.pass) o.require(false, f.name + " x " + s.name);
                }
        }
        o.detail << " " << passed << "/" << n << " pass, smallest relative margin " << worst;
        o.require(n == 32, "32 cases");
    });

    criterion(6, "fractional GNS with the Brezis constant", 120.0, [](Outcome& o) {
        for (double s : {0.125, 0.25})
            o.require(std::abs(brezis_constant(1, 2.0, s) / oracle::brezis(1, 2.0, s) - 1.0) < 1e-12,
                      "constant closed form");
        int n = 0, passed = 0;
        double spread = 0.0;
        for (const auto& f : corpus())
            for (double s : {0.125, 0.25}) {
                std::vector<double> rel;
                for (double lambda : {0.5, 1.0, 2.0}) {
                    auto r = verify_fractional_gns(sample(f, lambda), s, 2.0);
                    ++n;
                    passed += r.pass;
                    if (!r.pass) o.require(false, f.name);
                    rel.push_back(r.margin() / r.rhs);
                }
                for (double v : rel) spread = std::max(spread, std::abs(v - rel[1]));
            }
        o.detail << " " << passed << "/" << n << " pass, dilation spread " << spread;
        o.require(spread <= 0.01, "dilation spread <= 1%");
    });

    criterion(7, "Poincare and Friedrichs on (0,1)", 60.0, [](Outcome& o) {
        const Kernel k = fractional_kernel(1, 2.0, 0.25);
        const SetSpec omega = interval_set(0.0, 1.0);
        const double fried_ref = std::pow(2.0 * oracle::gamma_s(1, 2.0, 0.25), -0.5);
        auto lin = sample_1d([](double x) { return x; }, kLo, kHi, kRes);
        auto p = verify_poincare(lin, omega, k);
        o.detail << " Poincare C=" << p.constant << ", lhs^2=" << p.lhs * p.lhs;
        o.require(p.pass, "Poincare on u=x");
        o.require(std::abs(p.constant - 1.0) < 1e-9, "Poincare constant 1");
        o.require(std::abs(p.lhs * p.lhs - 1.0 / 12.0) <= 1e-4, "lhs^2 = 1/12");
        for (auto f : {std::function<double(double)>([](double x) { return oracle::hat(x, 0.5, 0.5); }),
                       std::function<double(double)>([](double x) {
                           return x >= 0 && x <= 1 ? std::sin(oracle::pi * x) : 0.0;
                       })}) {
            auto u = sample_1d(f, kLo, kHi, kRes);
            auto pr = verify_poincare(u, omega, k);
            auto fr = verify_friedrichs(u, omega, k);
            o.require(pr.pass, "Poincare");
            o.require(fr.pass, "Friedrichs");
            o.require(std::abs(fr.constant - fried_ref) < 1e-9, "Friedrichs constant");
            o.detail << " Friedrichs C=" << fr.constant << " margin " << fr.margin();
        }
        o.require(std::abs(fried_ref - 0.29730) < 5e-6, "Friedrichs constant ~0.29730");
    });

    criterion(8, "inverse problem", 5.0, [](Outcome& o) {
        auto r = verify_inverse_problem(4.0, 32.0, 2.0, 1);
        double e = 0, c = 0;
        for (const auto& [k, v] : r.extra) {
            if (k == "exponent") e = v;
            if (k == "coefficient") c = v;
        }
        o.detail << " exponent " << e << ", coefficient " << c;
        o.require(std::abs(e + 1.5) <= 1e-4, "exponent -1.5 +- 1e-4");
        o.require(std::abs(c - 1.0) <= 1e-3, "coefficient 1 +- 1e-3");
        auto k = kernel_from_young(power_young(32.0, 4.0), 2.0, 1);
        o.require(k.ok, "kernel_from_young");
        auto w = w_profile(k.value);
        o.require(w.ok, "w profile");
        auto phi = critical_young(w.value);
        o.require(phi.ok, "critical_young");
        double worst = 0.0;
        for (int i = 0; i <= 40; ++i) {
            const double t = std::pow(10.0, -1.0 + i / 20.0);
            worst = std::max(worst, std::abs(phi.value(t) / (32.0 * std::pow(t, 4.0)) - 1.0));
        }
        o.detail << ", round trip rel error " << worst;
        o.require(worst <= 1e-3, "round trip <= 1e-3");
    });

    criterion(9, "proof-chain certificates and lemma checks", 120.0, [](Outcome& o) {
        auto setups = corpus_kernels(o);
        int chains = 0;
        for (const auto& f : corpus()) {
            const auto u = sample(f);
            for (const auto& s : setups)
                for (double t : {2.0, 3.0}) {
                    auto c = proof_chain(u, s.setup, t);
                    ++chains;
                    const double tol = std::max(1e-6, 2.0 * c.seminorm_error);
                    o.require(c.lower <= c.seminorm + tol, "lower bound " + f.name + " " + s.name);
                    o.require(c.norm_p <= c.upper * (1.0 + 1e-9) + 1e-12,
                              "upper bound " + f.name + " " + s.name);
                }
        }
        std::mt19937_64 rng(20240611);
        std::uniform_int_distribution<int> k0d(-5, 5), lend(1, 12);
        std::uniform_real_distribution<double> start(-3.0, 3.0), drop(0.05, 1.0), qd(1.0, 4.0),
            Td(1.05, 8.0);
        const YoungFunction phi = power_young(32.0, 4.0);
        const double theta = std::pow(32.0, -0.25);
        int gene = 0, young = 0, exact = 0;
        for (int i = 0; i < 100; ++i) {
            LemmaSequence a;
            a.k0 = k0d(rng);
            a.left = std::exp(start(rng));
            double v = a.left;
            for (int j = lend(rng); j > 0; --j) a.values.push_back(v *= drop(rng));
            const double q = qd(rng), T = Td(rng);
            gene += lemma_gene_convex_check(a, phi, 2.0, theta, T).pass;
            young += lemma_young_discrete_check(a, q, T).pass;
            auto one = lemma_young_discrete_check(a, 1.0, T);
            double direct = 0.0;
            for (int k = a.k0 - 400; k < a.k0 + 20; ++k) direct += a.at(k) * std::pow(T, k);
            exact += std::abs(one.lhs - one.rhs) <= 1e-12 * one.rhs &&
                     std::abs(one.lhs / direct - 1.0) <= 1e-10;
        }
        o.detail << " " << chains << " chains; lemmas: gene-convex " << gene << "/100, young-discrete "
                 << young << "/100, q=1 equality " << exact << "/100";
        o.require(gene == 100 && young == 100 && exact == 100, "all lemma checks");
    });

    criterion(10, "rearrangement properties", 60.0, [](Outcome& o) {
        std::mt19937_64 rng(7);
        int level_ok = 0, norm_ok = 0;
        for (int i = 0; i < 10; ++i) {
            auto u = sample_1d(oracle::random_pl(rng, 9), kLo, kHi, kRes);
            auto r = rearrange_function(u);
            const double top = sup_norm(u);
            bool levels = true;
            for (int j = 0; j < 20; ++j) {
                const double s = top * (j + 0.5) / 20.0;
                levels = levels && std::abs(level_measure(r.u, s) - level_measure(u, s)) <= u.cell() * (1 + 1e-12);
            }
            level_ok += levels;
            bool norms = true;
            for (double q : {1.0, 2.0, 4.0}) {
                const double a = std::pow(lp_norm(u, q), q), b = std::pow(lp_norm(r.u, q), q);
                norms = norms && std::abs(a - b) <= std::pow(top, q) * u.cell() * (1 + 1e-9);
            }
            norm_ok += norms;
        }
        int k_level = 0, k_norm = 0;
        std::uniform_real_distribution<double> val(0.1, 5.0);
        for (int i = 0; i < 5; ++i) {
            std::vector<double> r, v;
            for (int j = 0; j < 12; ++j) {
                r.push_back(0.1 + 0.15 * j);
                v.push_back(val(rng));
            }
            const double support = 2.0;
            const Kernel k = tabulated_kernel(1, 2.0, r, v, 0.0, 0.0, support);
            const Kernel ks = rearrange_kernel(k);
            const int n = 200000;
            const double cell = 2.0 * support * (std::exp(std::log(support / 0.1) / 4095.0) - 1.0);
            bool levels = true;
            for (int j = 0; j < 20; ++j) {
                const double s = 0.1 + 4.9 * (j + 0.5) / 20.0;
                const double ref = 2.0 * oracle::midpoint([&](double x) { return k(x) > s ? 1.0 : 0.0; },
                                                          0.0, support, n);
                levels = levels && std::abs(kernel_level_measure(ks, s) - ref) <= 2.0 * cell;
            }
            k_level += levels;
            bool norms = true;
            for (double q : {1.0, 2.0, 4.0}) {
                auto lq = [&](const Kernel& kk) {
                    return 2.0 * oracle::midpoint([&](double x) { return std::pow(kk(x), q); }, 0.0,
                                                  support, n);
                };
                const double a = lq(k), b = lq(ks);
                norms = norms && std::abs(b / a - 1.0) <= 1e-3;
            }
            k_norm += norms;
        }
        o.detail << " functions: levels " << level_ok << "/10, norms " << norm_ok
                 << "/10; kernels: levels " << k_level << "/5, norms " << k_norm << "/5";
        o.require(level_ok == 10 && norm_ok == 10, "functions");
        o.require(k_level == 5 && k_norm == 5, "kernels");
    });

    std::printf("%s: %d criteria failed\n", failures ? "FAIL" : "PASS", failures);
    return failures ? 1 : 0;
}

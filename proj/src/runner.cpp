#include "nlsob/runner.hpp"

#include <atomic>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iomanip>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"

namespace nlsob {

namespace fs = std::filesystem;
using ojson = nlohmann::ordered_json;

namespace {

ojson num(double v) { return std::isfinite(v) ? ojson(v) : ojson(nullptr); }

std::string fmt(double v) {
    std::ostringstream os;
    os << std::setprecision(10) << v;
    return os.str();
}

}  // namespace

std::string to_json_line(const InequalityReport& r) {
    ojson j;
    j["id"] = r.id;
    ojson params = ojson::object();
    for (const auto& [k, v] : r.params) params[k] = v;
    j["params"] = params;
    j["lhs"] = num(r.lhs);
    j["rhs"] = num(r.rhs);
    j["constant"] = num(r.constant);
    j["margin"] = num(r.margin());
    j["tolerance"] = num(r.tolerance);
    j["pass"] = r.pass;
    j["indeterminate"] = r.indeterminate;
    j["notes"] = r.notes;
    ojson extra = ojson::object();
    for (const auto& [k, v] : r.extra) extra[k] = num(v);
    j["extra"] = extra;
    return j.dump();
}

void write_summary_csv(std::ostream& os, const std::vector<InequalityReport>& reports) {
    os << std::setprecision(12);
    os << "id,kernel,function,t,lhs,rhs,margin,pass\n";
    for (const auto& r : reports) {
        std::string kernel, function, t;
        for (const auto& [k, v] : r.params) {
            if (k == "kernel_name") kernel = v;
            if (k == "function") function = v;
            if (k == "t") t = v;
        }
        os << r.id << "," << kernel << "," << function << "," << t << "," << r.lhs << "," << r.rhs
           << "," << r.margin() << "," << (r.pass ? "true" : "false") << "\n";
    }
}

namespace {

bool suite_on(const ExperimentConfig& cfg, const std::string& s) {
    return cfg.suite == "all" || cfg.suite == s;
}

Section dilate_section(Section s, double lambda) {
    for (const char* key : {"center", "width", "lo", "hi"}) {
        auto it = s.kv.find(key);
        if (it != s.kv.end()) it->second.first = fmt(std::stod(it->second.first) / lambda);
    }
    if (!s.has("width") && (s.str("type") == "hat" || s.str("type") == "bump" ||
                            s.str("type") == "two-bump"))
        s.kv["width"] = {fmt(1.0 / lambda), s.line};
    if (s.str("type") != "hat" && s.str("type") != "bump" && s.str("type") != "two-bump") {
        if (!s.has("lo")) s.kv["lo"] = {fmt(0.0), s.line};
        if (!s.has("hi")) s.kv["hi"] = {fmt(1.0 / lambda), s.line};
    }
    if (s.str("type") == "linear") s.kv["slope"] = {fmt(s.num("slope", 1.0) * lambda), s.line};
    return s;
}

bool bbm_admissible(const Section& s) {
    const std::string t = s.str("type");
    return t == "hat" || t == "bump" || t == "two-bump" || t == "sine" || s.str("smooth") == "true";
}

bool supported_in(const GridFunction& u, const SetSpec& omega) {
    for (int i = 0; i < u.nodes(0); ++i) {
        const double x[2] = {u.x(i), 0.0};
        if (u.values[i] != 0.0 && !omega.contains(x)) return false;
    }
    return true;
}

InequalityReport lemma_report(const std::string& id, const std::vector<LemmaReport>& reps,
                              bool equality) {
    InequalityReport r;
    r.id = id;
    double worst = 0.0;
    int vacuous = 0;
    for (const auto& l : reps) {
        if (l.vacuous) {
            ++vacuous;
            continue;
        }
        const double scale = std::max(std::abs(l.rhs), 1e-300);
        const double v = equality ? std::abs(l.lhs - l.rhs) / scale : (l.lhs - l.rhs) / scale;
        worst = std::max(worst, v);
    }
    r.lhs = worst;
    r.rhs = equality ? 1e-12 : 0.0;
    r.tolerance = equality ? 0.0 : 1e-12;
    r.constant = static_cast<double>(reps.size());
    r.extra.emplace_back("sequences", static_cast<double>(reps.size()));
    r.extra.emplace_back("vacuous", vacuous);
    r.notes = equality ? "max relative |lhs - rhs|" : "max relative excess of lhs over rhs";
    r.settle();
    return r;
}

LemmaSequence random_sequence(std::mt19937_64& rng) {
    std::uniform_int_distribution<int> k0(-5, 5), len(1, 12);
    std::uniform_real_distribution<double> start(-3.0, 3.0), drop(0.05, 1.0);
    LemmaSequence s;
    s.k0 = k0(rng);
    s.left = std::exp(start(rng));
    double v = s.left;
    const int n = len(rng);
    for (int i = 0; i < n; ++i) {
        v *= drop(rng);
        s.values.push_back(v);
    }
    return s;
}

}  // namespace

RunResult run_suites(const ExperimentConfig& cfg) {
    RunResult res;
    const auto kernels = build_kernels(cfg);
    const auto functions = build_functions(cfg);
    std::vector<Checked<GnsSetup>> setups;
    for (const auto& k : kernels) setups.push_back(prepare_gns(k.kernel, cfg.mode));

    std::vector<std::function<std::vector<InequalityReport>()>> tasks;
    auto tag = [](InequalityReport r, const std::string& kn, const std::string& fn) {
        if (!kn.empty()) r.params.emplace_back("kernel_name", kn);
        if (!fn.empty()) r.params.emplace_back("function", fn);
        return r;
    };

    if (suite_on(cfg, "gns")) {
        for (std::size_t ki = 0; ki < kernels.size(); ++ki)
            for (std::size_t fi = 0; fi < functions.size(); ++fi)
                for (double t : cfg.ts)
                    tasks.push_back([&, ki, fi, t] {
                        const auto& kn = kernels[ki];
                        const auto& f = functions[fi];
                        std::vector<InequalityReport> out;
                        if (!setups[ki].ok) {
                            out.push_back(tag(verify_gns(f.u, kn.kernel, t, cfg.mode), kn.name,
                                              f.name));
                            return out;
                        }
                        const GnsSetup& s = setups[ki].value;
                        out.push_back(tag(verify_gns(f.u, s, t), kn.name, f.name));
                        const ChainReport c = proof_chain(f.u, s, t);
                        InequalityReport lo;
                        lo.id = "chain-lower";
                        lo.params = out.front().params;
                        lo.lhs = c.lower;
                        lo.rhs = c.seminorm;
                        lo.tolerance = std::max(1e-6, 2.0 * c.seminorm_error);
                        lo.settle();
                        InequalityReport up;
                        up.id = "chain-upper";
                        up.params = out.front().params;
                        up.lhs = c.norm_p;
                        up.rhs = c.upper;
                        up.tolerance = std::max(1e-6, 1e-9 * c.norm_p);
                        up.settle();
                        out.push_back(lo);
                        out.push_back(up);
                        return out;
                    });
    }

    if (suite_on(cfg, "fractional-gns")) {
        for (std::size_t ki = 0; ki < kernels.size(); ++ki) {
            if (kernels[ki].s == 0.0) continue;
            for (std::size_t fi = 0; fi < functions.size(); ++fi)
                tasks.push_back([&, ki, fi] {
                    const double s = kernels[ki].s;
                    std::vector<InequalityReport> out;
                    out.push_back(tag(verify_fractional_gns(functions[fi].u, s, cfg.p),
                                      kernels[ki].name, functions[fi].name));
                    const Section& sec = cfg.functions[fi];
                    if (sec.str("type") == "csv") return out;
                    std::vector<double> rel;
                    for (double lambda : {0.5, 1.0, 2.0}) {
                        const double grow = std::max(1.0, 1.0 / lambda);
                        const auto g = make_function(
                            dilate_section(sec, lambda), cfg, cfg.box_lo * grow,
                            cfg.box_hi * grow, static_cast<int>(cfg.resolution * grow));
                        const auto r = verify_fractional_gns(g.u, s, cfg.p);
                        rel.push_back(r.rhs > 0 ? r.margin() / r.rhs : 0.0);
                    }
                    InequalityReport dil;
                    dil.id = "fractional-gns-dilation";
                    dil.params = out.front().params;
                    double spread = 0.0;
                    for (double v : rel) spread = std::max(spread, std::abs(v - rel[1]));
                    dil.lhs = spread;
                    dil.rhs = 0.01;
                    dil.tolerance = 0.0;
                    dil.notes = "max |margin/rhs - margin/rhs at lambda=1| over lambda in {1/2,2}";
                    dil.settle();
                    out.push_back(dil);
                    return out;
                });
        }
    }

    const SetSpec omega = interval_set(cfg.omega_lo, cfg.omega_hi);
    if (cfg.d == 1 && (suite_on(cfg, "poincare") || suite_on(cfg, "friedrichs"))) {
        for (std::size_t ki = 0; ki < kernels.size(); ++ki)
            for (std::size_t fi = 0; fi < functions.size(); ++fi)
                tasks.push_back([&, ki, fi] {
                    std::vector<InequalityReport> out;
                    const auto& k = kernels[ki];
                    const auto& f = functions[fi];
                    if (suite_on(cfg, "poincare"))
                        out.push_back(tag(verify_poincare(f.u, omega, k.kernel), k.name, f.name));
                    if (suite_on(cfg, "friedrichs") && supported_in(f.u, omega))
                        out.push_back(
                            tag(verify_friedrichs(f.u, omega, k.kernel), k.name, f.name));
                    return out;
                });
    }

    if (suite_on(cfg, "bbm")) {
        for (std::size_t fi = 0; fi < functions.size(); ++fi) {
            if (!bbm_admissible(cfg.functions[fi])) continue;
            tasks.push_back([&, fi] {
                const auto g = make_function(cfg.functions[fi], cfg, cfg.bbm_lo, cfg.bbm_hi,
                                             cfg.resolution);
                InequalityReport r;
                r.id = "bbm";
                r.params.emplace_back("p", fmt(cfg.p));
                r.params.emplace_back("function", g.name);
                const auto& v = g.u.values;
                if (v.front() != 0.0 || v.back() != 0.0) {
                    r.indeterminate = true;
                    r.notes = "support leaves the bbm box";
                    r.settle();
                    return std::vector<InequalityReport>{r};
                }
                const BbmReport b = bbm_limit_check(g.u, cfg.p, cfg.bbm_s);
                r.lhs = std::abs(b.ratio.back() - 1.0);
                r.rhs = 0.1;
                r.tolerance = 0.0;
                r.constant = b.target;
                for (std::size_t i = 0; i < b.s.size(); ++i)
                    r.extra.emplace_back("ratio_s" + fmt(b.s[i]), b.ratio[i]);
                r.indeterminate = !b.monotone;
                if (!b.monotone) r.notes = "ratios not monotone toward 1";
                r.settle();
                return std::vector<InequalityReport>{r};
            });
        }
    }

    if (suite_on(cfg, "lemmas")) {
        tasks.push_back([&] {
            std::mt19937_64 rng(cfg.seed);
            std::uniform_real_distribution<double> qd(1.0, 4.0), Td(1.05, 8.0);
            std::vector<LemmaReport> yd, yd1, gc;
            for (int i = 0; i < cfg.lemma_count; ++i) {
                const LemmaSequence a = random_sequence(rng);
                const double q = qd(rng), T = Td(rng);
                yd.push_back(lemma_young_discrete_check(a, q, T));
                yd1.push_back(lemma_young_discrete_check(a, 1.0, T));
                for (const auto& s : setups) {
                    if (!s.ok || s.value.strategy == GnsStrategy::per_component) continue;
                    gc.push_back(lemma_gene_convex_check(a, s.value.phi, cfg.p, s.value.theta, T));
                }
            }
            return std::vector<InequalityReport>{lemma_report("lemma-young-discrete", yd, false),
                                                 lemma_report("lemma-young-discrete-q1", yd1, true),
                                                 lemma_report("lemma-gene-convex", gc, false)};
        });
    }

    if (suite_on(cfg, "inverse")) {
        tasks.push_back([&] {
            return std::vector<InequalityReport>{
                verify_inverse_problem(cfg.inverse_q, cfg.inverse_c, cfg.p, cfg.d)};
        });
    }

    std::vector<std::vector<InequalityReport>> results(tasks.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < tasks.size(); i = next++) results[i] = tasks[i]();
    };
    std::vector<std::thread> pool;
    const int nw = std::max(1, std::min<int>(cfg.workers, static_cast<int>(tasks.size())));
    for (int i = 1; i < nw; ++i) pool.emplace_back(worker);
    worker();
    for (auto& th : pool) th.join();

    for (auto& group : results)
        for (auto& r : group) {
            if (cfg.tolerance > r.tolerance) {
                r.tolerance = cfg.tolerance;
                r.settle();
            }
            res.all_pass = res.all_pass && r.pass;
            if (res.refusal.empty() && r.indeterminate && r.notes.rfind("refused", 0) == 0)
                res.refusal = r.id + ": " + r.notes;
            res.reports.push_back(std::move(r));
        }
    return res;
}

void write_artifacts(const ExperimentConfig& cfg, const RunResult& res) {
    const fs::path out = cfg.out;
    fs::create_directories(out / "curves");
    {
        std::ofstream f(out / "reports.jsonl");
        for (const auto& r : res.reports) f << to_json_line(r) << "\n";
    }
    {
        std::ofstream f(out / "summary.csv");
        write_summary_csv(f, res.reports);
    }
    for (const auto& k : build_kernels(cfg)) {
        auto w = w_profile(k.kernel, cfg.mode == VerifyMode::main_result2 ? WMode::sharp
                                                                          : WMode::tail);
        if (!w.ok) continue;
        {
            std::ofstream f(out / "curves" / ("w_" + k.name + ".csv"));
            f << std::setprecision(17) << "r,w\n";
            auto r = w.value.w.xs();
            auto y = w.value.w.ys();
            for (std::size_t i = 0; i < r.size(); ++i) f << r[i] << "," << y[i] << "\n";
        }
        auto phi = critical_young(w.value);
        if (phi.ok) {
            std::ofstream f(out / "curves" / ("phi_" + k.name + ".csv"));
            write_young_csv(f, phi.value);
        }
    }
    std::ofstream f(out / "curves" / "margins.csv");
    f << std::setprecision(12) << "id,kernel,function,t,margin,rhs\n";
    for (const auto& r : res.reports) {
        if (r.id != "gns") continue;
        std::string kn, fn, t;
        for (const auto& [k, v] : r.params) {
            if (k == "kernel_name") kn = v;
            if (k == "function") fn = v;
            if (k == "t") t = v;
        }
        f << r.id << "," << kn << "," << fn << "," << t << "," << r.margin() << "," << r.rhs
          << "\n";
    }
}

std::string describe_kernel(const NamedKernel& nk) {
    std::ostringstream os;
    os << std::setprecision(6);
    const Kernel& k = nk.kernel;
    os << "kernel " << nk.name << " (" << k.tag << ", d=" << k.d << ", p=" << k.p << ")\n";
    const auto levy = levy_modular(k);
    if (levy.finite)
        os << "  p-Levy: yes, modular " << levy.value << "\n";
    else
        os << "  p-Levy: no (" << levy.reason << ")\n";
    const auto kap = almost_decreasing_kappa(k);
    if (kap.ok)
        os << "  kappa: " << kap.value << "\n";
    else
        os << "  kappa: fails (" << kap.reason << ")\n";
    const auto w = w_profile(k);
    if (!w.ok) {
        os << "  w saturates; phi undefined beyond r* = "
           << (w.witness.empty() ? kInf : w.witness.front()) << " (" << w.reason << ")\n";
        return os.str();
    }
    const auto phi = critical_young(w.value);
    if (!phi.ok) {
        os << "  phi: " << phi.reason << "\n";
        return os.str();
    }
    const auto& f = phi.value;
    auto t = f.ts();
    auto y = f.values();
    const auto [e, c] = fit_power(t, y);
    os << "  phi(t) fit: " << c << " t^" << e << "\n";
    os << "  phi(" << t.front() << ") = " << y.front() << ", phi(" << t.back() << ") = "
       << y.back() << "\n";
    const bool conv = check_convexity_phi_p(f, k.p).ok;
    os << "  phi_p convex: " << (conv ? "yes" : "no") << "\n";
    if (!conv) {
        const auto m = convex_minorant(f);
        const auto th = growth_theta(m);
        os << "  phi_p not convex; minorant mode, theta(phi_min) = "
           << (th.ok ? fmt(th.value) : th.reason) << "\n";
    } else {
        const auto th = growth_theta(f);
        if (th.ok) {
            os << "  theta: " << th.value << "\n";
        } else {
            os << "  growth condition fails; use per-component verification"
               << " (max-combination mode)";
            if (th.witness.size() == 2)
                os << ", witness s=" << th.witness[0] << " t=" << th.witness[1];
            os << "\n";
        }
    }
    const auto rates = asymptotic_rates(f, k);
    os << "  N-function: " << (rates.n_function ? "yes" : "no")
       << ", phi_p N-function: " << (rates.n_function_p ? "yes" : "no") << "\n";
    os << "  phi(t)/t^p at ends: " << rates.ratio_low << " .. " << rates.ratio_high;
    if (rates.integrable) os << " (int nu = " << rates.l1_norm << ")";
    os << "\n";
    return os.str();
}

}  // namespace nlsob

#include <cmath>
#include <fstream>
#include <iomanip>
#include <iostream>
#include <optional>
#include <sstream>

#include "CLI11.hpp"
#include "nlsob/config.hpp"
#include "nlsob/orlicz.hpp"
#include "nlsob/runner.hpp"
#include "nlsob/young.hpp"

using namespace nlsob;

namespace {

struct Common {
    std::string config;
    std::vector<std::string> kernels;
    std::vector<std::string> functions;
    std::optional<std::string> out, suite, mode;
    std::optional<int> resolution, workers, d;
    std::optional<double> tolerance, p;
};

void add_common(CLI::App* app, Common& c) {
    app->add_option("--config", c.config, "experiment config file");
    app->add_option("--kernel", c.kernels, "inline kernel spec, e.g. type=fractional,s=0.25");
    app->add_option("--function", c.functions, "inline function spec, e.g. type=hat,width=1");
    app->add_option("--out", c.out, "output directory");
    app->add_option("--suite", c.suite, "gns|fractional-gns|poincare|friedrichs|bbm|lemmas|inverse|all");
    app->add_option("--mode", c.mode, "a|mr2");
    app->add_option("--resolution", c.resolution, "grid resolution (power of two)");
    app->add_option("--tolerance", c.tolerance, "floor on report tolerances");
    app->add_option("--workers", c.workers, "worker threads");
    app->add_option("-d", c.d, "dimension");
    app->add_option("-p", c.p, "integrability exponent");
}

void set(Section& g, const std::string& key, const std::string& v) { g.kv[key] = {v, 0}; }

std::string str(double v) {
    std::ostringstream os;
    os << std::setprecision(17) << v;
    return os.str();
}

ExperimentConfig assemble(const Common& c) {
    ExperimentConfig cfg;
    if (!c.config.empty()) {
        std::ifstream in(c.config);
        if (!in) throw ConfigError(0, "config", "cannot open " + c.config);
        auto dir = std::filesystem::path(c.config).parent_path();
        cfg = parse_config(in, dir.empty() ? "." : dir.string());
    } else {
        cfg.global.kind = "global";
    }
    for (const auto& k : c.kernels) cfg.kernels.push_back(parse_inline("kernel", k));
    for (const auto& f : c.functions) cfg.functions.push_back(parse_inline("function", f));
    Section& g = cfg.global;
    if (c.out) set(g, "out", *c.out);
    if (c.suite) set(g, "suite", *c.suite);
    if (c.mode) set(g, "mode", *c.mode);
    if (c.resolution) set(g, "resolution", std::to_string(*c.resolution));
    if (c.tolerance) set(g, "tolerance", str(*c.tolerance));
    if (c.workers) set(g, "workers", std::to_string(*c.workers));
    if (c.d) set(g, "d", std::to_string(*c.d));
    if (c.p) set(g, "p", str(*c.p));
    finalize_config(cfg);
    return cfg;
}

void need_kernels(const ExperimentConfig& cfg) {
    if (cfg.kernels.empty()) throw ConfigError(0, "kernel", "no kernel given");
}

void need_functions(const ExperimentConfig& cfg) {
    if (cfg.functions.empty()) throw ConfigError(0, "function", "no function given");
}

int cmd_run(const Common& c) {
    const ExperimentConfig cfg = assemble(c);
    const RunResult res = run_suites(cfg);
    write_artifacts(cfg, res);
    int failed = 0;
    for (const auto& r : res.reports) failed += r.pass ? 0 : 1;
    std::cout << res.reports.size() << " reports, " << failed << " failed; artifacts in "
              << cfg.out << "\n";
    if (!res.refusal.empty()) {
        std::cerr << "input refused: " << res.refusal << "\n";
        return 2;
    }
    return res.all_pass ? 0 : 1;
}

int cmd_describe(const Common& c) {
    const ExperimentConfig cfg = assemble(c);
    need_kernels(cfg);
    for (const auto& k : build_kernels(cfg)) std::cout << describe_kernel(k);
    return 0;
}

int cmd_norm(const Common& c) {
    const ExperimentConfig cfg = assemble(c);
    need_kernels(cfg);
    need_functions(cfg);
    const auto fs = build_functions(cfg);
    std::cout << std::setprecision(10) << "kernel,function,lp_norm,luxemburg,error,flagged\n";
    for (const auto& k : build_kernels(cfg)) {
        auto setup = prepare_gns(k.kernel, cfg.mode);
        if (!setup.ok) {
            std::cerr << k.name << ": " << setup.reason << "\n";
            return 1;
        }
        for (const auto& f : fs) {
            auto n = luxemburg_norm(f.u, setup.value.phi);
            std::cout << k.name << "," << f.name << "," << lp_norm(f.u, cfg.p) << ",";
            if (n.ok)
                std::cout << n.value.value << "," << n.value.error_estimate << ","
                          << (n.value.flagged ? "true" : "false") << "\n";
            else
                std::cout << ",," << n.reason << "\n";
        }
    }
    return 0;
}

int cmd_seminorm(const Common& c) {
    const ExperimentConfig cfg = assemble(c);
    need_kernels(cfg);
    need_functions(cfg);
    const auto fs = build_functions(cfg);
    std::cout << std::setprecision(10) << "kernel,function,seminorm_p,error,iterations\n";
    for (const auto& k : build_kernels(cfg))
        for (const auto& f : fs) {
            auto n = nonlocal_seminorm(f.u, k.kernel);
            std::cout << k.name << "," << f.name << "," << n.value << "," << n.error_estimate
                      << "," << n.iterations << "\n";
        }
    return 0;
}

int cmd_critical(const Common& c) {
    const ExperimentConfig cfg = assemble(c);
    need_kernels(cfg);
    for (const auto& k : build_kernels(cfg)) {
        auto w = w_profile(k.kernel, cfg.mode == VerifyMode::main_result2 ? WMode::sharp
                                                                          : WMode::tail);
        if (!w.ok) {
            std::cerr << k.name << ": " << w.reason << "\n";
            return 1;
        }
        auto phi = critical_young(w.value);
        if (!phi.ok) {
            std::cerr << k.name << ": " << phi.reason << "\n";
            return 1;
        }
        auto [e, coef] = fit_power(phi.value.ts(), phi.value.values());
        std::cout << "# " << k.name << ": phi(t) ~ " << coef << " t^" << e << "\n";
        if (c.out) {
            std::filesystem::create_directories(*c.out);
            std::ofstream f(std::filesystem::path(*c.out) / ("phi_" + k.name + ".csv"));
            write_young_csv(f, phi.value);
        } else {
            write_young_csv(std::cout, phi.value);
        }
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"nonlocal Sobolev and Orlicz inequality checks"};
    app.require_subcommand(1);
    Common run_c, desc_c, norm_c, semi_c, crit_c;
    auto* run = app.add_subcommand("run", "run configured suites and write artifacts");
    add_common(run, run_c);
    auto* desc = app.add_subcommand("describe", "summarize kernels");
    add_common(desc, desc_c);
    auto* norm = app.add_subcommand("norm", "Luxemburg norms in the critical Orlicz space");
    add_common(norm, norm_c);
    auto* semi = app.add_subcommand("seminorm", "nonlocal seminorms (p-th power)");
    add_common(semi, semi_c);
    auto* crit = app.add_subcommand("critical", "critical Young function tables");
    add_common(crit, crit_c);

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        const int rc = app.exit(e);
        return rc == 0 ? 0 : 2;
    }
    try {
        if (run->parsed()) return cmd_run(run_c);
        if (desc->parsed()) return cmd_describe(desc_c);
        if (norm->parsed()) return cmd_norm(norm_c);
        if (semi->parsed()) return cmd_seminorm(semi_c);
        if (crit->parsed()) return cmd_critical(crit_c);
    } catch (const ConfigError& e) {
        std::cerr << "config error: " << e.what() << "\n";
        return 2;
    } catch (const std::exception& e) {
        std::cerr << "error: " << e.what() << "\n";
        return 2;
    }
    return 2;
}

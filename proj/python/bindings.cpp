#include <pybind11/functional.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "nlsob/config.hpp"
#include "nlsob/runner.hpp"

namespace py = pybind11;
using namespace nlsob;

namespace {

GridFunction grid_1d(const std::vector<double>& values, double lo, double h) {
    GridFunction g;
    g.d = 1;
    g.lo[0] = lo;
    g.h = h;
    g.n[0] = static_cast<int>(values.size()) - 1;
    g.hi[0] = lo + g.n[0] * h;
    g.values = values;
    return g;
}

Kernel kernel_from_spec(const std::string& spec, int d, double p) {
    return make_kernel(parse_inline("kernel", spec), d, p, ".").kernel;
}

YoungFunction critical_from_spec(const std::string& spec, int d, double p) {
    auto w = w_profile(kernel_from_spec(spec, d, p));
    if (!w.ok) throw std::runtime_error(w.reason);
    auto phi = critical_young(w.value);
    if (!phi.ok) throw std::runtime_error(phi.reason);
    return phi.value;
}

py::dict report_dict(const InequalityReport& r) {
    py::dict out;
    out["id"] = r.id;
    out["lhs"] = r.lhs;
    out["rhs"] = r.rhs;
    out["constant"] = r.constant;
    out["margin"] = r.margin();
    out["tolerance"] = r.tolerance;
    out["pass"] = r.pass;
    out["indeterminate"] = r.indeterminate;
    out["notes"] = r.notes;
    py::dict extra;
    for (const auto& [k, v] : r.extra) extra[py::str(k)] = v;
    out["extra"] = extra;
    return out;
}

}  // namespace

PYBIND11_MODULE(_nlsob, m) {
    m.doc() = "nonlocal Sobolev and Orlicz inequality checks";

    py::register_exception<ConfigError>(m, "ConfigError", PyExc_ValueError);

    m.def("gamma_s", &gamma_s, py::arg("d"), py::arg("p"), py::arg("s"));
    m.def("critical_exponent", &critical_exponent, py::arg("d"), py::arg("p"), py::arg("s"));

    m.def(
        "kernel_value",
        [](const std::string& spec, double rho, int d, double p) { return kernel_from_spec(spec, d, p)(rho); },
        py::arg("spec"), py::arg("rho"), py::arg("d") = 1, py::arg("p") = 2.0);
    m.def(
        "nu_sharp",
        [](const std::string& spec, double measure, int d, double p) {
            return nu_sharp(kernel_from_spec(spec, d, p), measure);
        },
        py::arg("spec"), py::arg("measure"), py::arg("d") = 1, py::arg("p") = 2.0);

    m.def(
        "critical_curve",
        [](const std::string& spec, int d, double p) {
            auto phi = critical_from_spec(spec, d, p);
            return py::make_tuple(phi.ts(), phi.values());
        },
        py::arg("spec"), py::arg("d") = 1, py::arg("p") = 2.0,
        "sample points (t, phi(t)) of the critical Young function");
    m.def(
        "fit_power",
        [](const std::vector<double>& x, const std::vector<double>& y) {
            auto [e, c] = fit_power(x, y);
            return py::make_tuple(e, c);
        },
        py::arg("x"), py::arg("y"));

    m.def(
        "luxemburg_norm",
        [](const std::vector<double>& values, double lo, double h, const std::string& spec, double p) {
            auto n = luxemburg_norm(grid_1d(values, lo, h), critical_from_spec(spec, 1, p));
            if (!n.ok) throw std::runtime_error(n.reason);
            return n.value.value;
        },
        py::arg("values"), py::arg("lo"), py::arg("h"), py::arg("kernel"), py::arg("p") = 2.0,
        "Luxemburg norm of 1-d nodal samples in the critical Orlicz space of a kernel");
    m.def(
        "seminorm",
        [](const std::vector<double>& values, double lo, double h, const std::string& spec, double p) {
            return nonlocal_seminorm(grid_1d(values, lo, h), kernel_from_spec(spec, 1, p)).value;
        },
        py::arg("values"), py::arg("lo"), py::arg("h"), py::arg("kernel"), py::arg("p") = 2.0,
        "p-th power of the nonlocal seminorm of 1-d nodal samples");

    m.def(
        "verify_gns",
        [](const std::vector<double>& values, double lo, double h, const std::string& spec, double t,
           double p, const std::string& mode) {
            const VerifyMode vm = mode == "mr2" ? VerifyMode::main_result2 : VerifyMode::assumption_a;
            return report_dict(verify_gns(grid_1d(values, lo, h), kernel_from_spec(spec, 1, p), t, vm));
        },
        py::arg("values"), py::arg("lo"), py::arg("h"), py::arg("kernel"), py::arg("t") = 2.0,
        py::arg("p") = 2.0, py::arg("mode") = "a");
    m.def(
        "verify_inverse_problem",
        [](double q, double c, double p, int d) { return report_dict(verify_inverse_problem(q, c, p, d)); },
        py::arg("q"), py::arg("c"), py::arg("p") = 2.0, py::arg("d") = 1);

    m.def(
        "describe",
        [](const std::string& spec, int d, double p) {
            NamedKernel nk = make_kernel(parse_inline("kernel", spec), d, p, ".");
            nk.name = "kernel";
            return describe_kernel(nk);
        },
        py::arg("spec"), py::arg("d") = 1, py::arg("p") = 2.0);

    m.def(
        "run_config",
        [](const std::string& path, const std::string& out) {
            auto cfg = load_config(path);
            if (!out.empty()) cfg.out = out;
            RunResult res;
            {
                py::gil_scoped_release release;
                res = run_suites(cfg);
                write_artifacts(cfg, res);
            }
            py::list reports;
            for (const auto& r : res.reports) reports.append(report_dict(r));
            return py::make_tuple(res.all_pass, reports);
        },
        py::arg("path"), py::arg("out") = "");
}

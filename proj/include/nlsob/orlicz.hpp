#pragma once

#include <string>
#include <vector>

#include "nlsob/fields.hpp"
#include "nlsob/young.hpp"

namespace nlsob {

// int phi(|u|/lambda) over the grid; +inf on overflow
double modular(const GridFunction& u, const YoungFunction& phi, double lambda);

// inf{lambda : modular <= 1}; the returned lambda has modular in [1 - 1e-6, 1].
// Refuses phi flagged possibly_nonconvex (ok = false).
Checked<NormResult> luxemburg_norm(const GridFunction& u, const YoungFunction& phi);
// same gauge without the convexity gate (used for the min-curve comparisons)
Checked<NormResult> gauge_norm(const GridFunction& u, const YoungFunction& phi);

// ||1_E|| = 1/phi^{-1}(1/|E|)
double indicator_norm(const YoungFunction& phi, double measure);

struct RescaleReport {
    double lhs = 0.0;  // ||u|| in psi(t^q)
    double rhs = 0.0;  // || |u|^q ||_psi^{1/q}
    bool ok = true;
    std::string reason;
};

RescaleReport power_rescale_norm(const GridFunction& u, const YoungFunction& psi, double q);

// c T with T = phi1(t0)|D| + 1 (T = 1 when |D| is infinite), after checking
// phi1(t) <= phi2(c t) on the grid for t >= t0
Checked<double> embedding_bound(const YoungFunction& phi1, const YoungFunction& phi2, double c,
                                double t0, double domain_measure);

// inf over threshold splits u = u1 + u2 of ||u1||_phi1 + ||u2||_phi2
// (16 log-spaced thresholds, clip and cut splits, both assignments)
double sum_space_norm(const GridFunction& u, const YoungFunction& phi1,
                      const YoungFunction& phi2, int levels = 16);

}  // namespace nlsob

// quadrature.hpp — Adaptive Gauss-Kronrod integration over panels

#pragma once

#include <functional>
#include <span>

namespace floquet_zeno::quad {

struct Result {
    double value{0.0};
    double error{0.0};  // summed Kronrod error estimate
    double l1{0.0};     // integral of |f|
};

// Panel sums without the final acceptance test. Each panel is bisected until
// its Kronrod error is below 0.1 rel_tol of its l1 norm, or below its
// length-proportional share of abs_floor.
Result integrate_panels(const std::function<double(double)>& f, std::span<const double> breaks,
                        double rel_tol, double abs_floor = 1e-300);

// Throws Error{QuadratureFailure} when r.error exceeds rel_tol * r.l1 + abs_floor.
void require_converged(const Result& r, double rel_tol, double abs_floor = 1e-300);

// Integrates f over consecutive panels [breaks[i], breaks[i+1]] with
// adaptive 31-point Gauss-Kronrod. Throws Error{QuadratureFailure} when the
// summed error estimate exceeds rel_tol * (l1 norm) + abs_floor.
Result integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 double rel_tol, double abs_floor = 1e-300);

// Single interval [a, b] split into `panels` equal pieces.
Result integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 double rel_tol, double abs_floor = 1e-300);

}  // namespace floquet_zeno::quad

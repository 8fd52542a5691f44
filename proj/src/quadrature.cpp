// quadrature.cpp — Panelled adaptive Gauss-Kronrod on top of Boost.Math rules

#include "floquet_zeno/quadrature.hpp"

#include <boost/math/quadrature/gauss_kronrod.hpp>

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>
#include <string>
#include <vector>

#include "floquet_zeno/error.hpp"

namespace floquet_zeno::quad {

namespace {

using GK = boost::math::quadrature::gauss_kronrod<double, 31>;

constexpr int kMaxDepth = 30;
constexpr long kMaxPieces = 200'000;

// Bisects [a, b] until the Kronrod error of each piece is below
// local_rel * l1(piece) + abs_density * width.
void adapt(const std::function<double(double)>& f, double a, double b, double local_rel,
           double abs_density, int depth, long& budget, Result& acc) {
    double err = 0.0;
    double l1 = 0.0;
    const double v = GK::integrate(f, a, b, 0, 0.0, &err, &l1);
    if (!std::isfinite(v)) throw Error(ErrorCode::QuadratureFailure, "non-finite integrand");
    const double mid = 0.5 * (a + b);
    // below ~50 ulp of the l1 norm the Kronrod estimate is roundoff
    const double target = std::max(local_rel, 50.0 * std::numeric_limits<double>::epsilon()) * l1 +
                          abs_density * (b - a);
    if (err <= target || depth >= kMaxDepth || --budget <= 0 || mid <= a || mid >= b) {
        acc.value += v;
        acc.error += err;
        acc.l1 += l1;
        return;
    }
    adapt(f, a, mid, local_rel, abs_density, depth + 1, budget, acc);
    adapt(f, mid, b, local_rel, abs_density, depth + 1, budget, acc);
}

}  // namespace

Result integrate_panels(const std::function<double(double)>& f, std::span<const double> breaks,
                        double rel_tol, double abs_floor) {
    Result total;
    if (breaks.size() < 2) return total;
    const double length = breaks.back() - breaks.front();
    const double abs_density = length > 0.0 ? 0.5 * abs_floor / length : 0.0;
    long budget = kMaxPieces;
    for (std::size_t i = 0; i + 1 < breaks.size(); ++i) {
        if (breaks[i + 1] <= breaks[i]) continue;
        adapt(f, breaks[i], breaks[i + 1], 0.1 * rel_tol, abs_density, 0, budget, total);
    }
    return total;
}

void require_converged(const Result& r, double rel_tol, double abs_floor) {
    if (r.error > rel_tol * r.l1 + abs_floor) {
        std::ostringstream msg;
        msg << "error estimate " << r.error << " exceeds " << rel_tol << " x " << r.l1;
        throw Error(ErrorCode::QuadratureFailure, msg.str());
    }
}

Result integrate(const std::function<double(double)>& f, std::span<const double> breaks,
                 double rel_tol, double abs_floor) {
    const Result r = integrate_panels(f, breaks, rel_tol, abs_floor);
    require_converged(r, rel_tol, abs_floor);
    return r;
}

Result integrate(const std::function<double(double)>& f, double a, double b, int panels,
                 double rel_tol, double abs_floor) {
    panels = std::max(panels, 1);
    std::vector<double> breaks(static_cast<std::size_t>(panels) + 1);
    for (int i = 0; i <= panels; ++i) breaks[i] = a + (b - a) * i / panels;
    breaks.back() = b;
    return integrate(f, breaks, rel_tol, abs_floor);
}

}  // namespace floquet_zeno::quad

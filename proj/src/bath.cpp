// bath.cpp — CRW reservoir

#include "floquet_zeno/bath.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>

#include "floquet_zeno/error.hpp"
#include "floquet_zeno/quadrature.hpp"
#include "floquet_zeno/specfun.hpp"

namespace floquet_zeno {

MomentumGrid build_grid(const SystemParams& p) {
    MomentumGrid grid;
    grid.n_cavities = p.n_cavities;
    grid.omega_c = p.omega_c;
    grid.xi = p.xi;
    const auto n = static_cast<std::size_t>(p.n_cavities);
    grid.momenta.resize(n);
    grid.energies.resize(n);
    for (std::size_t j = 0; j < n; ++j) {
        const double k = 2.0 * std::numbers::pi * static_cast<double>(j) / p.n_cavities;
        grid.momenta[j] = k;
        grid.energies[j] = p.omega_c - 2.0 * p.xi * std::cos(k);
    }
    return grid;
}

std::complex<double> memory_function(const MomentumGrid& grid, const SystemParams& p, Sideband n,
                                     double t) {
    const double jn = bessel_j(n.n, p.chi);
    std::complex<double> sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        sum += std::polar(1.0, t * grid.band_offset(j));
    }
    return p.g * p.g * jn * jn * sum / static_cast<double>(grid.size());
}

double spectral_density(const SpectralDensity& sd, double omega) {
    const double edge = 2.0 * sd.xi;
    const double a = std::abs(omega);
    if (std::abs(a - edge) < sd.edge_guard()) {
        throw Error(ErrorCode::BandEdgeSingularity,
                    "rho evaluated at the band edge (omega = " + std::to_string(omega) + ")");
    }
    if (a > edge) return 0.0;
    return 1.0 / (std::numbers::pi * std::sqrt(edge * edge - omega * omega));
}

double response_spectrum(const SystemParams& p, Sideband n, double omega) {
    const double jn = bessel_j(n.n, p.chi);
    return p.g * p.g * jn * jn * spectral_density({p.xi}, omega);
}

double integrate_over_band(double xi, const std::function<double(double)>& h, double rel_tol,
                           const std::vector<double>& breaks, int panels_per_half) {
    // Upper half omega = 2 xi - u^2, lower half omega = -2 xi + u^2, u in [0, sqrt(2 xi)].
    // rho(omega) |d omega / du| = (2/pi) / sqrt(4 xi - u^2).
    const double edge = 2.0 * xi;
    const double u_max = std::sqrt(edge);
    quad::Result total;
    for (const double side : {1.0, -1.0}) {
        std::vector<double> cuts;
        for (int i = 0; i <= panels_per_half; ++i) cuts.push_back(u_max * i / panels_per_half);
        for (const double w : breaks) {
            const double on_side = side * w;
            if (on_side > 0.0 && on_side < edge) cuts.push_back(std::sqrt(edge - on_side));
        }
        std::sort(cuts.begin(), cuts.end());
        cuts.erase(std::unique(cuts.begin(), cuts.end()), cuts.end());

        auto integrand = [&](double u) {
            const double omega = side * (edge - u * u);
            return (2.0 / std::numbers::pi) / std::sqrt(2.0 * edge - u * u) * h(omega);
        };
        const auto half = quad::integrate_panels(integrand, cuts, rel_tol);
        total.value += half.value;
        total.error += half.error;
        total.l1 += half.l1;
    }
    quad::require_converged(total, rel_tol);
    return total.value;
}

}  // namespace floquet_zeno

// bath.hpp — Coupled-cavity waveguide reservoir: momentum grid, dispersion,
// spectral density and memory function

#pragma once

#include <complex>
#include <functional>
#include <vector>

#include "floquet_zeno/params.hpp"

namespace floquet_zeno {

// N lattice momenta k_j = 2 pi j / N (j = 0..N-1) with the cosine band
// eps_k = omega_c - 2 xi cos k.
struct MomentumGrid {
    int n_cavities{0};
    double omega_c{0.0};
    double xi{0.0};
    std::vector<double> momenta;
    std::vector<double> energies;

    std::size_t size() const { return momenta.size(); }
    // 2 xi cos k_j, the band offset measured from omega_c
    double band_offset(std::size_t j) const { return omega_c - energies[j]; }
};

MomentumGrid build_grid(const SystemParams& params);

// g_n(t) = (g^2/N) J_n(chi)^2 sum_k exp(i t 2 xi cos k).
// Also accepts t < 0, where it returns conj(g_n(-t)).
std::complex<double> memory_function(const MomentumGrid& grid, const SystemParams& params,
                                     Sideband n, double t);

// Continuum density of band offsets omega = 2 xi cos k:
//   rho(omega) = 1 / (pi sqrt(4 xi^2 - omega^2)) inside the band, 0 outside,
// normalised to unit weight over (-2 xi, 2 xi).
struct SpectralDensity {
    double xi{1.0};
    double edge_guard() const { return 1e-9 * xi; }
};

// Throws Error{BandEdgeSingularity} within edge_guard() of |omega| = 2 xi.
double spectral_density(const SpectralDensity& sd, double omega);

// Reservoir coupling spectrum g_n(omega) = g^2 J_n(chi)^2 rho(omega).
double response_spectrum(const SystemParams& params, Sideband n, double omega);

// Integral of rho(omega) h(omega) over the band. The inverse-square-root
// edges are removed by omega = +-(2 xi - u^2), so h is never evaluated at
// the band edges. `breaks` are optional interior omega values where h is
// sharply structured (each becomes a panel boundary).
double integrate_over_band(double xi, const std::function<double(double)>& h, double rel_tol,
                           const std::vector<double>& breaks = {}, int panels_per_half = 32);

}  // namespace floquet_zeno

// decay.cpp — Decay rates, survival amplitude and regime classification

#include "floquet_zeno/decay.hpp"

#include <algorithm>
#include <cmath>
#include <iostream>
#include <numbers>
#include <string>

#include "floquet_zeno/error.hpp"
#include "floquet_zeno/quadrature.hpp"
#include "floquet_zeno/specfun.hpp"

namespace floquet_zeno {

namespace {

constexpr double kPi = std::numbers::pi;

void require_positive_time(double t) {
    if (!(t > 0.0) || !std::isfinite(t)) {
        throw Error(ErrorCode::InvalidArgument, "time must be positive and finite, got " + std::to_string(t));
    }
}

double bessel_weight(const SystemParams& p, Sideband n) {
    const double jn = bessel_j(n.n, p.chi);
    return jn * jn;
}

}  // namespace

double sinc(double x) {
    if (std::abs(x) < 1e-4) {
        const double x2 = x * x;
        return 1.0 - x2 / 6.0 + x2 * x2 / 120.0;
    }
    return std::sin(x) / x;
}

double decay_rate_finite(const SystemParams& p, const MomentumGrid& grid, Sideband n, double t) {
    require_positive_time(t);
    const double w_f = sideband_detuning(p, n);
    double sum = 0.0;
    for (std::size_t j = 0; j < grid.size(); ++j) {
        const double s = sinc(0.5 * (w_f - grid.band_offset(j)) * t);
        sum += s * s;
    }
    return t * p.g * p.g / static_cast<double>(grid.size()) * bessel_weight(p, n) * sum;
}

LongTimeRate decay_rate_longtime(const SystemParams& p, Sideband n) {
    const double w_f = sideband_detuning(p, n);
    // spectral_density throws on the band edge; 0 outside the band
    const double rho = spectral_density({p.xi}, w_f);
    LongTimeRate out;
    out.resonant = std::abs(w_f) <= 2.0 * p.xi;
    out.rate = out.resonant ? 2.0 * kPi * p.g * p.g * bessel_weight(p, n) * rho : 0.0;
    return out;
}

double decay_rate_continuum(const SystemParams& p, Sideband n, double t, double rel_tol) {
    require_positive_time(t);
    const double prefactor = t * p.g * p.g * bessel_weight(p, n);
    if (prefactor == 0.0) return 0.0;

    const double w_f = sideband_detuning(p, n);
    // cos k is even about k = pi, so (1/2pi) int_0^{2pi} = (1/pi) int_0^pi.
    const int panels = std::max(8, static_cast<int>(std::ceil(2.0 * p.xi * t)));
    std::vector<double> breaks;
    for (int i = 0; i <= panels; ++i) breaks.push_back(kPi * i / panels);
    if (std::abs(w_f) < 2.0 * p.xi) breaks.push_back(std::acos(w_f / (2.0 * p.xi)));
    std::sort(breaks.begin(), breaks.end());

    auto integrand = [&](double k) {
        const double s = sinc(0.5 * (w_f - 2.0 * p.xi * std::cos(k)) * t);
        return s * s;
    };
    const auto result = quad::integrate(integrand, breaks, rel_tol);
    return prefactor * result.value / kPi;
}

std::complex<double> modulation_spectrum(const SystemParams& p, Sideband n, double t, double omega) {
    require_positive_time(t);
    const double x = omega - sideband_detuning(p, n);
    const double y = x * t;
    const double s = sinc(0.5 * y);
    const double re = 0.5 * t * s * s;
    double im = 0.0;
    if (std::abs(y) < 1e-2) {
        const double y2 = y * y;
        im = t * y * (1.0 / 6.0 - y2 / 120.0 + y2 * y2 / 5040.0);
    } else {
        im = (y - std::sin(y)) / (t * x * x);
    }
    return std::complex<double>(re, im) / kPi;
}

double decay_rate_overlap(const SystemParams& p, Sideband n, double t, double rel_tol) {
    require_positive_time(t);
    const double weight = p.g * p.g * bessel_weight(p, n);
    if (weight == 0.0) return 0.0;
    const double w_f = sideband_detuning(p, n);
    auto kernel = [&](double omega) { return modulation_spectrum(p, n, t, omega).real(); };
    const int panels = std::max(32, static_cast<int>(std::ceil(2.0 * p.xi * t)));
    const double overlap = integrate_over_band(p.xi, kernel, rel_tol, {w_f}, panels);
    return 2.0 * kPi * weight * overlap;
}

std::complex<double> survival_amplitude(const SystemParams& p, const MomentumGrid& grid, Sideband n,
                                        double t) {
    if (!(t >= 0.0) || !std::isfinite(t)) {
        throw Error(ErrorCode::InvalidArgument, "time must be non-negative, got " + std::to_string(t));
    }
    const double e_excited = 0.5 * p.omega;
    const std::complex<double> phase = std::polar(1.0, e_excited * t);
    if (t == 0.0 || p.g == 0.0) return phase;

    const double w_f = sideband_detuning(p, n);
    auto kernel = [&](double tau) {
        return (1.0 - tau / t) * memory_function(grid, p, n, tau) * std::polar(1.0, -w_f * tau);
    };
    const int panels =
        std::max(4, static_cast<int>(std::ceil(t * (std::abs(w_f) + 2.0 * p.xi) / kPi)));
    // absolute slack of 1e-13 on C_e itself
    const double floor = 1e-13 / t;
    const double re = quad::integrate([&](double tau) { return kernel(tau).real(); }, 0.0, t, panels, 1e-10, floor).value;
    const double im = quad::integrate([&](double tau) { return kernel(tau).imag(); }, 0.0, t, panels, 1e-10, floor).value;
    return phase * (1.0 - t * std::complex<double>(re, im));
}

std::string_view to_string(SurvivalMethod method) {
    switch (method) {
        case SurvivalMethod::Perturbative: return "perturbative";
        case SurvivalMethod::Exponential: return "exponential";
        case SurvivalMethod::Oracle: return "oracle";
    }
    return "unknown";
}

double survival_probability(const SystemParams& p, const MomentumGrid& grid, Sideband n, double t,
                            SurvivalMethod method) {
    switch (method) {
        case SurvivalMethod::Perturbative: {
            const double value = std::norm(survival_amplitude(p, grid, n, t));
            if (value > 1.0 + 1e-6) {
                std::clog << "warning: perturbative survival probability " << value
                          << " exceeds 1 at t = " << t << "; clipped\n";
            }
            return std::clamp(value, 0.0, 1.0);
        }
        case SurvivalMethod::Exponential:
            if (t == 0.0) return 1.0;
            return std::exp(-decay_rate_finite(p, grid, n, t) * t);
        case SurvivalMethod::Oracle:
            break;
    }
    throw Error(ErrorCode::InvalidArgument, "survival_probability handles perturbative/exponential only");
}

DecayCurve decay_curve(const SystemParams& p, const MomentumGrid& grid, Sideband n,
                       std::span<const double> times, RateMethod method) {
    DecayCurve curve{{times.begin(), times.end()}, {}, p, n};
    curve.rates.reserve(times.size());
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (i > 0 && !(times[i] > times[i - 1])) {
            throw Error(ErrorCode::InvalidArgument, "times must be strictly increasing");
        }
        curve.rates.push_back(method == RateMethod::Finite ? decay_rate_finite(p, grid, n, times[i])
                                                           : decay_rate_continuum(p, n, times[i]));
    }
    return curve;
}

SurvivalCurve survival_curve(const SystemParams& p, const MomentumGrid& grid, Sideband n,
                             std::span<const double> times, SurvivalMethod method) {
    SurvivalCurve curve{{times.begin(), times.end()}, {}, method};
    curve.probabilities.reserve(times.size());
    for (const double t : times) curve.probabilities.push_back(survival_probability(p, grid, n, t, method));
    return curve;
}

std::string_view to_string(Regime regime) {
    switch (regime) {
        case Regime::Zeno: return "Zeno";
        case Regime::AntiZeno: return "AntiZeno";
        case Regime::Decoupled: return "Decoupled";
        case Regime::Indeterminate: return "Indeterminate";
    }
    return "Unknown";
}

RegimeReport classify_regime(const SystemParams& p, const MomentumGrid& grid, Sideband n, double t,
                             const ClassifierThresholds& th) {
    require_positive_time(t);
    const double jn = bessel_j(n.n, p.chi);

    RegimeReport r;
    r.delta_f = 1.0 / t;
    r.omega_f = sideband_detuning(p, n);
    r.delta_g = std::numbers::sqrt2 * p.xi * p.g * std::abs(jn);
    r.omega_g = 0.0;

    const double h = 1e-3 * t;
    r.rate_slope = (decay_rate_finite(p, grid, n, t + h) - decay_rate_finite(p, grid, n, t - h)) / (2.0 * h);

    if (std::abs(jn) < th.decoupling_bessel) {
        r.regime = Regime::Decoupled;
    } else if (r.delta_f >= th.separation * std::max(r.delta_g, std::abs(r.omega_f))) {
        r.regime = Regime::Zeno;
    } else if (r.delta_f <= std::abs(r.omega_f - r.omega_g) / th.separation &&
               std::abs(r.omega_f) > 2.0 * p.xi) {
        r.regime = Regime::AntiZeno;
    } else {
        r.regime = Regime::Indeterminate;
    }
    return r;
}

}  // namespace floquet_zeno

// decay.hpp — Perturbative survival amplitude, finite-time decay rate and the
// Zeno / anti-Zeno / decoupled classification
//
// All rates follow from the second-order amplitude
//   C_e(t) = e^{i E_e t} [1 - t int_0^t dtau (1 - tau/t) g_n(tau) e^{-i w_f tau}],
// with w_f = Delta + n nu, and P_e ~ exp(-R t).

#pragma once

#include <complex>
#include <span>
#include <string_view>
#include <vector>

#include "floquet_zeno/bath.hpp"
#include "floquet_zeno/params.hpp"

namespace floquet_zeno {

// sin(x)/x with sinc(0) = 1 (series below |x| < 1e-4).
double sinc(double x);

// R(t) = (t g^2/N) J_n(chi)^2 sum_k sinc^2((Delta - 2 xi cos k + n nu) t / 2).
// Throws Error{InvalidArgument} for t <= 0.
double decay_rate_finite(const SystemParams& params, const MomentumGrid& grid, Sideband n, double t);

struct LongTimeRate {
    bool resonant{false};  // |Delta + n nu| <= 2 xi
    double rate{0.0};      // 2 pi g^2 J_n(chi)^2 rho(Delta + n nu), 0 off resonance
};

// Golden-rule limit t -> infinity in the continuum.
// Throws Error{BandEdgeSingularity} when Delta + n nu sits on a band edge.
LongTimeRate decay_rate_longtime(const SystemParams& params, Sideband n);

// N -> infinity form of decay_rate_finite:
//   R = t g^2 J_n^2 (1/2pi) int_0^{2pi} sinc^2((Delta - 2 xi cos k + n nu) t/2) dk
// by adaptive quadrature (relative tolerance rel_tol).
double decay_rate_continuum(const SystemParams& params, Sideband n, double t, double rel_tol = 1e-8);

// Fourier transform of the modulation function (1 - tau/t) e^{-i w_f tau} on [0, t]:
//   f_n(w) = (1/pi) int_0^t (1 - tau/t) e^{i (w - w_f) tau} dtau.
// Re f_n is the Fejer kernel (t/2pi) sinc^2((w - w_f) t/2), of unit weight and
// width 1/t; Im f_n is its dispersive partner.
std::complex<double> modulation_spectrum(const SystemParams& params, Sideband n, double t, double omega);

// R = 2 pi int dw f_n(w) g_n(w) in the continuum (overlap of modulation and
// reservoir spectra), evaluated in the frequency domain.
double decay_rate_overlap(const SystemParams& params, Sideband n, double t, double rel_tol = 1e-9);

// Second-order amplitude C_e(t), time integral by adaptive quadrature over
// the finite-N memory function.
std::complex<double> survival_amplitude(const SystemParams& params, const MomentumGrid& grid, Sideband n,
                                        double t);

enum class SurvivalMethod { Perturbative, Exponential, Oracle };

std::string_view to_string(SurvivalMethod method);

// Perturbative: |C_e(t)|^2 clipped into [0, 1] (warns on std::clog when the
// overshoot exceeds 1e-6). Exponential: exp(-R(t) t) with the finite-N rate.
// Oracle is not handled here (see oracle.hpp) and throws InvalidArgument.
double survival_probability(const SystemParams& params, const MomentumGrid& grid, Sideband n, double t,
                            SurvivalMethod method);

struct DecayCurve {
    std::vector<double> times;
    std::vector<double> rates;
    SystemParams params;
    Sideband sideband;
};

enum class RateMethod { Finite, Continuum };

DecayCurve decay_curve(const SystemParams& params, const MomentumGrid& grid, Sideband n,
                       std::span<const double> times, RateMethod method = RateMethod::Finite);

struct SurvivalCurve {
    std::vector<double> times;
    std::vector<double> probabilities;
    SurvivalMethod method{SurvivalMethod::Perturbative};
};

SurvivalCurve survival_curve(const SystemParams& params, const MomentumGrid& grid, Sideband n,
                             std::span<const double> times, SurvivalMethod method);

enum class Regime { Zeno, AntiZeno, Decoupled, Indeterminate };

std::string_view to_string(Regime regime);

// Numerical stand-ins for the asymptotic inequalities of the width/centre
// criterion.
struct ClassifierThresholds {
    double separation{10.0};       // "much larger" means a factor `separation`
    double decoupling_bessel{1e-6};  // |J_n(chi)| below this counts as decoupled
};

struct RegimeReport {
    Regime regime{Regime::Indeterminate};
    double delta_f{0.0};  // modulation width 1/t
    double omega_f{0.0};  // modulation centre Delta + n nu
    double delta_g{0.0};  // reservoir width sqrt(2) xi g |J_n(chi)|
    double omega_g{0.0};  // reservoir centre
    double rate_slope{0.0};  // dR/dt of the finite-N rate at t (diagnostic only)
};

// Decoupled if |J_n(chi)| < decoupling_bessel; Zeno if
// delta_f >= separation * max(delta_g, |omega_f|); AntiZeno if
// delta_f <= |omega_f - omega_g| / separation and |omega_f| > 2 xi;
// Indeterminate otherwise.
RegimeReport classify_regime(const SystemParams& params, const MomentumGrid& grid, Sideband n, double t,
                             const ClassifierThresholds& thresholds = {});

}  // namespace floquet_zeno

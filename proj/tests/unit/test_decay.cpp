#include <doctest.h>

#include <cmath>
#include <numbers>
#include <random>
#include <vector>

#include "floquet_zeno/decay.hpp"
#include "floquet_zeno/error.hpp"
#include "floquet_zeno/specfun.hpp"

using namespace floquet_zeno;

namespace {

SystemParams params(double delta, double chi, double g = 0.25, int n_cavities = 41, double nu = 10.0) {
    SystemParams p;
    p.omega = 10.0;
    p.omega_c = 10.0 + delta;
    p.xi = 1.0;
    p.g = g;
    p.n_cavities = n_cavities;
    p.drive_freq = nu;
    p.drive_amp = chi * nu;
    return validate(p);
}

template <class F>
ErrorCode error_of(F&& fn) {
    try {
        fn();
    } catch (const Error& e) {
        return e.code();
    }
    return ErrorCode::ConfigError;  // sentinel: nothing thrown
}

// Direct sum of the finite-time rate with long-double accumulation.
double rate_oracle(const SystemParams& p, int n, double t) {
    long double sum = 0.0L;
    for (int j = 0; j < p.n_cavities; ++j) {
        const long double k = 2.0L * std::numbers::pi_v<long double> * j / p.n_cavities;
        const long double x = (p.detuning - 2.0L * p.xi * std::cos(k) + n * p.drive_freq) * t / 2.0L;
        const long double s = x == 0.0L ? 1.0L : std::sin(x) / x;
        sum += s * s;
    }
    const double jn = std::cyl_bessel_j(std::abs(n), p.chi) * ((n < 0 && (n % 2)) ? -1.0 : 1.0);
    return static_cast<double>(t * p.g * p.g * jn * jn * sum / p.n_cavities);
}

const double kRoot = 2.404825557695773;

}  // namespace

TEST_CASE("sinc") {
    CHECK(sinc(0.0) == 1.0);
    CHECK(sinc(1e-5) == doctest::Approx(1.0 - 1e-10 / 6.0).epsilon(1e-15));
    CHECK(sinc(-1e-5) == sinc(1e-5));
    CHECK(sinc(1.0) == doctest::Approx(std::sin(1.0)).epsilon(1e-15));
    CHECK(std::abs(sinc(std::numbers::pi)) < 1e-16);
    // continuity across the series branch
    CHECK(sinc(0.99999e-4) == doctest::Approx(std::sin(0.99999e-4) / 0.99999e-4).epsilon(1e-15));
    CHECK(sinc(1.00001e-4) == doctest::Approx(std::sin(1.00001e-4) / 1.00001e-4).epsilon(1e-15));
}

TEST_CASE("finite-time decay rate") {
    SUBCASE("g = 0") { CHECK(decay_rate_finite(params(1.0, 1.0, 0.0), build_grid(params(1.0, 1.0, 0.0)), {0}, 3.0) == 0.0); }

    SUBCASE("single resonant mode") {
        const auto p = params(2.0, 0.0, 0.25, 1);
        CHECK(decay_rate_finite(p, build_grid(p), {0}, 4.0) == doctest::Approx(0.25).epsilon(1e-14));
    }

    SUBCASE("matches the direct-sum oracle") {
        std::mt19937 rng(5);
        std::uniform_real_distribution<double> u(-4.0, 4.0);
        for (int i = 0; i < 50; ++i) {
            const auto p = params(u(rng), std::abs(u(rng)), 0.3, 1 + i % 23);
            const double t = 0.1 + std::abs(u(rng)) * 5.0;
            for (int n : {-1, 0, 1}) {
                const double oracle = rate_oracle(p, n, t);
                CHECK(decay_rate_finite(p, build_grid(p), {n}, t) == doctest::Approx(oracle).epsilon(1e-12));
            }
        }
    }

    SUBCASE("rates are non-negative") {
        std::mt19937 rng(6);
        std::uniform_real_distribution<double> u(-5.0, 5.0);
        for (int i = 0; i < 200; ++i) {
            const auto p = params(u(rng), std::abs(u(rng)), std::abs(u(rng)), 1 + i % 50);
            CHECK(decay_rate_finite(p, build_grid(p), {i % 3 - 1}, 0.01 + std::abs(u(rng)) * 4.0) >= 0.0);
        }
    }

    SUBCASE("decoupled at the J0 root") {
        const auto p = params(3.0, kRoot);
        const auto grid = build_grid(p);
        for (int i = 1; i <= 200; ++i) CHECK(decay_rate_finite(p, grid, {0}, 0.1 * i) <= 1e-10);
    }

    SUBCASE("decoupling is exact up to the root residual") {
        for (int n : {0, 1, 2}) {
            for (int k : {1, 2, 3}) {
                const double root = bessel_j_zero(n, k);
                const double residual = std::abs(bessel_j(n, root));
                // detuning chosen so sideband n is resonant with the band
                const auto p = params(0.5 - n * 10.0, root);
                const auto base = params(0.5, 0.0);
                const double t = 3.0;
                // same sinc arguments, unit Bessel factor
                const double base_rate = decay_rate_finite(base, build_grid(base), {0}, t);
                const double r = decay_rate_finite(p, build_grid(p), {n}, t);
                CHECK(r <= residual * residual * base_rate * (1.0 + 1e-9) + 1e-300);
                CHECK(decay_rate_continuum(p, {n}, t) <= residual * residual * base_rate * 1.01 + 1e-300);
                CHECK(decay_rate_longtime(p, {n}).rate <= residual * residual * 2.0 * std::numbers::pi * 0.0625 + 1e-300);
            }
        }
    }

    SUBCASE("undriven rate has no Bessel factor") {
        const auto p = params(0.7, 0.0);
        const auto grid = build_grid(p);
        double sum = 0.0;
        for (int j = 0; j < 41; ++j) sum += std::pow(sinc((0.7 - 2.0 * std::cos(grid.momenta[j])) * 2.5), 2);
        CHECK(decay_rate_finite(p, grid, {0}, 5.0) == doctest::Approx(5.0 * 0.0625 * sum / 41.0).epsilon(1e-13));
    }

    SUBCASE("Zeno growth and anti-Zeno decrease") {
        const auto blue = params(1.0, 1.0);
        const auto red = params(3.0, 1.0);
        const auto gb = build_grid(blue);
        const auto gr = build_grid(red);
        CHECK(decay_rate_finite(blue, gb, {0}, 10.0) > decay_rate_finite(blue, gb, {0}, 2.0));
        CHECK(decay_rate_finite(blue, gb, {0}, 2.0) > 0.0);
        CHECK(decay_rate_finite(red, gr, {0}, 10.0) < decay_rate_finite(red, gr, {0}, 2.0));
    }

    SUBCASE("a resonant grid mode makes R grow linearly") {
        // N = 6 has k = pi/3 on the grid: Delta = 1 is exactly resonant
        const auto p = params(1.0, 1.0, 0.25, 6);
        const auto grid = build_grid(p);
        double prev = 0.0;
        for (double t = 2.0; t <= 40.0; t += 2.0) {
            const double r = decay_rate_finite(p, grid, {0}, t);
            CHECK(r > prev);
            prev = r;
        }
    }

    SUBCASE("invalid time") {
        const auto p = params(1.0, 1.0);
        CHECK(error_of([&] { decay_rate_finite(p, build_grid(p), {0}, 0.0); }) == ErrorCode::InvalidArgument);
        CHECK(error_of([&] { decay_rate_continuum(p, {0}, -1.0); }) == ErrorCode::InvalidArgument);
    }
}

TEST_CASE("long-time and continuum rates") {
    SUBCASE("off resonance") {
        const auto r = decay_rate_longtime(params(3.0, 1.0, 0.25, 41, 100.0), {0});
        CHECK(!r.resonant);
        CHECK(r.rate == 0.0);
    }

    SUBCASE("band centre") {
        const auto r = decay_rate_longtime(params(0.0, 0.0), {0});
        CHECK(r.resonant);
        CHECK(r.rate == doctest::Approx(0.0625).epsilon(1e-14));  // 2 pi g^2 / (2 pi)
    }

    SUBCASE("sideband resonance carries J_n^2") {
        const auto r = decay_rate_longtime(params(-9.5, 1.3), {1});
        const double expected = 2.0 * std::numbers::pi * 0.0625 * std::pow(std::cyl_bessel_j(1, 1.3), 2) /
                                (std::numbers::pi * std::sqrt(4.0 - 0.25));
        CHECK(r.resonant);
        CHECK(r.rate == doctest::Approx(expected).epsilon(1e-13));
    }

    SUBCASE("band edge") {
        CHECK(error_of([] { decay_rate_longtime(params(2.0, 1.0), {0}); }) == ErrorCode::BandEdgeSingularity);
        CHECK(error_of([] { decay_rate_longtime(params(-2.0, 1.0), {0}); }) == ErrorCode::BandEdgeSingularity);
    }

    SUBCASE("continuum matches a fine grid") {
        for (const double delta : {0.0, 1.0, 1.7, 3.0}) {
            const auto p = params(delta, 1.0, 0.25, 2001);
            const auto grid = build_grid(p);
            for (const double t : {0.1, 1.0, 5.0, 12.5, 20.0}) {
                const double c = decay_rate_continuum(p, {0}, t);
                const double f = decay_rate_finite(p, grid, {0}, t);
                CHECK(std::abs(c - f) <= 1e-4 * std::abs(f));
            }
        }
    }

    SUBCASE("g = 0") { CHECK(decay_rate_continuum(params(1.0, 1.0, 0.0), {0}, 4.0) == 0.0); }

    SUBCASE("continuum approaches the golden rule") {
        for (const double delta : {0.0, 0.9, -1.5}) {
            const auto p = params(delta, 0.8);
            const double golden = decay_rate_longtime(p, {0}).rate;
            CHECK(std::abs(decay_rate_continuum(p, {0}, 200.0) - golden) <= 0.02 * golden);
        }
    }
}

TEST_CASE("survival amplitude") {
    const auto p = params(1.0, 1.0);
    const auto grid = build_grid(p);
    CHECK(std::abs(survival_amplitude(p, grid, {0}, 0.0)) == doctest::Approx(1.0).epsilon(1e-15));

    const auto free = params(1.0, 1.0, 0.0);
    for (const double t : {0.5, 4.0, 30.0}) {
        CHECK(std::abs(survival_amplitude(free, build_grid(free), {0}, t)) == doctest::Approx(1.0).epsilon(1e-14));
    }

    SUBCASE("quadratic onset") {
        const double gj2 = 0.0625 * std::pow(std::cyl_bessel_j(0, 1.0), 2);
        for (const double t : {1e-3, 1e-2, 3e-2}) {
            const double loss = 1.0 - std::norm(survival_amplitude(p, grid, {0}, t));
            CHECK(loss / (t * t) == doctest::Approx(gj2).epsilon(5e-3));
        }
    }

    SUBCASE("phase is the TLS energy at zero coupling") {
        const auto c = survival_amplitude(free, build_grid(free), {0}, 0.3);
        CHECK(std::abs(c - std::polar(1.0, 5.0 * 0.3)) < 1e-14);
    }
}

TEST_CASE("survival probability") {
    const auto p = params(1.0, 1.0);
    const auto grid = build_grid(p);
    for (auto m : {SurvivalMethod::Perturbative, SurvivalMethod::Exponential}) {
        CHECK(survival_probability(p, grid, {0}, 0.0, m) == 1.0);
    }
    CHECK(error_of([&] { survival_probability(p, grid, {0}, 1.0, SurvivalMethod::Oracle); }) ==
          ErrorCode::InvalidArgument);

    SUBCASE("decoupled exponential survival") {
        const auto green = params(3.0, kRoot);
        const auto gg = build_grid(green);
        for (double t = 0.5; t <= 20.0; t += 0.5) {
            CHECK(survival_probability(green, gg, {0}, t, SurvivalMethod::Exponential) >= 1.0 - 1e-8);
        }
    }

    SUBCASE("perturbative result is clipped into [0, 1]") {
        const auto strong = params(0.0, 0.0, 3.0);
        const auto gs = build_grid(strong);
        for (const double t : {0.5, 2.0, 8.0}) {
            const double v = survival_probability(strong, gs, {0}, t, SurvivalMethod::Perturbative);
            CHECK(v >= 0.0);
            CHECK(v <= 1.0);
        }
    }

    SUBCASE("curves") {
        const std::vector<double> times{0.0, 0.5, 1.0, 2.0};
        const auto c = survival_curve(p, grid, {0}, times, SurvivalMethod::Exponential);
        CHECK(c.method == SurvivalMethod::Exponential);
        REQUIRE(c.probabilities.size() == 4);
        CHECK(c.probabilities[0] == 1.0);
        CHECK(c.probabilities[3] == doctest::Approx(std::exp(-decay_rate_finite(p, grid, {0}, 2.0) * 2.0)));

        const std::vector<double> rt{0.5, 1.0, 3.0};
        const auto d = decay_curve(p, grid, {0}, rt);
        CHECK(d.rates[2] == decay_rate_finite(p, grid, {0}, 3.0));
        const std::vector<double> bad{1.0, 1.0};
        CHECK(error_of([&] { decay_curve(p, grid, {0}, bad); }) == ErrorCode::InvalidArgument);
        const auto dc = decay_curve(p, grid, {0}, rt, RateMethod::Continuum);
        CHECK(dc.rates[1] == decay_rate_continuum(p, {0}, 1.0));
    }
}

TEST_CASE("modulation spectrum") {
    const auto p = params(0.6, 1.0);
    const double t = 7.0;

    SUBCASE("peak at the modulation centre") {
        const double step = 1e-3;
        double best = 0.0, best_w = 0.0;
        for (double w = -3.0; w <= 3.0; w += step) {
            const double v = std::abs(modulation_spectrum(p, {0}, t, w));
            if (v > best) {
                best = v;
                best_w = w;
            }
        }
        CHECK(std::abs(best_w - 0.6) <= step);
        CHECK(modulation_spectrum(p, {0}, t, 0.6).real() == doctest::Approx(t / (2.0 * std::numbers::pi)));
        CHECK(modulation_spectrum(p, {0}, t, 0.6).imag() == doctest::Approx(0.0));
    }

    SUBCASE("closed form against direct quadrature") {
        for (const double w : {-1.0, 0.2, 0.6, 0.61, 2.5}) {
            // midpoint rule on (1/pi) int_0^t (1 - tau/t) e^{i (w - w_f) tau} dtau
            const int steps = 200000;
            std::complex<double> sum = 0.0;
            for (int i = 0; i < steps; ++i) {
                const double tau = (i + 0.5) * t / steps;
                sum += (1.0 - tau / t) * std::polar(1.0, (w - 0.6) * tau);
            }
            sum *= t / steps / std::numbers::pi;
            CHECK(std::abs(modulation_spectrum(p, {0}, t, w) - sum) < 1e-8);
        }
    }

    SUBCASE("overlap route equals the sinc route") {
        for (const double delta : {0.0, 1.0, 3.0, -2.6}) {
            for (const double tt : {0.3, 2.0, 10.0}) {
                const auto q = params(delta, 1.0);
                const double direct = decay_rate_continuum(q, {0}, tt);
                CHECK(std::abs(decay_rate_overlap(q, {0}, tt) - direct) <= 1e-3 * direct);
            }
        }
    }

    SUBCASE("long-time overlap tends to the golden rule") {
        const auto q = params(0.4, 1.0);
        const double golden = decay_rate_longtime(q, {0}).rate;
        CHECK(std::abs(decay_rate_overlap(q, {0}, 500.0) - golden) <= 0.01 * golden);
    }
}

TEST_CASE("regime classification") {
    SUBCASE("red: transition outside the band") {
        const auto p = params(3.0, 1.0);
        const auto r = classify_regime(p, build_grid(p), {0}, 10.0);
        CHECK(r.regime == Regime::AntiZeno);
        CHECK(r.omega_f == 3.0);
        CHECK(r.delta_f == doctest::Approx(0.1));
        CHECK(r.rate_slope < 0.0);
    }

    SUBCASE("green: Bessel root") {
        const auto p = params(3.0, bessel_j_zero(0, 1));
        CHECK(classify_regime(p, build_grid(p), {0}, 10.0).regime == Regime::Decoupled);
        const auto literal = params(3.0, 2.4);
        CHECK(classify_regime(literal, build_grid(literal), {0}, 10.0).regime != Regime::Decoupled);
        ClassifierThresholds loose;
        loose.decoupling_bessel = 1e-2;
        CHECK(classify_regime(literal, build_grid(literal), {0}, 10.0, loose).regime == Regime::Decoupled);
    }

    SUBCASE("blue: growing rate, Zeno at short times") {
        const auto p = params(1.0, 1.0);
        const auto grid = build_grid(p);
        const auto late = classify_regime(p, grid, {0}, 10.0);
        // R(t) oscillates around a rising trend; t = 10 sits near a local
        // maximum, so the growth is measured by the secant from t = 2
        CHECK((decay_rate_finite(p, grid, {0}, 10.0) - decay_rate_finite(p, grid, {0}, 2.0)) / 8.0 > 0.0);
        CHECK(std::abs(late.rate_slope) < 1e-3);
        CHECK(late.regime != Regime::AntiZeno);
        CHECK(late.regime != Regime::Decoupled);
        const auto early = classify_regime(p, grid, {0}, 0.05);
        CHECK(early.regime == Regime::Zeno);
        CHECK(early.delta_g == doctest::Approx(std::sqrt(2.0) * 0.25 * std::cyl_bessel_j(0, 1.0)));
    }

    CHECK(to_string(Regime::AntiZeno) == "AntiZeno");
}

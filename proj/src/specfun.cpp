// specfun.cpp — Bessel J_n(x) and its zeros

#include "floquet_zeno/specfun.hpp"

#include <algorithm>
#include <cmath>
#include <string>

#include "floquet_zeno/error.hpp"

namespace floquet_zeno {

namespace {

// Ascending series only where its terms shrink from the first one on
// ((x/2)^2 <= n + 1), so no cancellation occurs; Miller elsewhere.
bool use_series(int n, double x) { return x <= 1.0 || 0.25 * x * x <= n + 1.0; }

// n >= 0, x > 0, use_series(n, x)
double series_j(int n, double x) {
    const double half = 0.5 * x;
    const double log_first = n * std::log(half) - std::lgamma(n + 1.0);
    if (log_first < -745.0) return 0.0;
    double term = std::exp(log_first);
    double sum = term;
    const double q = half * half;
    for (int m = 1; m < 500; ++m) {
        term *= -q / (static_cast<double>(m) * (m + n));
        sum += term;
        if (std::abs(term) < 1e-17 * std::abs(sum) && m > half) break;
    }
    return sum;
}

// n >= 0, x > 0
double miller_j(int n, double x) {
    const double top = std::max(static_cast<double>(n), x);
    int start = static_cast<int>(top + 20.0 + std::sqrt(40.0 * top));
    start += start % 2;  // even, so the normalisation sum picks J_0 + 2 sum J_2k

    constexpr double kRescale = 1e250;
    const double two_over_x = 2.0 / x;
    double above = 0.0;    // J_{k+1}
    double current = 1e-300;  // J_k
    double norm = 0.0;
    double result = 0.0;
    for (int k = start; k > 0; --k) {
        const double below = k * two_over_x * current - above;  // J_{k-1}
        above = current;
        current = below;
        if (k - 1 == n) result = current;
        if ((k - 1) % 2 == 0 && k - 1 > 0) norm += 2.0 * current;
        if (std::abs(current) > kRescale) {
            current /= kRescale;
            above /= kRescale;
            norm /= kRescale;
            result /= kRescale;
        }
    }
    norm += current;  // J_0
    return result / norm;
}

}  // namespace

double bessel_j(int n, double x) {
    if (n > kMaxBesselOrder || n < -kMaxBesselOrder) {
        throw Error(ErrorCode::OrderTooLarge, "Bessel order " + std::to_string(n));
    }
    if (!std::isfinite(x) || std::abs(x) > kMaxBesselArgument) {
        throw Error(ErrorCode::ArgumentOutOfRange, "Bessel argument " + std::to_string(x));
    }
    // J_{-n}(x) = (-1)^n J_n(x) and J_n(-x) = (-1)^n J_n(x)
    double sign = 1.0;
    if (n < 0) {
        n = -n;
        if (n % 2 != 0) sign = -sign;
    }
    if (x < 0.0) {
        x = -x;
        if (n % 2 != 0) sign = -sign;
    }
    if (x == 0.0) return n == 0 ? 1.0 : 0.0;
    return sign * (use_series(n, x) ? series_j(n, x) : miller_j(n, x));
}

double bessel_j_zero(int n, int k) {
    if (n < 0 || n > kMaxBesselOrder) {
        throw Error(ErrorCode::OrderTooLarge, "Bessel zero of order " + std::to_string(n));
    }
    if (k < 1) throw Error(ErrorCode::InvalidArgument, "root index must be >= 1");

    // J_n > 0 on (0, n]: every positive root exceeds n.
    constexpr double kStep = 0.1;
    double a = static_cast<double>(n);
    double fa = n == 0 ? 1.0 : bessel_j(n, a);
    int found = 0;
    while (true) {
        const double b = a + kStep;
        if (b > kMaxBesselArgument) {
            throw Error(ErrorCode::ArgumentOutOfRange, "root search left the supported range");
        }
        const double fb = bessel_j(n, b);
        if (fb == 0.0) {
            if (++found == k) return b;
            fa = -fa;
            a = b;
            continue;
        }
        if ((fa > 0.0) != (fb > 0.0)) {
            if (++found == k) {
                double lo = a, hi = b, flo = fa;
                while (hi - lo > 1e-12) {
                    const double mid = 0.5 * (lo + hi);
                    if (mid <= lo || mid >= hi) break;
                    const double fm = bessel_j(n, mid);
                    if (fm == 0.0) return mid;
                    if ((fm > 0.0) == (flo > 0.0)) {
                        lo = mid;
                        flo = fm;
                    } else {
                        hi = mid;
                    }
                }
                return 0.5 * (lo + hi);
            }
        }
        fa = fb;
        a = b;
    }
}

}  // namespace floquet_zeno

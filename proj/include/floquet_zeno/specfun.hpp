// specfun.hpp — Bessel functions of the first kind, integer order

#pragma once

namespace floquet_zeno {

inline constexpr int kMaxBesselOrder = 1024;
inline constexpr double kMaxBesselArgument = 1e6;

// J_n(x). Ascending series where it does not cancel ((x/2)^2 <= |n| + 1 or
// |x| <= 1), Miller's downward recurrence normalised by J_0 + 2 sum J_2k = 1
// otherwise. Absolute error below 1e-14 for |n| <= 60, |x| <= 50.
// Throws Error{OrderTooLarge} for |n| > 1024, Error{ArgumentOutOfRange}
// for |x| > 1e6 or non-finite x.
double bessel_j(int n, double x);

// k-th positive root of J_n (n >= 0, k >= 1): sign-change bracketing on a
// 0.1 grid followed by bisection to a 1e-12 bracket.
double bessel_j_zero(int n, int k);

}  // namespace floquet_zeno

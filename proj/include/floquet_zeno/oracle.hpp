// oracle.hpp — Exact propagation of the one-quantum Schrodinger equation
//
//   i dc_e/dt = [Omega + A cos(nu t)]/2 c_e + (g/sqrt(N)) sum_k c_k
//   i dc_k/dt = (eps_k - [Omega + A cos(nu t)]/2) c_k + (g/sqrt(N)) c_e
//
// Independent of the Floquet machinery: the drive is evaluated at every
// integrator stage, nothing is averaged or truncated. The integrator works in
// the frame co-rotating with the diagonal energies (an exact phase change of
// variables), which leaves only the g/sqrt(N) coupling to resolve.

#pragma once

#include <complex>
#include <cstddef>
#include <span>
#include <vector>

#include "floquet_zeno/bath.hpp"
#include "floquet_zeno/decay.hpp"
#include "floquet_zeno/params.hpp"

namespace floquet_zeno {

struct OneQuantumState {
    std::complex<double> c_e{1.0, 0.0};
    std::vector<std::complex<double>> c_k;
    double time{0.0};

    double norm_squared() const;
    // TLS excited, waveguide empty
    static OneQuantumState excited(std::size_t n_modes, double time = 0.0);
};

enum class IntegratorMethod {
    DormandPrince5,  // embedded RK 5(4)
    Fehlberg78,      // embedded RK 7(8), for tight tolerances
};

struct IntegratorConfig {
    IntegratorMethod method{IntegratorMethod::DormandPrince5};
    double rel_tol{1e-10};
    double abs_tol{1e-12};
    std::size_t max_steps{5'000'000};
};

// Integrates from initial.time to t_final (either direction: a t_final in the
// past runs the same Hamiltonian path backwards).
// Throws Error{StepLimitExceeded}, Error{NormDrift} (drift > 1e-7) or
// Error{InvalidArgument} (mismatched sizes, non-normalised input, bad config).
OneQuantumState propagate(const SystemParams& params, const MomentumGrid& grid,
                          const OneQuantumState& initial, double t_final,
                          const IntegratorConfig& cfg = {});

// |c_e(t_i)|^2 along one continued propagation from the excited state at t = 0.
SurvivalCurve survival_curve_exact(const SystemParams& params, const MomentumGrid& grid,
                                   std::span<const double> times, const IntegratorConfig& cfg = {});

}  // namespace floquet_zeno

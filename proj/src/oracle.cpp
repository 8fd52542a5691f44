// oracle.cpp — Adaptive Runge-Kutta propagation (Boost.Odeint steppers)

#include "floquet_zeno/oracle.hpp"

#include <boost/numeric/odeint.hpp>

#include <cmath>
#include <functional>
#include <string>

#include "floquet_zeno/error.hpp"

namespace floquet_zeno {

namespace {

namespace ode = boost::numeric::odeint;

using State = std::vector<std::complex<double>>;

constexpr double kNormTolerance = 1e-7;

// Integration runs in the frame rotating with the diagonal part of H(t):
//   c_e = exp(-i theta(t)) a_e,            theta(t) = Omega t/2 + (A/2nu) sin(nu t)
//   c_k = exp(-i (eps_k t - theta(t))) a_k
// which is an exact change of variables. Only the coupling g/sqrt(N) remains
// in the equations of motion, with the drive entering through theta(t) at
// every stage time:
//   i da_e/dt = (g/sqrt N) sum_k exp(i (2 theta - eps_k t)) a_k
//   i da_k/dt = (g/sqrt N) exp(-i (2 theta - eps_k t)) a_e
// Index 0 holds a_e, 1..N hold a_k.
class OneQuantumRhs {
public:
    OneQuantumRhs(const SystemParams& p, const MomentumGrid& grid)
        : omega_(p.omega), amp_(p.drive_amp), freq_(p.drive_freq),
          coupling_(p.g / std::sqrt(static_cast<double>(grid.size()))), energies_(grid.energies),
          phases_(grid.size()) {}

    double theta(double t) const { return 0.5 * omega_ * t + 0.5 * amp_ / freq_ * std::sin(freq_ * t); }

    // exp(-i theta) for c_e and exp(-i (eps_k t - theta)) for c_k
    std::complex<double> frame_phase(std::size_t index, double t) const {
        const double th = theta(t);
        return index == 0 ? std::polar(1.0, -th) : std::polar(1.0, th - energies_[index - 1] * t);
    }

    void operator()(const State& a, State& dadt, double t) {
        constexpr std::complex<double> minus_i{0.0, -1.0};
        const double two_theta = 2.0 * theta(t);
        std::complex<double> bath_sum = 0.0;
        for (std::size_t j = 0; j < energies_.size(); ++j) {
            phases_[j] = std::polar(coupling_, two_theta - energies_[j] * t);
            bath_sum += phases_[j] * a[j + 1];
        }
        dadt[0] = minus_i * bath_sum;
        for (std::size_t j = 0; j < energies_.size(); ++j) dadt[j + 1] = minus_i * std::conj(phases_[j]) * a[0];
    }

private:
    double omega_, amp_, freq_, coupling_;
    std::vector<double> energies_;
    std::vector<std::complex<double>> phases_;  // scratch
};

double norm_squared(const State& c) {
    double s = 0.0;
    for (const auto& z : c) s += std::norm(z);
    return s;
}

template <class Stepper>
void advance(Stepper stepper, OneQuantumRhs& rhs, State& x, double& t, double t_final,
             const IntegratorConfig& cfg) {
    const double direction = t_final >= t ? 1.0 : -1.0;
    double dt = direction * std::min(1e-2, std::abs(t_final - t));
    std::size_t steps = 0;
    while (direction * (t_final - t) > 0.0) {
        if (++steps > cfg.max_steps) {
            throw Error(ErrorCode::StepLimitExceeded,
                        "more than " + std::to_string(cfg.max_steps) + " steps, stopped at t = " + std::to_string(t));
        }
        bool last = false;
        if (direction * (t + dt - t_final) >= 0.0) {
            dt = t_final - t;
            last = true;
        }
        const double t_before = t;
        const auto result = stepper.try_step(std::ref(rhs), x, t, dt);
        if (result == ode::success && last && t != t_final) {
            // t + (t_final - t) may round; pin the endpoint exactly.
            if (std::abs(t - t_final) <= 1e-12 * std::max(1.0, std::abs(t_final))) t = t_final;
        }
        if (result == ode::fail && t == t_before && std::abs(dt) < 1e-14) {
            throw Error(ErrorCode::StepLimitExceeded, "step size underflow at t = " + std::to_string(t));
        }
    }
}

void integrate_segment(OneQuantumRhs& rhs, State& x, double& t, double t_final, const IntegratorConfig& cfg) {
    switch (cfg.method) {
        case IntegratorMethod::DormandPrince5:
            advance(ode::make_controlled<ode::runge_kutta_dopri5<State>>(cfg.abs_tol, cfg.rel_tol), rhs, x, t,
                    t_final, cfg);
            break;
        case IntegratorMethod::Fehlberg78:
            advance(ode::make_controlled<ode::runge_kutta_fehlberg78<State>>(cfg.abs_tol, cfg.rel_tol), rhs, x, t,
                    t_final, cfg);
            break;
    }
    t = t_final;
}

void check_drift(const State& x, double norm0) {
    const double drift = std::abs(norm_squared(x) - norm0);
    if (drift > kNormTolerance) {
        throw Error(ErrorCode::NormDrift, "norm drifted by " + std::to_string(drift));
    }
}

void check_inputs(const MomentumGrid& grid, const OneQuantumState& initial, const IntegratorConfig& cfg) {
    if (initial.c_k.size() != grid.size()) {
        throw Error(ErrorCode::InvalidArgument, "state has " + std::to_string(initial.c_k.size()) +
                                                    " modes, grid has " + std::to_string(grid.size()));
    }
    if (!(cfg.rel_tol > 0.0) || !(cfg.abs_tol > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "integrator tolerances must be positive");
    }
    if (std::abs(initial.norm_squared() - 1.0) > 1e-9) {
        throw Error(ErrorCode::InvalidArgument, "initial state is not normalised");
    }
}

State to_frame(const OneQuantumRhs& rhs, const OneQuantumState& s) {
    State a(s.c_k.size() + 1);
    a[0] = s.c_e / rhs.frame_phase(0, s.time);
    for (std::size_t j = 0; j < s.c_k.size(); ++j) a[j + 1] = s.c_k[j] / rhs.frame_phase(j + 1, s.time);
    return a;
}

OneQuantumState from_frame(const OneQuantumRhs& rhs, const State& a, double t) {
    OneQuantumState s;
    s.c_e = a[0] * rhs.frame_phase(0, t);
    s.c_k.resize(a.size() - 1);
    for (std::size_t j = 0; j + 1 < a.size(); ++j) s.c_k[j] = a[j + 1] * rhs.frame_phase(j + 1, t);
    s.time = t;
    return s;
}

}  // namespace

double OneQuantumState::norm_squared() const {
    double s = std::norm(c_e);
    for (const auto& z : c_k) s += std::norm(z);
    return s;
}

OneQuantumState OneQuantumState::excited(std::size_t n_modes, double time) {
    OneQuantumState s;
    s.c_e = 1.0;
    s.c_k.assign(n_modes, 0.0);
    s.time = time;
    return s;
}

OneQuantumState propagate(const SystemParams& p, const MomentumGrid& grid, const OneQuantumState& initial,
                          double t_final, const IntegratorConfig& cfg) {
    check_inputs(grid, initial, cfg);
    if (!std::isfinite(t_final)) throw Error(ErrorCode::InvalidArgument, "t_final must be finite");

    OneQuantumRhs rhs(p, grid);
    State a = to_frame(rhs, initial);
    const double norm0 = norm_squared(a);
    double t = initial.time;
    integrate_segment(rhs, a, t, t_final, cfg);
    check_drift(a, norm0);
    return from_frame(rhs, a, t_final);
}

SurvivalCurve survival_curve_exact(const SystemParams& p, const MomentumGrid& grid, std::span<const double> times,
                                   const IntegratorConfig& cfg) {
    const auto initial = OneQuantumState::excited(grid.size());
    check_inputs(grid, initial, cfg);
    SurvivalCurve curve;
    curve.method = SurvivalMethod::Oracle;
    curve.times.assign(times.begin(), times.end());
    curve.probabilities.reserve(times.size());

    OneQuantumRhs rhs(p, grid);
    State a = to_frame(rhs, initial);
    double t = initial.time;
    for (std::size_t i = 0; i < times.size(); ++i) {
        if (!(times[i] >= 0.0) || !std::isfinite(times[i]) || (i > 0 && !(times[i] > times[i - 1]))) {
            throw Error(ErrorCode::InvalidArgument, "times must be non-negative and strictly increasing");
        }
        if (times[i] != t) integrate_segment(rhs, a, t, times[i], cfg);
        check_drift(a, 1.0);
        // |c_e| = |a_e|: the frame change is a pure phase
        curve.probabilities.push_back(std::norm(a[0]));
    }
    return curve;
}

}  // namespace floquet_zeno

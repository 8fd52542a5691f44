// params.cpp — Validation and derived quantities

#include "floquet_zeno/params.hpp"

#include <cmath>
#include <cstdlib>
#include <string>

#include "floquet_zeno/error.hpp"

namespace floquet_zeno {

namespace {

void require_finite(double value, const char* field) {
    if (!std::isfinite(value)) {
        throw Error(ErrorCode::NonFinite, std::string(field) + " must be finite");
    }
}

}  // namespace

SystemParams validate(SystemParams p) {
    require_finite(p.omega, "omega");
    require_finite(p.omega_c, "omega_c");
    require_finite(p.xi, "xi");
    require_finite(p.g, "g");
    require_finite(p.drive_amp, "drive_amp");
    require_finite(p.drive_freq, "drive_freq");

    if (p.xi <= 0.0) throw Error(ErrorCode::NonPositive, "xi");
    if (p.drive_freq <= 0.0) throw Error(ErrorCode::NonPositive, "drive_freq");
    if (p.g < 0.0) throw Error(ErrorCode::Negative, "g");
    if (p.drive_amp < 0.0) throw Error(ErrorCode::Negative, "drive_amp");
    if (p.n_cavities < 1) throw Error(ErrorCode::ZeroCavities, "n_cavities must be >= 1");

    p.detuning = p.omega_c - p.omega;
    p.chi = p.drive_amp / p.drive_freq;
    p.period = 2.0 * std::numbers::pi / p.drive_freq;
    return p;
}

Sideband default_sideband(const SystemParams& p) {
    const double x = -p.detuning / p.drive_freq;
    const int lo = static_cast<int>(std::floor(x));
    const int hi = lo + 1;
    const double d_lo = std::abs(p.detuning + lo * p.drive_freq);
    const double d_hi = std::abs(p.detuning + hi * p.drive_freq);
    if (d_lo < d_hi) return {lo};
    if (d_hi < d_lo) return {hi};
    // tie: smaller |n|, then negative
    if (std::abs(lo) != std::abs(hi)) return {std::abs(lo) < std::abs(hi) ? lo : hi};
    return {lo};
}

}  // namespace floquet_zeno

// params.hpp — Physical parameters of the driven TLS + coupled-cavity waveguide
//
// Units: hbar = 1, energies and rates in units of the hopping xi unless the
// caller chooses otherwise.

#pragma once

#include <numbers>

namespace floquet_zeno {

struct SystemParams {
    double omega{10.0};       // TLS splitting Omega
    double omega_c{11.0};     // cavity eigenfrequency
    double xi{1.0};           // inter-cavity hopping (> 0)
    double g{0.25};           // TLS-cavity coupling (>= 0)
    int n_cavities{41};       // N (>= 1)
    double drive_amp{10.0};   // A (>= 0)
    double drive_freq{10.0};  // nu (> 0)

    // Derived quantities, populated by validate().
    double detuning{0.0};  // Delta = omega_c - omega
    double chi{0.0};       // A / nu
    double period{0.0};    // 2 pi / nu
};

// Floquet sideband selecting the near-resonant block (TLS at m = 0, band at m = n).
struct Sideband {
    int n{0};
    friend bool operator==(Sideband, Sideband) = default;
};

// Checks the physical constraints and fills the derived fields.
// Throws Error{NonPositive | Negative | ZeroCavities | NonFinite}.
SystemParams validate(SystemParams params);

// Integer n minimising |Delta + n nu|. Ties go to the smaller |n|, then to
// the negative n.
Sideband default_sideband(const SystemParams& params);

// Detuning of the TLS from the centre of the n-th sideband of the band.
inline double sideband_detuning(const SystemParams& p, Sideband n) {
    return p.detuning + n.n * p.drive_freq;
}

}  // namespace floquet_zeno

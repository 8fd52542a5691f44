// floquet.hpp — Truncated Floquet (Sambe-space) Hamiltonian of the driven TLS
// in the waveguide, its quasi-energies, Floquet-Green coefficients and
// time-averaged transition probabilities.
//
// The matrix is assembled in the Bessel-rotated basis |alpha phi_m>, where
// the diagonal drive is absorbed into the basis:
//   <e phi_m|H_F|e phi_m>  = Omega/2 + m nu
//   <k phi_m|H_F|k phi_m>  = eps_k - Omega/2 + m nu
//   <k phi_m|H_F|e phi_m'> = g J_{m-m'}(chi) / sqrt(N)

#pragma once

#include <Eigen/Dense>

#include <complex>
#include <map>
#include <optional>
#include <utility>
#include <vector>

#include "floquet_zeno/bath.hpp"
#include "floquet_zeno/params.hpp"

namespace floquet_zeno {

// System label of the one-quantum basis: the excited TLS |e>, or a photon
// in momentum mode j (|k_j>).
struct SystemLabel {
    static constexpr int kExcited = -1;
    int mode{kExcited};

    static constexpr SystemLabel excited() { return {kExcited}; }
    static constexpr SystemLabel photon(int j) { return {j}; }
    constexpr bool is_excited() const { return mode == kExcited; }
    friend auto operator<=>(SystemLabel, SystemLabel) = default;
};

struct FloquetBasisIndex {
    SystemLabel alpha;
    int m{0};
    friend auto operator<=>(const FloquetBasisIndex&, const FloquetBasisIndex&) = default;
};

struct FloquetMatrix {
    int truncation{0};  // M, Fourier indices |m| <= M (0 for the reduced matrix)
    int n_modes{0};     // N
    double drive_freq{0.0};
    std::vector<FloquetBasisIndex> basis;  // row index -> (alpha, m)
    Eigen::MatrixXcd entries;

    Eigen::Index dim() const { return entries.rows(); }
    std::optional<Eigen::Index> index_of(const FloquetBasisIndex& b) const;

    // Rebuilds the (alpha, m) -> row lookup; called by the builders.
    void index_basis();

private:
    std::map<FloquetBasisIndex, Eigen::Index> lookup_;
};

struct QuasiEnergySpectrum {
    Eigen::VectorXd eigenvalues;   // ascending
    Eigen::MatrixXcd eigenvectors; // columns aligned with eigenvalues
};

// max(8, ceil(chi) + 6, |n| + 4)
int default_truncation(const SystemParams& params, Sideband n);

// Full truncated H_F of dimension (N+1)(2M+1). Row index of (alpha, m) is
// (m + M)(N + 1) + (alpha.is_excited() ? 0 : 1 + alpha.mode).
// Throws Error{TruncationTooSmall} unless the default sideband lies strictly
// inside the truncation (M >= |n| + 1).
FloquetMatrix build_floquet_matrix(const SystemParams& params, const MomentumGrid& grid,
                                   int truncation);

// Throws Error{EigenFailure}.
QuasiEnergySpectrum quasi_energies(const FloquetMatrix& fm);

// Near-resonant (N+1)-dimensional block: TLS at m = 0, band at m = n,
// coupled by g J_n(chi) / sqrt(N). Basis order: (e, 0), (k_0, n), ...
FloquetMatrix reduced_hamiltonian(const SystemParams& params, const MomentumGrid& grid, Sideband n);

// <beta| (E - H_F)^{-1} |alpha0> by a direct linear solve, Im E > 0.
// Throws Error{SingularResolvent} if the relative residual exceeds 1e-8,
// Error{InvalidArgument} for unknown basis states or Im E <= 0.
std::complex<double> green_coefficient(const FloquetMatrix& fm, std::complex<double> energy,
                                       const FloquetBasisIndex& beta,
                                       const FloquetBasisIndex& alpha0);

// Regulator eta = kGreenRegulator * xi used when only a real energy is given.
inline constexpr double kGreenRegulator = 1e-8;

// Real-axis energy, evaluated at E + i kGreenRegulator xi.
std::complex<double> green_coefficient(const FloquetMatrix& fm, double energy, double xi,
                                       const FloquetBasisIndex& beta,
                                       const FloquetBasisIndex& alpha0);

// Propagation in the extended space via one eigen-decomposition.
class FloquetPropagator {
public:
    explicit FloquetPropagator(FloquetMatrix fm);

    const FloquetMatrix& matrix() const { return fm_; }
    const QuasiEnergySpectrum& spectrum() const { return spectrum_; }

    // exp(-i H_F t) |alpha, 0>
    Eigen::VectorXcd evolve(SystemLabel alpha, double t) const;

    // sum_n |<beta n| exp(-i H_F t) |alpha 0>|^2
    double transition_probability(SystemLabel alpha, SystemLabel beta, double t) const;

private:
    FloquetMatrix fm_;
    QuasiEnergySpectrum spectrum_;
};

double averaged_transition_probability(const FloquetMatrix& fm, SystemLabel alpha,
                                       SystemLabel beta, double t);

// Eigenvectors whose weight on the outermost `guard` Fourier blocks at each
// end is below `weight_tol`: these are insensitive to the truncation.
std::vector<bool> interior_states(const FloquetMatrix& fm, const QuasiEnergySpectrum& spectrum,
                                  int guard, double weight_tol = 1e-12);

// Weight-averaged Fourier index of each eigenvector.
Eigen::VectorXd mean_fourier_index(const FloquetMatrix& fm, const QuasiEnergySpectrum& spectrum);

struct ConvergedSpectrum {
    FloquetMatrix matrix;
    QuasiEnergySpectrum spectrum;
    double max_shift{0.0};  // largest interior shift at the final doubling
};

// Starts from default_truncation and doubles M until the interior
// eigenvalues move less than `tol`; gives up (returning the last result)
// beyond max_truncation.
ConvergedSpectrum converge_spectrum(const SystemParams& params, const MomentumGrid& grid,
                                    Sideband n, double tol = 1e-8, int max_truncation = 64);

}  // namespace floquet_zeno

// floquet.cpp — Floquet matrix assembly, diagonalisation and propagation

#include "floquet_zeno/floquet.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "floquet_zeno/error.hpp"
#include "floquet_zeno/specfun.hpp"

namespace floquet_zeno {

namespace {

void check_hermitian(const Eigen::MatrixXcd& h) {
    const double defect = (h - h.adjoint()).cwiseAbs().maxCoeff();
    if (defect > 1e-15) {
        throw Error(ErrorCode::EigenFailure,
                    "assembled Floquet matrix is not Hermitian (defect " + std::to_string(defect) + ")");
    }
}

Eigen::Index row_of(const FloquetMatrix& fm, const FloquetBasisIndex& b) {
    const auto idx = fm.index_of(b);
    if (!idx) {
        throw Error(ErrorCode::InvalidArgument,
                    "basis state (mode " + std::to_string(b.alpha.mode) + ", m " + std::to_string(b.m) +
                        ") is not part of the Floquet matrix");
    }
    return *idx;
}

}  // namespace

std::optional<Eigen::Index> FloquetMatrix::index_of(const FloquetBasisIndex& b) const {
    const auto it = lookup_.find(b);
    if (it == lookup_.end()) return std::nullopt;
    return it->second;
}

void FloquetMatrix::index_basis() {
    lookup_.clear();
    for (std::size_t i = 0; i < basis.size(); ++i) {
        lookup_.emplace(basis[i], static_cast<Eigen::Index>(i));
    }
}

int default_truncation(const SystemParams& p, Sideband n) {
    return std::max({8, static_cast<int>(std::ceil(p.chi)) + 6, std::abs(n.n) + 4});
}

FloquetMatrix build_floquet_matrix(const SystemParams& p, const MomentumGrid& grid, int truncation) {
    const int needed = std::abs(default_sideband(p).n) + 1;
    if (truncation < needed) {
        throw Error(ErrorCode::TruncationTooSmall,
                    "M = " + std::to_string(truncation) + " but at least " + std::to_string(needed) +
                        " is required");
    }
    const int n_modes = static_cast<int>(grid.size());
    const int block = n_modes + 1;
    const int blocks = 2 * truncation + 1;
    const Eigen::Index dim = static_cast<Eigen::Index>(block) * blocks;

    FloquetMatrix fm;
    fm.truncation = truncation;
    fm.n_modes = n_modes;
    fm.drive_freq = p.drive_freq;
    fm.basis.reserve(static_cast<std::size_t>(dim));
    for (int m = -truncation; m <= truncation; ++m) {
        fm.basis.push_back({SystemLabel::excited(), m});
        for (int j = 0; j < n_modes; ++j) fm.basis.push_back({SystemLabel::photon(j), m});
    }
    fm.index_basis();

    // J_q(chi) for q = -2M..2M
    std::vector<double> bessel(static_cast<std::size_t>(4 * truncation + 1));
    for (int q = -2 * truncation; q <= 2 * truncation; ++q) {
        bessel[static_cast<std::size_t>(q + 2 * truncation)] = bessel_j(q, p.chi);
    }
    const double coupling = p.g / std::sqrt(static_cast<double>(n_modes));

    fm.entries = Eigen::MatrixXcd::Zero(dim, dim);
    for (int m = -truncation; m <= truncation; ++m) {
        const Eigen::Index base = static_cast<Eigen::Index>(m + truncation) * block;
        fm.entries(base, base) = 0.5 * p.omega + m * p.drive_freq;
        for (int j = 0; j < n_modes; ++j) {
            fm.entries(base + 1 + j, base + 1 + j) = grid.energies[j] - 0.5 * p.omega + m * p.drive_freq;
        }
    }
    if (coupling != 0.0) {
        for (int m = -truncation; m <= truncation; ++m) {      // photon block
            for (int mp = -truncation; mp <= truncation; ++mp) {  // TLS block
                const double v = coupling * bessel[static_cast<std::size_t>(m - mp + 2 * truncation)];
                if (v == 0.0) continue;
                const Eigen::Index e_row = static_cast<Eigen::Index>(mp + truncation) * block;
                const Eigen::Index k_base = static_cast<Eigen::Index>(m + truncation) * block + 1;
                for (int j = 0; j < n_modes; ++j) {
                    fm.entries(k_base + j, e_row) = v;
                    fm.entries(e_row, k_base + j) = v;
                }
            }
        }
    }
    check_hermitian(fm.entries);
    return fm;
}

QuasiEnergySpectrum quasi_energies(const FloquetMatrix& fm) {
    QuasiEnergySpectrum out;
    if (fm.entries.imag().cwiseAbs().maxCoeff() == 0.0) {
        // Real symmetric fast path (the Bessel-rotated basis keeps every entry real).
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> solver(fm.entries.real());
        if (solver.info() != Eigen::Success) {
            throw Error(ErrorCode::EigenFailure, "symmetric eigensolver did not converge");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors().cast<std::complex<double>>();
    } else {
        Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> solver(fm.entries);
        if (solver.info() != Eigen::Success) {
            throw Error(ErrorCode::EigenFailure, "Hermitian eigensolver did not converge");
        }
        out.eigenvalues = solver.eigenvalues();
        out.eigenvectors = solver.eigenvectors();
    }
    return out;
}

FloquetMatrix reduced_hamiltonian(const SystemParams& p, const MomentumGrid& grid, Sideband n) {
    const int n_modes = static_cast<int>(grid.size());
    FloquetMatrix fm;
    fm.truncation = 0;
    fm.n_modes = n_modes;
    fm.drive_freq = p.drive_freq;
    fm.basis.push_back({SystemLabel::excited(), 0});
    for (int j = 0; j < n_modes; ++j) fm.basis.push_back({SystemLabel::photon(j), n.n});
    fm.index_basis();

    const double v = p.g * bessel_j(n.n, p.chi) / std::sqrt(static_cast<double>(n_modes));
    fm.entries = Eigen::MatrixXcd::Zero(n_modes + 1, n_modes + 1);
    fm.entries(0, 0) = 0.5 * p.omega;
    for (int j = 0; j < n_modes; ++j) {
        fm.entries(1 + j, 1 + j) = grid.energies[j] - 0.5 * p.omega + n.n * p.drive_freq;
        fm.entries(1 + j, 0) = v;
        fm.entries(0, 1 + j) = v;
    }
    check_hermitian(fm.entries);
    return fm;
}

std::complex<double> green_coefficient(const FloquetMatrix& fm, double energy, double xi,
                                       const FloquetBasisIndex& beta,
                                       const FloquetBasisIndex& alpha0) {
    return green_coefficient(fm, {energy, kGreenRegulator * xi}, beta, alpha0);
}

std::complex<double> green_coefficient(const FloquetMatrix& fm, std::complex<double> energy,
                                       const FloquetBasisIndex& beta,
                                       const FloquetBasisIndex& alpha0) {
    if (!(energy.imag() > 0.0)) {
        throw Error(ErrorCode::InvalidArgument, "resolvent needs Im E > 0");
    }
    const Eigen::Index src = row_of(fm, alpha0);
    const Eigen::Index dst = row_of(fm, beta);

    const Eigen::Index dim = fm.dim();
    Eigen::MatrixXcd shifted = -fm.entries;
    shifted.diagonal().array() += energy;
    Eigen::VectorXcd rhs = Eigen::VectorXcd::Zero(dim);
    rhs(src) = 1.0;

    const Eigen::PartialPivLU<Eigen::MatrixXcd> lu(shifted);
    const Eigen::VectorXcd x = lu.solve(rhs);
    const double residual = (shifted * x - rhs).norm();
    const double scale = shifted.norm() * x.norm() + rhs.norm();
    if (!std::isfinite(residual) || residual > 1e-8 * scale) {
        throw Error(ErrorCode::SingularResolvent,
                    "relative residual " + std::to_string(residual / scale));
    }
    return x(dst);
}

FloquetPropagator::FloquetPropagator(FloquetMatrix fm) : fm_(std::move(fm)), spectrum_(quasi_energies(fm_)) {}

Eigen::VectorXcd FloquetPropagator::evolve(SystemLabel alpha, double t) const {
    const Eigen::Index src = row_of(fm_, {alpha, 0});
    const Eigen::MatrixXcd& v = spectrum_.eigenvectors;
    Eigen::VectorXcd coeff = v.row(src).adjoint();
    for (Eigen::Index i = 0; i < coeff.size(); ++i) {
        coeff(i) *= std::polar(1.0, -spectrum_.eigenvalues(i) * t);
    }
    return v * coeff;
}

double FloquetPropagator::transition_probability(SystemLabel alpha, SystemLabel beta, double t) const {
    const Eigen::VectorXcd psi = evolve(alpha, t);
    double total = 0.0;
    for (std::size_t i = 0; i < fm_.basis.size(); ++i) {
        if (fm_.basis[i].alpha == beta) total += std::norm(psi(static_cast<Eigen::Index>(i)));
    }
    return total;
}

double averaged_transition_probability(const FloquetMatrix& fm, SystemLabel alpha, SystemLabel beta,
                                       double t) {
    return FloquetPropagator(fm).transition_probability(alpha, beta, t);
}

std::vector<bool> interior_states(const FloquetMatrix& fm, const QuasiEnergySpectrum& spectrum,
                                  int guard, double weight_tol) {
    const Eigen::Index dim = fm.dim();
    std::vector<bool> interior(static_cast<std::size_t>(dim), false);
    const int limit = fm.truncation - guard;
    for (Eigen::Index col = 0; col < dim; ++col) {
        double edge_weight = 0.0;
        for (Eigen::Index row = 0; row < dim; ++row) {
            if (std::abs(fm.basis[static_cast<std::size_t>(row)].m) > limit) {
                edge_weight += std::norm(spectrum.eigenvectors(row, col));
            }
        }
        interior[static_cast<std::size_t>(col)] = edge_weight < weight_tol;
    }
    return interior;
}

Eigen::VectorXd mean_fourier_index(const FloquetMatrix& fm, const QuasiEnergySpectrum& spectrum) {
    const Eigen::Index dim = fm.dim();
    Eigen::VectorXd out = Eigen::VectorXd::Zero(dim);
    for (Eigen::Index col = 0; col < dim; ++col) {
        for (Eigen::Index row = 0; row < dim; ++row) {
            out(col) += fm.basis[static_cast<std::size_t>(row)].m * std::norm(spectrum.eigenvectors(row, col));
        }
    }
    return out;
}

ConvergedSpectrum converge_spectrum(const SystemParams& p, const MomentumGrid& grid, Sideband n,
                                    double tol, int max_truncation) {
    int m = default_truncation(p, n);
    const int guard = std::max(2, static_cast<int>(std::ceil(p.chi)) + 2);
    FloquetMatrix current = build_floquet_matrix(p, grid, m);
    QuasiEnergySpectrum current_spec = quasi_energies(current);
    double shift = 0.0;
    while (true) {
        const int next_m = 2 * m;
        FloquetMatrix next = build_floquet_matrix(p, grid, next_m);
        QuasiEnergySpectrum next_spec = quasi_energies(next);

        const auto interior = interior_states(current, current_spec, std::min(guard, m - 1));
        const auto& ev = next_spec.eigenvalues;
        shift = 0.0;
        for (Eigen::Index i = 0; i < current_spec.eigenvalues.size(); ++i) {
            if (!interior[static_cast<std::size_t>(i)]) continue;
            const double e = current_spec.eigenvalues(i);
            const auto* it = std::lower_bound(ev.data(), ev.data() + ev.size(), e);
            double best = std::numeric_limits<double>::infinity();
            if (it != ev.data() + ev.size()) best = std::min(best, std::abs(*it - e));
            if (it != ev.data()) best = std::min(best, std::abs(*(it - 1) - e));
            shift = std::max(shift, best);
        }
        if (shift < tol || next_m > max_truncation) {
            return {std::move(current), std::move(current_spec), shift};
        }
        m = next_m;
        current = std::move(next);
        current_spec = std::move(next_spec);
    }
}

}  // namespace floquet_zeno

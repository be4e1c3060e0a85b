// su2.hpp
// Schwinger two-boson realization of SU(2), Wigner-d elements and rotation
// blocks on fixed-photon-number sectors.
//
// Labels carry doubled integers (two_j, two_m). A two-mode Fock state |n, n'>
// is |j, m> with j = (n+n')/2 and m = (n-n')/2; J_+ = a^dag b. Matrices on a
// sector of total photon number N are indexed by the a-mode count n = j + m,
// so row/column 0 is m = -j.

#pragma once

#include <cmath>
#include <string>
#include <utility>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>

#include "noonmap/core.hpp"

namespace noonmap {

struct AngularMomentumLabel {
    int two_j = 0;
    int two_m = 0;

    bool valid() const noexcept {
        return two_j >= 0 && two_m >= -two_j && two_m <= two_j && ((two_j - two_m) % 2 == 0);
    }
    double j() const noexcept { return 0.5 * two_j; }
    double m() const noexcept { return 0.5 * two_m; }
    bool operator==(const AngularMomentumLabel&) const = default;
};

inline AngularMomentumLabel fock_to_jm(int n, int n_prime) {
    if (n < 0 || n_prime < 0) throw DomainError("photon numbers must be nonnegative");
    return {n + n_prime, n - n_prime};
}

inline std::pair<int, int> jm_to_fock(const AngularMomentumLabel& label) {
    if (!label.valid()) throw DomainError("invalid angular momentum label");
    return {(label.two_j + label.two_m) / 2, (label.two_j - label.two_m) / 2};
}

namespace detail {

inline double log_factorial(int n) {
    static const std::vector<double> table = [] {
        std::vector<double> t(1024);
        t[0] = 0.0;
        for (std::size_t k = 1; k < t.size(); ++k) t[k] = t[k - 1] + std::log(static_cast<double>(k));
        return t;
    }();
    if (n < 0) throw DomainError("log_factorial of a negative integer");
    if (static_cast<std::size_t>(n) < table.size()) return table[static_cast<std::size_t>(n)];
    return std::lgamma(n + 1.0);
}

inline void check_label(int two_j, int two_m) {
    if (!AngularMomentumLabel{two_j, two_m}.valid())
        throw DomainError("invalid label 2j=" + std::to_string(two_j) + " 2m=" + std::to_string(two_m));
}

// Finite Jacobi-type sum for d^j_{m',m}(beta); valid on either branch.
inline double wigner_d_sum(int two_j, int two_mp, int two_m, double beta) {
    const int jpm = (two_j + two_m) / 2;
    const int jmm = (two_j - two_m) / 2;
    const int jpmp = (two_j + two_mp) / 2;
    const int jmmp = (two_j - two_mp) / 2;
    const int mp_minus_m = (two_mp - two_m) / 2;
    const double c = std::cos(0.5 * beta);
    const double s = std::sin(0.5 * beta);
    const double log_pref =
        0.5 * (log_factorial(jpmp) + log_factorial(jmmp) + log_factorial(jpm) + log_factorial(jmm));
    const int k_lo = std::max(0, -mp_minus_m);
    const int k_hi = std::min(jpm, jmmp);
    double sum = 0.0;
    for (int k = k_lo; k <= k_hi; ++k) {
        const double log_mag = log_pref - log_factorial(jpm - k) - log_factorial(k) - log_factorial(jmmp - k) -
                               log_factorial(k + mp_minus_m);
        const int pc = two_j - 2 * k - mp_minus_m;
        const int ps = 2 * k + mp_minus_m;
        const double sign = ((k + mp_minus_m) % 2 == 0) ? 1.0 : -1.0;
        sum += sign * std::exp(log_mag) * std::pow(c, pc) * std::pow(s, ps);
    }
    return sum;
}

}  // namespace detail

// d^j_{m',m}(beta) = <j,m'| exp(-i beta J_y) |j,m>.
inline double wigner_d(int two_j, int two_mp, int two_m, double beta) {
    detail::check_label(two_j, two_mp);
    detail::check_label(two_j, two_m);
    if (two_mp < two_m) return detail::wigner_d_sum(two_j, two_m, two_mp, -beta);
    return detail::wigner_d_sum(two_j, two_mp, two_m, beta);
}

inline Eigen::MatrixXd wigner_d_block(int two_j, double beta) {
    if (two_j < 0) throw DomainError("negative 2j");
    const int d = two_j + 1;
    Eigen::MatrixXd out(d, d);
    for (int r = 0; r < d; ++r)
        for (int c = 0; c < d; ++c) out(r, c) = wigner_d(two_j, 2 * r - two_j, 2 * c - two_j, beta);
    return out;
}

// <j,m'| exp(-i theta J_x) |j,m> = i^{m'-m} d^j_{m',m}(theta).
inline complex jx_bs_element(int two_j, int two_mp, int two_m, double theta) {
    const double d = wigner_d(two_j, two_mp, two_m, theta);
    return i_pow((two_mp - two_m) / 2) * d;
}

// f^{(n,m)}_p(theta) = d^{(n+m)/2}_{p-(n+m)/2, (n-m)/2}(theta).
inline double f_coefficient(int n, int m, int p, double theta) {
    if (n < 0 || m < 0) throw DomainError("photon numbers must be nonnegative");
    if (p < 0 || p > n + m) throw DomainError("f-coefficient index p out of range");
    return wigner_d(n + m, 2 * p - (n + m), n - m, theta);
}

struct SU2GeneratorMatrices {
    Eigen::MatrixXcd jx;
    Eigen::MatrixXcd jy;
    Eigen::MatrixXcd jz;
};

inline SU2GeneratorMatrices generator_matrices(int two_j) {
    if (two_j < 0) throw DomainError("negative 2j");
    const int d = two_j + 1;
    const double j = 0.5 * two_j;
    Eigen::MatrixXcd jp = Eigen::MatrixXcd::Zero(d, d);
    Eigen::MatrixXcd jz = Eigen::MatrixXcd::Zero(d, d);
    for (int k = 0; k < d; ++k) {
        const double m = -j + k;
        jz(k, k) = m;
        if (k + 1 < d) jp(k + 1, k) = std::sqrt(j * (j + 1.0) - m * (m + 1.0));
    }
    const Eigen::MatrixXcd jm = jp.adjoint();
    return {0.5 * (jp + jm), (jp - jm) / (2.0 * I), jz};
}

// exp(-i angle G) for Hermitian G, through its eigendecomposition.
inline Eigen::MatrixXcd expm_oracle(const Eigen::MatrixXcd& generator, double angle) {
    if (generator.rows() != generator.cols()) throw DomainError("expm_oracle needs a square matrix");
    const double scale = std::max(1.0, generator.cwiseAbs().maxCoeff());
    if ((generator - generator.adjoint()).cwiseAbs().maxCoeff() > 1e-12 * scale)
        throw DomainError("expm_oracle needs a Hermitian generator");
    Eigen::SelfAdjointEigenSolver<Eigen::MatrixXcd> es(generator);
    const Eigen::VectorXcd phases =
        es.eigenvalues().unaryExpr([angle](double lam) { return std::exp(complex{0.0, -angle * lam}); });
    return es.eigenvectors() * phases.asDiagonal() * es.eigenvectors().adjoint();
}

enum class Axis { x, y, z };

inline const char* to_string(Axis axis) {
    switch (axis) {
        case Axis::x: return "x";
        case Axis::y: return "y";
        default: return "z";
    }
}

// exp(i angle sigma_axis / 2) on the one-photon sector, basis (|1,0>, |0,1>).
// This is the mode transformation u with U a^dag U^dag = u00 a^dag + u10 b^dag.
inline Eigen::Matrix2cd single_photon_matrix(Axis axis, double angle) {
    const double c = std::cos(0.5 * angle);
    const double s = std::sin(0.5 * angle);
    Eigen::Matrix2cd u;
    switch (axis) {
        case Axis::x: u << c, I * s, I * s, c; break;
        case Axis::y: u << c, s, -s, c; break;
        default: u << std::exp(I * (0.5 * angle)), 0.0, 0.0, std::exp(-I * (0.5 * angle)); break;
    }
    return u;
}

// Sector blocks B_N(k, n) = <k, N-k| U |n, N-n> for N = 0..max_total, with U
// the passive two-mode unitary whose one-photon action is u. Built by adding
// one photon at a time, so no alternating sums appear. Each column uses
//   N |n, N-n> = sqrt(n) a^dag |n-1, N-n> + sqrt(N-n) b^dag |n, N-n-1>,
// which keeps the divisor at N; raising along one mode only divides by
// sqrt(n) and loses unitarity past N ~ 40.
inline std::vector<Eigen::MatrixXcd> rotation_blocks(const Eigen::Matrix2cd& u, int max_total) {
    if (max_total < 0) throw DomainError("negative photon number");
    std::vector<Eigen::MatrixXcd> blocks;
    blocks.reserve(static_cast<std::size_t>(max_total) + 1);
    blocks.emplace_back(Eigen::MatrixXcd::Ones(1, 1));
    for (int N = 1; N <= max_total; ++N) {
        const Eigen::MatrixXcd& prev = blocks.back();
        Eigen::MatrixXcd cur = Eigen::MatrixXcd::Zero(N + 1, N + 1);
        auto raise = [&](int src_col, complex ca, complex cb, double weight, int dst_col) {
            for (int k = 0; k < N; ++k) {
                const complex v = prev(k, src_col) * weight;
                cur(k + 1, dst_col) += ca * std::sqrt(static_cast<double>(k + 1)) * v;
                cur(k, dst_col) += cb * std::sqrt(static_cast<double>(N - k)) * v;
            }
        };
        for (int n = 0; n <= N; ++n) {
            if (n > 0) raise(n - 1, u(0, 0), u(1, 0), std::sqrt(static_cast<double>(n)) / N, n);
            if (n < N) raise(n, u(0, 1), u(1, 1), std::sqrt(static_cast<double>(N - n)) / N, n);
        }
        blocks.push_back(std::move(cur));
    }
    return blocks;
}

// Same block as rotation_blocks for exp(i angle J_axis), via expm_oracle.
inline Eigen::MatrixXcd rotation_block_oracle(Axis axis, double angle, int N) {
    const auto g = generator_matrices(N);
    const Eigen::MatrixXcd& gen = axis == Axis::x ? g.jx : axis == Axis::y ? g.jy : g.jz;
    return expm_oracle(gen, -angle);
}

}  // namespace noonmap

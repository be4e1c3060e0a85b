// fock.hpp
// Truncated Fock-space states for one and two bosonic modes.
//
// Two-mode amplitudes are stored as C(n, n') with n the a-mode photon number
// (rows) and n' the b-mode photon number (columns). Every flattened form uses
// index = n * (n_cut + 1) + n'.

#pragma once

#include <algorithm>
#include <cmath>
#include <span>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <boost/math/special_functions/gamma.hpp>

#include "noonmap/core.hpp"

namespace noonmap {

class SingleModeState {
public:
    SingleModeState() : amps_(1, complex{1.0, 0.0}) {}

    // Takes raw amplitudes over n = 0..size-1. When normalize is set the vector
    // is rescaled to unit norm; leakage records weight lost to truncation.
    static SingleModeState from_amplitudes(std::vector<complex> amps, bool normalize = true,
                                           double leakage = 0.0) {
        if (amps.empty()) throw DomainError("single-mode state needs at least one amplitude");
        SingleModeState s;
        s.amps_ = std::move(amps);
        s.leakage_ = leakage;
        if (normalize) {
            const double n2 = s.norm_squared();
            if (!(n2 > 0.0)) throw DomainError("cannot normalize the zero vector");
            const double scale = 1.0 / std::sqrt(n2);
            for (auto& a : s.amps_) a *= scale;
        }
        return s;
    }

    int n_cut() const noexcept { return static_cast<int>(amps_.size()) - 1; }
    double leakage() const noexcept { return leakage_; }
    std::span<const complex> amps() const noexcept { return amps_; }
    complex operator[](int n) const { return amps_.at(static_cast<std::size_t>(n)); }

    double norm_squared() const noexcept {
        double s = 0.0;
        for (const auto& a : amps_) s += std::norm(a);
        return s;
    }

    double mean_photon_number() const noexcept {
        double s = 0.0;
        for (std::size_t n = 0; n < amps_.size(); ++n) s += static_cast<double>(n) * std::norm(amps_[n]);
        return s / norm_squared();
    }

    Eigen::VectorXcd vector() const {
        return Eigen::Map<const Eigen::VectorXcd>(amps_.data(), static_cast<Eigen::Index>(amps_.size()));
    }

private:
    std::vector<complex> amps_;
    double leakage_ = 0.0;
};

class TwoModeState {
public:
    explicit TwoModeState(int n_cut = 0) : amps_(Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1)) {
        if (n_cut < 0) throw CutoffError("negative cutoff");
    }

    static TwoModeState from_matrix(Eigen::MatrixXcd amps, bool normalize = false,
                                    double truncation_loss = 0.0) {
        if (amps.rows() != amps.cols() || amps.rows() == 0)
            throw DomainError("two-mode amplitude grid must be square and non-empty");
        TwoModeState s;
        s.amps_ = std::move(amps);
        s.truncation_loss_ = truncation_loss;
        if (normalize) {
            const double n2 = s.amps_.squaredNorm();
            if (!(n2 > 0.0)) throw DomainError("cannot normalize the zero state");
            s.amps_ /= std::sqrt(n2);
        }
        return s;
    }

    static TwoModeState from_flat(const Eigen::VectorXcd& flat, int n_cut, double truncation_loss = 0.0) {
        const int d = n_cut + 1;
        if (flat.size() != static_cast<Eigen::Index>(d) * d)
            throw DomainError("flattened vector length does not match (n_cut+1)^2");
        Eigen::MatrixXcd m(d, d);
        for (int n = 0; n < d; ++n)
            for (int np = 0; np < d; ++np) m(n, np) = flat(static_cast<Eigen::Index>(n) * d + np);
        return from_matrix(std::move(m), false, truncation_loss);
    }

    int n_cut() const noexcept { return static_cast<int>(amps_.rows()) - 1; }
    int dim() const noexcept { return static_cast<int>(amps_.rows()); }
    const Eigen::MatrixXcd& amps() const noexcept { return amps_; }
    complex operator()(int n, int np) const { return amps_(n, np); }
    double truncation_loss() const noexcept { return truncation_loss_; }
    double norm_squared() const noexcept { return amps_.squaredNorm(); }

    TwoModeState normalized() const { return from_matrix(amps_, true, truncation_loss_); }

    Eigen::VectorXcd flatten() const {
        const int d = dim();
        Eigen::VectorXcd v(static_cast<Eigen::Index>(d) * d);
        for (int n = 0; n < d; ++n)
            for (int np = 0; np < d; ++np) v(static_cast<Eigen::Index>(n) * d + np) = amps_(n, np);
        return v;
    }

    // Probability on each anti-diagonal n + n' = N, N = 0..2*n_cut.
    std::vector<double> anti_diagonal_norms() const {
        std::vector<double> out(static_cast<std::size_t>(2 * n_cut() + 1), 0.0);
        for (int n = 0; n < dim(); ++n)
            for (int np = 0; np < dim(); ++np) out[static_cast<std::size_t>(n + np)] += std::norm(amps_(n, np));
        return out;
    }

private:
    Eigen::MatrixXcd amps_;
    double truncation_loss_ = 0.0;
};

class JointDistribution {
public:
    explicit JointDistribution(Eigen::MatrixXd probs) : probs_(std::move(probs)) {}

    int n_cut() const noexcept { return static_cast<int>(probs_.rows()) - 1; }
    double operator()(int n, int np) const { return probs_(n, np); }
    const Eigen::MatrixXd& probs() const noexcept { return probs_; }
    double total() const noexcept { return probs_.sum(); }

private:
    Eigen::MatrixXd probs_;
};

namespace detail {

inline void check_cutoff(int n_cut) {
    if (n_cut < 0) throw CutoffError("cutoff must be nonnegative");
}

// P(X > n_cut) for X ~ Poisson(mean).
inline double poisson_tail(double mean, int n_cut) {
    if (mean <= 0.0) return 0.0;
    return boost::math::gamma_p(static_cast<double>(n_cut) + 1.0, mean);
}

inline int required_poisson_cutoff(double mean, double tolerance) {
    int k = static_cast<int>(std::ceil(mean));
    while (poisson_tail(mean, k) >= tolerance) ++k;
    return k;
}

inline std::vector<complex> coherent_amplitudes(complex alpha, int n_cut) {
    std::vector<complex> amps(static_cast<std::size_t>(n_cut) + 1, complex{0.0, 0.0});
    const double r = std::abs(alpha);
    if (r == 0.0) {
        amps[0] = 1.0;
        return amps;
    }
    const double log_r = std::log(r);
    const double theta = std::arg(alpha);
    for (int n = 0; n <= n_cut; ++n) {
        const double log_mag = -0.5 * r * r + n * log_r - 0.5 * std::lgamma(n + 1.0);
        amps[static_cast<std::size_t>(n)] = std::polar(std::exp(log_mag), n * theta);
    }
    return amps;
}

}  // namespace detail

inline SingleModeState make_fock(int n, int n_cut) {
    detail::check_cutoff(n_cut);
    if (n < 0 || n > n_cut)
        throw CutoffError("Fock index " + std::to_string(n) + " outside cutoff " + std::to_string(n_cut));
    std::vector<complex> amps(static_cast<std::size_t>(n_cut) + 1, complex{0.0, 0.0});
    amps[static_cast<std::size_t>(n)] = 1.0;
    return SingleModeState::from_amplitudes(std::move(amps), false);
}

inline SingleModeState make_vacuum(int n_cut) { return make_fock(0, n_cut); }

// amps_n = e^{-|alpha|^2/2} alpha^n / sqrt(n!), renormalized over the truncation.
inline SingleModeState make_coherent(complex alpha, int n_cut,
                                     double leakage_tolerance = default_leakage_tolerance) {
    detail::check_cutoff(n_cut);
    const double mean = std::norm(alpha);
    const double leak = detail::poisson_tail(mean, n_cut);
    if (leak >= leakage_tolerance) {
        const int need = detail::required_poisson_cutoff(mean, leakage_tolerance);
        throw TruncationError("coherent state |alpha|^2=" + std::to_string(mean) + " leaks " +
                                  std::to_string(leak) + " beyond cutoff " + std::to_string(n_cut) +
                                  "; requires n_cut >= " + std::to_string(need),
                              need);
    }
    return SingleModeState::from_amplitudes(detail::coherent_amplitudes(alpha, n_cut), true, leak);
}

// Normalized |alpha> + parity_sign |-alpha>.
inline SingleModeState make_cat(complex alpha, int parity_sign, int n_cut,
                                double leakage_tolerance = default_leakage_tolerance) {
    detail::check_cutoff(n_cut);
    if (parity_sign != 1 && parity_sign != -1) throw DomainError("parity_sign must be +1 or -1");
    if (alpha == complex{0.0, 0.0} && parity_sign == -1)
        throw DomainError("odd cat with alpha = 0 is the zero vector");
    const double mean = std::norm(alpha);
    // p_n = 2 pmf(n) / (1 + s e^{-2|alpha|^2}) on the allowed parity, so the
    // Poisson tail scaled by that factor bounds the cat tail.
    const double leak =
        2.0 * detail::poisson_tail(mean, n_cut) / (1.0 + parity_sign * std::exp(-2.0 * mean));
    if (leak >= leakage_tolerance) {
        int need = n_cut;
        while (2.0 * detail::poisson_tail(mean, need) / (1.0 + parity_sign * std::exp(-2.0 * mean)) >=
               leakage_tolerance)
            ++need;
        throw TruncationError("cat state leaks " + std::to_string(leak) + " beyond cutoff " +
                                  std::to_string(n_cut) + "; requires n_cut >= " + std::to_string(need),
                              need);
    }
    auto amps = detail::coherent_amplitudes(alpha, n_cut);
    for (int n = 0; n <= n_cut; ++n) {
        const bool odd = (n % 2) != 0;
        const bool keep = parity_sign == 1 ? !odd : odd;
        amps[static_cast<std::size_t>(n)] = keep ? 2.0 * amps[static_cast<std::size_t>(n)] : complex{0.0, 0.0};
    }
    return SingleModeState::from_amplitudes(std::move(amps), true, leak);
}

// Pure state with geometric (thermal-like) photon statistics:
// amps_n = (1 - |z|^2)^{1/2} z^n.
inline SingleModeState make_zstate(complex z, int n_cut,
                                   double leakage_tolerance = default_leakage_tolerance) {
    detail::check_cutoff(n_cut);
    const double r2 = std::norm(z);
    if (!(r2 < 1.0)) throw DomainError("z-state requires |z| < 1");
    const double leak = std::pow(r2, n_cut + 1);
    if (leak >= leakage_tolerance) {
        int need = n_cut;
        while (std::pow(r2, need + 1) >= leakage_tolerance) ++need;
        throw TruncationError("z-state leaks " + std::to_string(leak) + " beyond cutoff " +
                                  std::to_string(n_cut) + "; requires n_cut >= " + std::to_string(need),
                              need);
    }
    std::vector<complex> amps(static_cast<std::size_t>(n_cut) + 1);
    const double pref = std::sqrt(1.0 - r2);
    complex zn{1.0, 0.0};
    for (int n = 0; n <= n_cut; ++n) {
        amps[static_cast<std::size_t>(n)] = pref * zn;
        zn *= z;
    }
    return SingleModeState::from_amplitudes(std::move(amps), true, leak);
}

inline TwoModeState tensor(const SingleModeState& psi_a, const SingleModeState& psi_b) {
    if (psi_a.n_cut() != psi_b.n_cut())
        throw CutoffError("tensor product needs equal cutoffs (" + std::to_string(psi_a.n_cut()) + " vs " +
                          std::to_string(psi_b.n_cut()) + ")");
    Eigen::MatrixXcd c = psi_a.vector() * psi_b.vector().transpose();
    return TwoModeState::from_matrix(std::move(c));
}

// (|N,0> + e^{i phase}|0,N>)/sqrt(2); N = 0 gives the vacuum.
inline TwoModeState make_noon(int N, int n_cut, double phase = 0.0) {
    if (N < 0 || N > n_cut) throw CutoffError("N00N photon number outside cutoff");
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1);
    if (N == 0) {
        c(0, 0) = 1.0;
    } else {
        c(N, 0) = 1.0 / std::sqrt(2.0);
        c(0, N) = std::polar(1.0 / std::sqrt(2.0), phase);
    }
    return TwoModeState::from_matrix(std::move(c));
}

inline double parity_expectation(const SingleModeState& psi) {
    double s = 0.0;
    for (int n = 0; n <= psi.n_cut(); ++n) s += ((n % 2) ? -1.0 : 1.0) * std::norm(psi[n]);
    return s;
}

inline JointDistribution joint_distribution(const TwoModeState& state) {
    return JointDistribution(state.amps().cwiseAbs2());
}

inline complex inner_product(const TwoModeState& a, const TwoModeState& b) {
    if (a.n_cut() != b.n_cut()) throw CutoffError("inner product needs equal cutoffs");
    return (a.amps().conjugate().cwiseProduct(b.amps())).sum();
}

// |<a|b>|^2 with both sides normalized on the fly.
inline double fidelity(const TwoModeState& a, const TwoModeState& b) {
    const double na = a.norm_squared();
    const double nb = b.norm_squared();
    if (!(na > 0.0) || !(nb > 0.0)) throw DomainError("fidelity of a zero state");
    return std::norm(inner_product(a, b)) / (na * nb);
}

inline double fidelity(const SingleModeState& a, const SingleModeState& b) {
    if (a.n_cut() != b.n_cut()) throw CutoffError("fidelity needs equal cutoffs");
    complex s{0.0, 0.0};
    for (int n = 0; n <= a.n_cut(); ++n) s += std::conj(a[n]) * b[n];
    return std::norm(s) / (a.norm_squared() * b.norm_squared());
}

// Rotates the global phase so the first amplitude of (near-)maximal magnitude,
// in flattened order, is real and positive.
inline Eigen::MatrixXcd canonical_phase(const Eigen::MatrixXcd& amps, double rel_tol = 1e-9) {
    const double max_mag = amps.cwiseAbs().maxCoeff();
    if (max_mag == 0.0) return amps;
    for (Eigen::Index n = 0; n < amps.rows(); ++n)
        for (Eigen::Index np = 0; np < amps.cols(); ++np)
            if (std::abs(amps(n, np)) >= max_mag * (1.0 - rel_tol)) {
                const complex phase = std::conj(amps(n, np)) / std::abs(amps(n, np));
                return amps * phase;
            }
    return amps;
}

}  // namespace noonmap

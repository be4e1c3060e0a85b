// inverse.hpp
// Inverse design: from prescribed beam-splitter output amplitudes on the two
// axes back to the pre-splitter state, and the linear map T taking |psi,0>
// to that state.

#pragma once

#include <random>
#include <string>
#include <vector>

#include <Eigen/Dense>
#include <Eigen/QR>
#include <Eigen/Sparse>

#include "noonmap/anlmzi.hpp"
#include "noonmap/fock.hpp"
#include "noonmap/optics.hpp"

namespace noonmap {

enum class PhaseProfile { antisymmetric, kerr_compatible, general };

// Output amplitudes after the splitter, for N >= 1:
//   C~(N,0) = scale * e^{i lambda_a(N)} A_N,  C~(0,N) = scale * e^{i lambda_b(N)} A_N.
// antisymmetric:   lambda_a = 0, lambda_b = pi, scale 1 (unnormalized).
// kerr_compatible: lambda_a = pi/4 + N pi/2, lambda_b = pi/4 + N pi, scale 1/sqrt2.
// general:         caller-supplied lambdas, scale 1/sqrt2.
// Both prescriptions share the vacuum cell, which gets
// (e^{i lambda_a(0)} + e^{i lambda_b(0)}) A_0 / 2.
struct AxisTargetSpec {
    std::vector<complex> A;
    PhaseProfile profile = PhaseProfile::antisymmetric;
    std::vector<double> lambda_a;
    std::vector<double> lambda_b;

    static AxisTargetSpec antisymmetric(std::vector<complex> A) {
        return {std::move(A), PhaseProfile::antisymmetric, {}, {}};
    }
    static AxisTargetSpec kerr_compatible(std::vector<complex> A) {
        return {std::move(A), PhaseProfile::kerr_compatible, {}, {}};
    }
    static AxisTargetSpec general(std::vector<complex> A, std::vector<double> la, std::vector<double> lb) {
        if (la.size() < A.size() || lb.size() < A.size())
            throw DomainError("general profile needs lambda_a and lambda_b for every N");
        return {std::move(A), PhaseProfile::general, std::move(la), std::move(lb)};
    }

    AxisTargetSpec with_amplitudes(std::vector<complex> amps) const {
        AxisTargetSpec s = *this;
        s.A = std::move(amps);
        return s;
    }

    double scale() const { return profile == PhaseProfile::antisymmetric ? 1.0 : 1.0 / std::sqrt(2.0); }

    complex phase_a(int N) const {
        switch (profile) {
            case PhaseProfile::antisymmetric: return 1.0;
            case PhaseProfile::kerr_compatible: return std::exp(I * (pi / 4)) * i_pow(N);
            default: return std::polar(1.0, lambda_a.at(static_cast<std::size_t>(N)));
        }
    }
    complex phase_b(int N) const {
        switch (profile) {
            case PhaseProfile::antisymmetric: return -1.0;
            case PhaseProfile::kerr_compatible: return std::exp(I * (pi / 4)) * i_pow(2LL * N);
            default: return std::polar(1.0, lambda_b.at(static_cast<std::size_t>(N)));
        }
    }

    TwoModeState target_state(int n_cut) const {
        if (static_cast<int>(A.size()) > n_cut + 1) throw CutoffError("target amplitudes exceed cutoff");
        Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1);
        for (int N = 0; N < static_cast<int>(A.size()); ++N) {
            const complex a = A[static_cast<std::size_t>(N)];
            if (N == 0) {
                c(0, 0) = 0.5 * (phase_a(0) + phase_b(0)) * a;
            } else {
                c(N, 0) = scale() * phase_a(N) * a;
                c(0, N) = scale() * phase_b(N) * a;
            }
        }
        return TwoModeState::from_matrix(std::move(c));
    }
};

namespace detail {

inline std::vector<Eigen::MatrixXcd> element_blocks(const OpticalElement& bs, int max_total) {
    bs.validate();
    if (bs.kind != ElementKind::beam_splitter) throw DomainError("inverse design needs a beam splitter");
    return rotation_blocks(single_photon_matrix(bs.axis, bs.sign * bs.param), max_total);
}

}  // namespace detail

// Pre-splitter state C with BS * C = target, solved per anti-diagonal by the
// adjoint of the unitary block.
inline TwoModeState invert_bs_target(const AxisTargetSpec& spec, const OpticalElement& bs, int n_cut) {
    const auto target = spec.target_state(n_cut);
    const auto blocks = detail::element_blocks(bs, n_cut);
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(n_cut + 1, n_cut + 1);
    for (int N = 0; N <= n_cut; ++N) {
        Eigen::VectorXcd t(N + 1);
        for (int k = 0; k <= N; ++k) t(k) = target(k, N - k);
        const Eigen::VectorXcd pre = blocks[static_cast<std::size_t>(N)].adjoint() * t;
        for (int n = 0; n <= N; ++n) c(n, N - n) = pre(n);
    }
    return TwoModeState::from_matrix(std::move(c));
}

struct TransformMatrix {
    Eigen::SparseMatrix<complex> entries;  // (n_cut+1)^2 square, flattened a-major
    int n_cut = 0;
    bool is_unitary = false;  // isometric on the |psi,0> input subspace

    Eigen::MatrixXcd dense() const { return Eigen::MatrixXcd(entries); }
};

// Input-subspace isometry check: columns n*(n_cut+1) of T are orthonormal.
inline bool isometric_on_inputs(const Eigen::SparseMatrix<complex>& T, int n_cut, double tol = 1e-10) {
    const int d = n_cut + 1;
    Eigen::MatrixXcd cols(T.rows(), d);
    for (int n = 0; n < d; ++n) cols.col(n) = T.col(static_cast<Eigen::Index>(n) * d);
    return (cols.adjoint() * cols - Eigen::MatrixXcd::Identity(d, d)).cwiseAbs().maxCoeff() < tol;
}

// Assembles T column by column from unit amplitude vectors A = e_n; columns
// for inputs with a b-photon stay zero (minimal-norm particular solution).
inline TransformMatrix build_transform(const AxisTargetSpec& profile, const OpticalElement& bs, int n_cut,
                                       unsigned seed = 7) {
    const int d = n_cut + 1;
    const Eigen::Index dim = static_cast<Eigen::Index>(d) * d;
    std::vector<Eigen::Triplet<complex>> trip;
    for (int n = 0; n < d; ++n) {
        std::vector<complex> e(static_cast<std::size_t>(d), complex{0.0, 0.0});
        e[static_cast<std::size_t>(n)] = 1.0;
        const Eigen::VectorXcd col = invert_bs_target(profile.with_amplitudes(e), bs, n_cut).flatten();
        for (Eigen::Index r = 0; r < dim; ++r)
            if (std::abs(col(r)) > 1e-15) trip.emplace_back(static_cast<int>(r), n * d, col(r));
    }
    TransformMatrix out;
    out.n_cut = n_cut;
    out.entries.resize(dim, dim);
    out.entries.setFromTriplets(trip.begin(), trip.end());

    // The solver must be linear in A; probe once with a random vector.
    std::mt19937 rng(seed);
    std::normal_distribution<double> g;
    std::vector<complex> r(static_cast<std::size_t>(d));
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(dim);
    for (int n = 0; n < d; ++n) {
        r[static_cast<std::size_t>(n)] = {g(rng), g(rng)};
        x(static_cast<Eigen::Index>(n) * d) = r[static_cast<std::size_t>(n)];
    }
    const Eigen::VectorXcd direct = invert_bs_target(profile.with_amplitudes(r), bs, n_cut).flatten();
    const Eigen::VectorXcd via_T = out.entries * x;
    if ((via_T - direct).cwiseAbs().maxCoeff() > 1e-10 * std::max(1.0, direct.cwiseAbs().maxCoeff()))
        throw InfeasibleError("inverse solution is not linear in the target amplitudes");
    out.is_unitary = isometric_on_inputs(out.entries, n_cut);
    return out;
}

inline Eigen::VectorXcd input_vector(const SingleModeState& psi) {
    const int d = psi.n_cut() + 1;
    Eigen::VectorXcd x = Eigen::VectorXcd::Zero(static_cast<Eigen::Index>(d) * d);
    for (int n = 0; n < d; ++n) x(static_cast<Eigen::Index>(n) * d) = psi[n];
    return x;
}

// <psi,0| T^dag T |psi,0>^{-1/2}.
inline double transform_normalization(const TransformMatrix& T, const SingleModeState& psi) {
    if (T.n_cut != psi.n_cut()) throw CutoffError("transform and state cutoffs differ");
    const Eigen::VectorXcd x = input_vector(psi);
    const double e = (T.entries * x).squaredNorm();
    if (e < 1e-14 * x.squaredNorm()) throw KernelError("input lies in the kernel of T");
    return 1.0 / std::sqrt(e);
}

inline TwoModeState apply_transform(const TransformMatrix& T, const SingleModeState& psi) {
    const double norm = transform_normalization(T, psi);
    const Eigen::VectorXcd v = (T.entries * input_vector(psi)) * norm;
    return TwoModeState::from_flat(v, T.n_cut);
}

// 2 (I - P0) (x) P0 on the flattened grid.
inline Eigen::MatrixXd projector_identity(int n_cut) {
    const int d = n_cut + 1;
    Eigen::MatrixXd m = Eigen::MatrixXd::Zero(d * d, d * d);
    for (int n = 1; n < d; ++n) m(n * d, n * d) = 2.0;
    return m;
}

struct RoundtripReport {
    double fidelity = 0.0;
    double normalization = 0.0;        // <T^dag T>^{-1/2}
    bool a0_dependent_normalization = false;  // target norm depends on |A_0|^2
};

inline RoundtripReport roundtrip_noon_check(const SingleModeState& psi, const AxisTargetSpec& profile,
                                            const OpticalElement& bs = OpticalElement::beam_splitter()) {
    const int nc = psi.n_cut();
    const auto T = build_transform(profile, bs, nc);
    RoundtripReport r;
    r.normalization = transform_normalization(T, psi);
    const auto pre = apply_transform(T, psi);
    const auto out = apply_element(pre, bs);
    const auto target = profile.with_amplitudes({psi.amps().begin(), psi.amps().end()}).target_state(nc);
    r.fidelity = fidelity(out, target);
    r.a0_dependent_normalization = profile.profile == PhaseProfile::antisymmetric && std::norm(psi[0]) > 1e-14;
    return r;
}

struct UnitaryRealizationReport {
    double unitarity_deviation = 0.0;      // max |T^dag T - I| on complete anti-diagonals
    double printed_phase_deviation = 0.0;  // vs e^{i pi/4}(i^N, (-1)^N)/sqrt2 on (N,0), (0,N)
    double swapped_phase_deviation = 0.0;  // vs e^{i pi/4}((-1)^N, -i i^N)/sqrt2
    double anlmzi_deviation = 0.0;         // vs ANLMZI state before its output phases
    double magnitude_deviation = 0.0;      // coherent input: |C~| vs |A_N|/sqrt2
    double off_axis_mass = 0.0;
    int max_fock = 0;
};

// T = PS_a(phase) SelfKerr_a(pi/2) BS(pi/2), followed by the 50:50 splitter.
inline UnitaryRealizationReport verify_unitary_realization(int n_cut, double phase = -pi / 2,
                                                           complex coherent_alpha = 1.5, int max_fock = 6) {
    const auto bs = OpticalElement::beam_splitter();
    const std::vector<OpticalElement> T_els{bs, OpticalElement::self_kerr(Mode::a, pi / 2),
                                            OpticalElement::phase_shift(Mode::a, phase)};
    auto full = T_els;
    full.push_back(bs);
    UnitaryRealizationReport r;
    r.max_fock = std::min(max_fock, n_cut);
    const int d = n_cut + 1;

    std::vector<std::pair<int, int>> basis;
    for (int N = 0; N <= n_cut; ++N)
        for (int n = 0; n <= N; ++n) basis.emplace_back(n, N - n);
    Eigen::MatrixXcd U(d * d, static_cast<Eigen::Index>(basis.size()));
    for (std::size_t c = 0; c < basis.size(); ++c) {
        Eigen::MatrixXcd e = Eigen::MatrixXcd::Zero(d, d);
        e(basis[c].first, basis[c].second) = 1.0;
        U.col(static_cast<Eigen::Index>(c)) =
            apply_pipeline(TwoModeState::from_matrix(e), T_els).state.flatten();
    }
    r.unitarity_deviation =
        (U.adjoint() * U - Eigen::MatrixXcd::Identity(U.cols(), U.cols())).cwiseAbs().maxCoeff();

    const complex g = std::exp(I * (pi / 4)) / std::sqrt(2.0);
    AnlmziConfig cfg;
    auto pre_output = anlmzi_elements(cfg);
    pre_output.resize(4);
    for (int N = 0; N <= r.max_fock; ++N) {
        const auto in = tensor(make_fock(N, n_cut), make_vacuum(n_cut));
        const auto out = apply_pipeline(in, full).state;
        const auto ref = apply_pipeline(in, pre_output).state;
        r.anlmzi_deviation = std::max(r.anlmzi_deviation, (out.amps() - ref.amps()).cwiseAbs().maxCoeff());
        Eigen::MatrixXcd printed = Eigen::MatrixXcd::Zero(d, d);
        Eigen::MatrixXcd swapped = Eigen::MatrixXcd::Zero(d, d);
        if (N == 0) {
            printed(0, 0) = std::exp(I * (pi / 4));
            swapped(0, 0) = 1.0;
        } else {
            printed(N, 0) = g * i_pow(N);
            printed(0, N) = g * i_pow(2LL * N);
            swapped(N, 0) = g * i_pow(2LL * N);
            swapped(0, N) = -I * g * i_pow(N);
        }
        r.printed_phase_deviation =
            std::max(r.printed_phase_deviation, (out.amps() - printed).cwiseAbs().maxCoeff());
        r.swapped_phase_deviation =
            std::max(r.swapped_phase_deviation, (out.amps() - swapped).cwiseAbs().maxCoeff());
    }

    const int nc2 = std::max(n_cut, detail::required_poisson_cutoff(std::norm(coherent_alpha), 1e-13));
    const auto psi = make_coherent(coherent_alpha, nc2);
    const auto out = apply_pipeline(tensor(psi, make_vacuum(nc2)), full).state;
    for (int n = 0; n <= nc2; ++n) {
        const double want = n == 0 ? std::abs(psi[0]) : std::abs(psi[n]) / std::sqrt(2.0);
        r.magnitude_deviation = std::max({r.magnitude_deviation, std::abs(std::abs(out(n, 0)) - want),
                                          std::abs(std::abs(out(0, n)) - want)});
    }
    r.off_axis_mass = out.amps().bottomRightCorner(nc2, nc2).squaredNorm();
    return r;
}

struct MonomialFit {
    std::vector<std::string> labels;
    Eigen::VectorXcd coefficients;
    double residual = 0.0;           // Frobenius norm on the input columns
    double relative_residual = 0.0;
};

// Least-squares fit of T on the |psi,0> input columns against normal-ordered
// monomials a^dag^p b^dag^q a^r b^s with p+q+r+s <= max_order. Diagnostic only.
inline MonomialFit monomial_fit_report(const TransformMatrix& T, int max_order = 2) {
    const int nc = T.n_cut;
    const int d = nc + 1;
    auto ladder = [d](bool create) {
        Eigen::MatrixXcd m = Eigen::MatrixXcd::Zero(d, d);
        for (int n = 1; n < d; ++n) m(n - 1, n) = std::sqrt(static_cast<double>(n));
        return create ? Eigen::MatrixXcd(m.adjoint()) : m;
    };
    const Eigen::MatrixXcd a = ladder(false), ad = ladder(true), id = Eigen::MatrixXcd::Identity(d, d);
    auto power = [&](const Eigen::MatrixXcd& m, int k) {
        Eigen::MatrixXcd r = id;
        for (int i = 0; i < k; ++i) r = r * m;
        return r;
    };
    auto kron = [&](const Eigen::MatrixXcd& x, const Eigen::MatrixXcd& y) {
        Eigen::MatrixXcd k(d * d, d * d);
        for (int i = 0; i < d; ++i)
            for (int j = 0; j < d; ++j) k.block(i * d, j * d, d, d) = x(i, j) * y;
        return k;
    };
    auto restrict_cols = [&](const Eigen::MatrixXcd& m) {
        Eigen::VectorXcd v(static_cast<Eigen::Index>(d) * d * d);
        for (int n = 0; n < d; ++n) v.segment(static_cast<Eigen::Index>(n) * d * d, d * d) = m.col(n * d);
        return v;
    };
    MonomialFit fit;
    std::vector<Eigen::VectorXcd> cols;
    for (int p = 0; p <= max_order; ++p)
        for (int q = 0; p + q <= max_order; ++q)
            for (int r = 0; p + q + r <= max_order; ++r)
                for (int s = 0; p + q + r + s <= max_order; ++s) {
                    const Eigen::MatrixXcd op = kron(power(ad, p) * power(a, r), power(ad, q) * power(a, s));
                    cols.push_back(restrict_cols(op));
                    fit.labels.push_back("a+^" + std::to_string(p) + " b+^" + std::to_string(q) + " a^" +
                                         std::to_string(r) + " b^" + std::to_string(s));
                }
    Eigen::MatrixXcd M(cols.front().size(), static_cast<Eigen::Index>(cols.size()));
    for (std::size_t k = 0; k < cols.size(); ++k) M.col(static_cast<Eigen::Index>(k)) = cols[k];
    const Eigen::VectorXcd target = restrict_cols(T.dense());
    fit.coefficients = M.completeOrthogonalDecomposition().solve(target);
    fit.residual = (M * fit.coefficients - target).norm();
    fit.relative_residual = target.norm() > 0 ? fit.residual / target.norm() : 0.0;
    return fit;
}

}  // namespace noonmap

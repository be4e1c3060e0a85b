// anlmzi.hpp
// Asymmetric nonlinear Mach-Zehnder interferometer: a Kerr medium in the a arm
// between two 50:50 beam splitters, mapping |psi>|0> onto
// e^{i pi/4}/sqrt2 (|psi,0> - i|0,psi>).

#pragma once

#include <optional>
#include <vector>

#include "noonmap/fock.hpp"
#include "noonmap/optics.hpp"

namespace noonmap {

enum class KerrKind { self_kerr_a, cross_kerr };

struct AnlmziConfig {
    double kappa = pi / 2;
    double intermediate_phase = -pi / 2;
    double output_phase = pi;        // mode a, after BS2
    double output_phase_b = -pi / 2;  // mode b, after BS2
    KerrKind kerr_kind = KerrKind::self_kerr_a;
    std::optional<int> fock_N;
    double cross_kappa = -pi / 2;
    bool kerr_before_phase = true;
    OpticalElement beam_splitter = OpticalElement::beam_splitter(pi / 2, Axis::x, 1);

    void validate() const {
        beam_splitter.validate();
        if (beam_splitter.kind != ElementKind::beam_splitter) throw DomainError("beam_splitter slot must hold a BS");
        if (kerr_kind == KerrKind::cross_kerr && !fock_N)
            throw DomainError("cross-Kerr variant needs fock_N for its compensating phase shift");
        if (fock_N && *fock_N < 0) throw DomainError("fock_N must be nonnegative");
    }
};

inline std::vector<OpticalElement> anlmzi_elements(const AnlmziConfig& cfg) {
    cfg.validate();
    std::vector<OpticalElement> els{cfg.beam_splitter};
    if (cfg.kerr_kind == KerrKind::self_kerr_a) {
        const auto kerr = OpticalElement::self_kerr(Mode::a, cfg.kappa);
        const auto ps = OpticalElement::phase_shift(Mode::a, cfg.intermediate_phase);
        if (cfg.kerr_before_phase) {
            els.push_back(kerr);
            els.push_back(ps);
        } else {
            els.push_back(ps);
            els.push_back(kerr);
        }
    } else {
        els.push_back(OpticalElement::cross_kerr(cfg.cross_kappa));
        els.push_back(OpticalElement::phase_shift(Mode::a, -(*cfg.fock_N) * pi / 2));
    }
    els.push_back(cfg.beam_splitter);
    els.push_back(OpticalElement::phase_shift(Mode::a, cfg.output_phase));
    els.push_back(OpticalElement::phase_shift(Mode::b, cfg.output_phase_b));
    return els;
}

inline TwoModeState run_anlmzi(const SingleModeState& psi, const AnlmziConfig& cfg = {},
                               const TruncationPolicy& policy = {}) {
    const auto input = tensor(psi, make_vacuum(psi.n_cut()));
    return apply_pipeline(input, anlmzi_elements(cfg), policy).state;
}

// e^{i pi/4}/sqrt2 (|psi,0> - i|0,psi>), the ideal ANLMZI output.
inline TwoModeState anlmzi_target(const SingleModeState& psi) {
    const int d = psi.n_cut() + 1;
    Eigen::MatrixXcd c = Eigen::MatrixXcd::Zero(d, d);
    const complex g = std::exp(I * (pi / 4)) / std::sqrt(2.0);
    for (int n = 0; n < d; ++n) {
        c(n, 0) += g * psi[n];
        c(0, n) += -I * g * psi[n];
    }
    return TwoModeState::from_matrix(std::move(c));
}

// Output amplitudes gamma_{k} on |k, N-k>, k = 0..N, for input |N,0>.
// Evaluated on the N-photon sector only: rotation block, Kerr-plus-phase
// diagonal (-i)^{n^2}, rotation block, output phases.
inline Eigen::VectorXcd anlmzi_gamma(int N, const AnlmziConfig& cfg = {}) {
    if (N < 0) throw DomainError("negative photon number");
    cfg.validate();
    const auto& bs = cfg.beam_splitter;
    const auto blocks = rotation_blocks(single_photon_matrix(bs.axis, bs.sign * bs.param), N);
    const Eigen::MatrixXcd& B = blocks.back();
    Eigen::VectorXcd v = B.col(N);
    for (long long n = 0; n <= N; ++n) {
        if (cfg.kerr_kind == KerrKind::self_kerr_a)
            v(n) *= detail::phase_power(-cfg.kappa, n * n - n) * detail::phase_power(cfg.intermediate_phase, n);
        else
            v(n) *= detail::phase_power(-cfg.cross_kappa, n * (N - n)) *
                    detail::phase_power(-(*cfg.fock_N) * pi / 2, n);
    }
    Eigen::VectorXcd out = B * v;
    for (long long k = 0; k <= N; ++k)
        out(k) *= detail::phase_power(cfg.output_phase, k) * detail::phase_power(cfg.output_phase_b, N - k);
    return out;
}

inline TwoModeState run_cross_kerr_noon(const SingleModeState& psi, AnlmziConfig cfg = {},
                                        const TruncationPolicy& policy = {}) {
    int N = -1;
    for (int n = 0; n <= psi.n_cut(); ++n) {
        const double p = std::norm(psi[n]);
        if (p > 1e-12) {
            if (N >= 0 || std::abs(p - 1.0) > 1e-12)
                throw UnsupportedInputError("cross-Kerr N00N generation needs a definite Fock input");
            N = n;
        }
    }
    if (N < 0) throw UnsupportedInputError("cross-Kerr N00N generation needs a definite Fock input");
    cfg.kerr_kind = KerrKind::cross_kerr;
    cfg.fock_N = N;
    return run_anlmzi(psi, cfg, policy);
}

inline TwoModeState run_cross_kerr_noon(int N, int n_cut, AnlmziConfig cfg = {}) {
    return run_cross_kerr_noon(make_fock(N, n_cut), std::move(cfg));
}

struct YurkeStolerReport {
    SingleModeState state;         // e^{-i (pi/2) n^2} |beta>
    complex coeff_beta;            // state = coeff_beta |beta> + coeff_minus_beta |-beta>
    complex coeff_minus_beta;
    double fidelity_minus_i = 0.0;  // against e^{-i pi/4}/sqrt2 (|beta> - i|-beta>)
    double fidelity_plus_i = 0.0;   // against e^{-i pi/4}/sqrt2 (|beta> + i|-beta>)
};

inline YurkeStolerReport yurke_stoler_cat(complex beta, int n_cut) {
    const auto coh = make_coherent(beta, n_cut);
    const auto minus = make_coherent(-beta, n_cut);
    std::vector<complex> amps(coh.amps().begin(), coh.amps().end());
    for (long long n = 0; n <= n_cut; ++n) amps[static_cast<std::size_t>(n)] *= i_pow(-(n * n));
    auto state = SingleModeState::from_amplitudes(amps, false, coh.leakage());

    // Even/odd sectors give c+ + c- and c+ - c-; read them off the largest
    // coherent amplitude of each parity.
    int ne = -1, no = -1;
    for (int n = 0; n <= n_cut; ++n) {
        auto& best = (n % 2) ? no : ne;
        if (best < 0 || std::abs(coh[n]) > std::abs(coh[best])) best = n;
    }
    const complex s_even = state[ne] / coh[ne];
    const complex s_odd = (no >= 0 && std::abs(coh[no]) > 0.0) ? state[no] / coh[no] : s_even;
    const complex cb = 0.5 * (s_even + s_odd);
    const complex cmb = 0.5 * (s_even - s_odd);

    auto rhs = [&](complex rel) {
        std::vector<complex> v(amps.size());
        const complex g = std::exp(-I * (pi / 4)) / std::sqrt(2.0);
        for (int n = 0; n <= n_cut; ++n) v[static_cast<std::size_t>(n)] = g * (coh[n] + rel * minus[n]);
        return SingleModeState::from_amplitudes(std::move(v), false);
    };
    return {state, cb, cmb, fidelity(state, rhs(-I)), fidelity(state, rhs(I))};
}

}  // namespace noonmap

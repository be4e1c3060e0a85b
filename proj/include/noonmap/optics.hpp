// optics.hpp
// Number-conserving optical elements acting on TwoModeState.

#pragma once

#include <cmath>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "noonmap/fock.hpp"
#include "noonmap/su2.hpp"

namespace noonmap {

enum class ElementKind { beam_splitter, phase_shift, self_kerr, cross_kerr };
enum class Mode { a, b, both };

inline const char* to_string(ElementKind k) {
    switch (k) {
        case ElementKind::beam_splitter: return "beam_splitter";
        case ElementKind::phase_shift: return "phase_shift";
        case ElementKind::self_kerr: return "self_kerr";
        default: return "cross_kerr";
    }
}

inline const char* to_string(Mode m) {
    switch (m) {
        case Mode::a: return "a";
        case Mode::b: return "b";
        default: return "both";
    }
}

// Beam splitter: U = exp(i * sign * param * J_axis); param = pi/2 is 50:50.
// Phase shift:   U = exp(i * param * n_mode).
// Self-Kerr:     U = exp(-i * param * (n^2 - n)), or exp(-i * param * n^2)
//                when keep_linear is false.
// Cross-Kerr:    U = exp(-i * param * n_a * n_b).
struct OpticalElement {
    ElementKind kind = ElementKind::phase_shift;
    Mode mode = Mode::a;
    double param = 0.0;
    Axis axis = Axis::x;
    int sign = 1;
    bool keep_linear = true;

    static OpticalElement beam_splitter(double theta = pi / 2, Axis axis = Axis::x, int sign = 1) {
        return {ElementKind::beam_splitter, Mode::both, theta, axis, sign, true};
    }
    static OpticalElement phase_shift(Mode mode, double phi) {
        return {ElementKind::phase_shift, mode, phi, Axis::x, 1, true};
    }
    static OpticalElement self_kerr(Mode mode, double kappa, bool keep_linear = true) {
        return {ElementKind::self_kerr, mode, kappa, Axis::x, 1, keep_linear};
    }
    static OpticalElement cross_kerr(double kappa) {
        return {ElementKind::cross_kerr, Mode::both, kappa, Axis::x, 1, true};
    }

    void validate() const {
        if (!std::isfinite(param)) throw DomainError("non-finite element parameter");
        switch (kind) {
            case ElementKind::beam_splitter:
                if (mode != Mode::both) throw DomainError("beam splitter acts on both modes");
                if (axis == Axis::z) throw DomainError("beam splitter generator must be J_x or J_y");
                if (sign != 1 && sign != -1) throw DomainError("beam splitter sign must be +1 or -1");
                break;
            case ElementKind::cross_kerr:
                if (mode != Mode::both) throw DomainError("cross-Kerr acts on both modes");
                break;
            default:
                if (mode == Mode::both) throw DomainError(std::string(to_string(kind)) + " acts on mode a or b");
        }
    }

    std::string describe() const {
        switch (kind) {
            case ElementKind::beam_splitter:
                return fmt::format("BS(theta={:.6g}, J_{}, sign={:+d})", param, to_string(axis), sign);
            case ElementKind::phase_shift: return fmt::format("PS_{}({:.6g})", to_string(mode), param);
            case ElementKind::self_kerr:
                return fmt::format("SelfKerr_{}(kappa={:.6g}{})", to_string(mode), param,
                                   keep_linear ? "" : ", no linear term");
            default: return fmt::format("CrossKerr(kappa={:.6g})", param);
        }
    }
};

struct TruncationPolicy {
    double loss_tolerance = default_truncation_loss_tolerance;
};

namespace detail {

// e^{i angle k}; exact when angle is a multiple of pi/2.
inline complex phase_power(double angle, long long k) {
    const double q = angle / (pi / 2);
    const double qr = std::round(q);
    if (std::abs(q - qr) < 1e-13 && std::abs(qr) < 1e9) {
        const long long qi = static_cast<long long>(qr) % 4;
        return i_pow((qi * (k % 4)) % 4);
    }
    return std::polar(1.0, std::remainder(angle * static_cast<double>(k), 2.0 * pi));
}

}  // namespace detail

// Mixes each anti-diagonal n + n' = N (N up to 2 n_cut). Output amplitudes
// that land outside the grid are discarded and their probability is added to
// truncation_loss; a CutoffError is raised when the discarded mass in this
// call exceeds policy.loss_tolerance.
inline TwoModeState apply_beam_splitter(const TwoModeState& state, double theta, Axis axis = Axis::x,
                                        int sign = 1, const TruncationPolicy& policy = {}) {
    OpticalElement::beam_splitter(theta, axis, sign).validate();
    const int nc = state.n_cut();
    const auto& in = state.amps();
    const auto blocks = rotation_blocks(single_photon_matrix(axis, sign * theta), 2 * nc);
    Eigen::MatrixXcd out = Eigen::MatrixXcd::Zero(nc + 1, nc + 1);
    double lost = 0.0;
    for (int N = 0; N <= 2 * nc; ++N) {
        const int lo = std::max(0, N - nc);
        const int hi = std::min(N, nc);
        bool occupied = false;
        for (int n = lo; n <= hi && !occupied; ++n) occupied = in(n, N - n) != complex{0.0, 0.0};
        if (!occupied) continue;
        const Eigen::MatrixXcd& B = blocks[static_cast<std::size_t>(N)];
        for (int k = 0; k <= N; ++k) {
            complex acc{0.0, 0.0};
            for (int n = lo; n <= hi; ++n) acc += B(k, n) * in(n, N - n);
            if (k >= lo && k <= hi)
                out(k, N - k) = acc;
            else
                lost += std::norm(acc);
        }
    }
    if (lost > policy.loss_tolerance)
        throw CutoffError(fmt::format("beam splitter pushes probability {:.3g} outside cutoff {}; raise n_cut",
                                      lost, nc));
    return TwoModeState::from_matrix(std::move(out), false, state.truncation_loss() + lost);
}

inline TwoModeState apply_phase_shift(const TwoModeState& state, Mode mode, double phi) {
    OpticalElement::phase_shift(mode, phi).validate();
    Eigen::MatrixXcd out = state.amps();
    for (int k = 0; k <= state.n_cut(); ++k) {
        const complex f = detail::phase_power(phi, k);
        if (mode == Mode::a)
            out.row(k) *= f;
        else
            out.col(k) *= f;
    }
    return TwoModeState::from_matrix(std::move(out), false, state.truncation_loss());
}

inline TwoModeState apply_self_kerr(const TwoModeState& state, Mode mode, double kappa, bool keep_linear = true) {
    OpticalElement::self_kerr(mode, kappa, keep_linear).validate();
    Eigen::MatrixXcd out = state.amps();
    for (long long k = 0; k <= state.n_cut(); ++k) {
        const complex f = detail::phase_power(-kappa, keep_linear ? k * k - k : k * k);
        if (mode == Mode::a)
            out.row(k) *= f;
        else
            out.col(k) *= f;
    }
    return TwoModeState::from_matrix(std::move(out), false, state.truncation_loss());
}

inline TwoModeState apply_cross_kerr(const TwoModeState& state, double kappa) {
    Eigen::MatrixXcd out = state.amps();
    for (long long n = 0; n <= state.n_cut(); ++n)
        for (long long np = 0; np <= state.n_cut(); ++np) out(n, np) *= detail::phase_power(-kappa, n * np);
    return TwoModeState::from_matrix(std::move(out), false, state.truncation_loss());
}

inline TwoModeState apply_element(const TwoModeState& state, const OpticalElement& el,
                                  const TruncationPolicy& policy = {}) {
    el.validate();
    switch (el.kind) {
        case ElementKind::beam_splitter: return apply_beam_splitter(state, el.param, el.axis, el.sign, policy);
        case ElementKind::phase_shift: return apply_phase_shift(state, el.mode, el.param);
        case ElementKind::self_kerr: return apply_self_kerr(state, el.mode, el.param, el.keep_linear);
        default: return apply_cross_kerr(state, el.param);
    }
}

struct PipelineResult {
    TwoModeState state;
    std::vector<double> norm_drift;  // |norm^2 after - norm^2 before| per element

    double max_norm_drift() const {
        double m = 0.0;
        for (double d : norm_drift) m = std::max(m, d);
        return m;
    }
};

inline PipelineResult apply_pipeline(const TwoModeState& state, const std::vector<OpticalElement>& elements,
                                     const TruncationPolicy& policy = {}) {
    PipelineResult r{state, {}};
    r.norm_drift.reserve(elements.size());
    for (const auto& el : elements) {
        const double before = r.state.norm_squared();
        r.state = apply_element(r.state, el, policy);
        r.norm_drift.push_back(std::abs(r.state.norm_squared() - before));
    }
    return r;
}

}  // namespace noonmap

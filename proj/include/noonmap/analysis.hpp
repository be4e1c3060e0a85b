// analysis.hpp
// Joint-distribution features (central nodal line, peaks, valleys) and
// phase-sensitivity estimators.

#pragma once

#include <cmath>
#include <functional>
#include <limits>
#include <vector>

#include "noonmap/fock.hpp"
#include "noonmap/optics.hpp"

namespace noonmap {

struct GridPoint {
    int n = 0;
    int n_prime = 0;
    double p = 0.0;
};

struct DistributionFeatures {
    double cnl_max_prob = 0.0;          // max_n P(n,n)
    std::vector<GridPoint> peaks;       // local maxima along the principal scanline
    int valleys = 0;                    // local minima between the outer peaks on that scanline
    std::vector<GridPoint> grid_maxima; // strict 8-neighbour maxima on the raw grid
    double axis_mass = 0.0;
    double total = 0.0;
    int principal_total = 0;            // N of the anti-diagonal through the global maximum
};

// The principal scanline is the anti-diagonal n + n' = const through the
// global maximum of P. Peaks are points above threshold larger than each
// existing scanline neighbour.
inline DistributionFeatures analyze_distribution(const JointDistribution& dist, double threshold = 1e-6) {
    const auto& P = dist.probs();
    const int d = static_cast<int>(P.rows());
    DistributionFeatures f;
    f.total = P.sum();
    for (int n = 0; n < d; ++n) f.cnl_max_prob = std::max(f.cnl_max_prob, P(n, n));
    f.axis_mass = f.total - (d > 1 ? P.bottomRightCorner(d - 1, d - 1).sum() : 0.0);

    Eigen::Index gr = 0, gc = 0;
    P.maxCoeff(&gr, &gc);
    const int N = static_cast<int>(gr + gc);
    f.principal_total = N;
    const int lo = std::max(0, N - (d - 1));
    const int hi = std::min(N, d - 1);
    std::vector<double> line;
    for (int k = lo; k <= hi; ++k) line.push_back(P(k, N - k));
    const int L = static_cast<int>(line.size());
    std::vector<int> peak_idx;
    for (int i = 0; i < L; ++i) {
        if (line[i] <= threshold) continue;
        const bool left = i == 0 || line[i] > line[i - 1];
        const bool right = i == L - 1 || line[i] > line[i + 1];
        if (left && right) peak_idx.push_back(i);
    }
    for (int i : peak_idx) f.peaks.push_back({lo + i, N - (lo + i), line[i]});
    if (peak_idx.size() >= 2)
        for (int i = peak_idx.front() + 1; i < peak_idx.back(); ++i)
            if (line[i] < line[i - 1] && line[i] < line[i + 1]) ++f.valleys;

    for (int n = 0; n < d; ++n)
        for (int np = 0; np < d; ++np) {
            const double p = P(n, np);
            if (p <= threshold) continue;
            bool is_max = true;
            for (int dn = -1; dn <= 1 && is_max; ++dn)
                for (int dm = -1; dm <= 1 && is_max; ++dm) {
                    if (dn == 0 && dm == 0) continue;
                    const int a = n + dn, b = np + dm;
                    if (a < 0 || b < 0 || a >= d || b >= d) continue;
                    if (P(a, b) >= p) is_max = false;
                }
            if (is_max) f.grid_maxima.push_back({n, np, p});
        }
    return f;
}

struct PhaseSensitivityReport {
    double delta_phi_min = std::numeric_limits<double>::infinity();
    double nbar = 0.0;
    double sql = std::numeric_limits<double>::infinity();
    double hl = std::numeric_limits<double>::infinity();
    double asymptotic = std::numeric_limits<double>::infinity();  // sqrt2 / nbar
    bool degenerate = true;
};

// Closed-form minimum phase uncertainty for |alpha> (x) |N> on a 50:50 MZI.
inline PhaseSensitivityReport coherent_fock_sensitivity(complex alpha, int N) {
    if (N < 0) throw DomainError("negative photon number");
    PhaseSensitivityReport r;
    const double a2 = std::norm(alpha);
    r.nbar = a2 + N;
    const double denom = a2 + N * (1.0 + 2.0 * a2);
    if (denom <= 0.0) return r;
    r.degenerate = false;
    r.delta_phi_min = 1.0 / std::sqrt(denom);
    r.sql = 1.0 / std::sqrt(r.nbar);
    r.hl = 1.0 / r.nbar;
    r.asymptotic = std::sqrt(2.0) / r.nbar;
    return r;
}

// <Sigma_N> = 2 Re(C_{N,0}^* C_{0,N}) after an a-mode phase shift phi.
inline std::vector<double> sigma_n_fringe(const std::function<TwoModeState(double)>& preparer, int N,
                                          const std::vector<double>& phi_grid) {
    std::vector<double> out;
    out.reserve(phi_grid.size());
    for (double phi : phi_grid) {
        const auto s = apply_phase_shift(preparer(phi), Mode::a, phi);
        if (N > s.n_cut()) throw CutoffError("fringe order exceeds cutoff");
        out.push_back(2.0 * std::real(std::conj(s(N, 0)) * s(0, N)));
    }
    return out;
}

inline std::vector<double> sigma_n_fringe(const TwoModeState& state, int N, const std::vector<double>& phi_grid) {
    return sigma_n_fringe([&state](double) { return state; }, N, phi_grid);
}

inline std::vector<double> uniform_phase_grid(int samples) {
    std::vector<double> g(static_cast<std::size_t>(samples));
    for (int k = 0; k < samples; ++k) g[static_cast<std::size_t>(k)] = 2.0 * pi * k / samples;
    return g;
}

// Index k in 1..M/2 of the largest discrete Fourier magnitude.
inline int dominant_frequency(const std::vector<double>& samples) {
    const int M = static_cast<int>(samples.size());
    int best = 0;
    double best_mag = -1.0;
    for (int k = 1; k <= M / 2; ++k) {
        complex acc{0.0, 0.0};
        for (int t = 0; t < M; ++t) acc += samples[static_cast<std::size_t>(t)] * std::polar(1.0, -2.0 * pi * k * t / M);
        if (std::abs(acc) > best_mag) {
            best_mag = std::abs(acc);
            best = k;
        }
    }
    return best;
}

// <Pi_b> after PS_a(phi) and a closing 50:50 beam splitter.
inline double output_parity_b(const TwoModeState& state, double phi,
                              const OpticalElement& closing = OpticalElement::beam_splitter()) {
    const auto s = apply_element(apply_phase_shift(state, Mode::a, phi), closing);
    double p = 0.0;
    for (int np = 0; np <= s.n_cut(); ++np) p += ((np % 2) ? -1.0 : 1.0) * s.amps().col(np).squaredNorm();
    return p;
}

struct ParityEstimate {
    double delta_phi = std::numeric_limits<double>::infinity();
    double parity = 0.0;
    double slope = 0.0;
    bool informative = false;
};

// Error propagation: Delta phi = sqrt(1 - <Pi>^2) / |d<Pi>/dphi|, central
// differences with step d_phi.
inline ParityEstimate parity_phase_uncertainty(const TwoModeState& state, double phi, double d_phi = 1e-4,
                                               const OpticalElement& closing = OpticalElement::beam_splitter()) {
    ParityEstimate e;
    e.parity = output_parity_b(state, phi, closing);
    e.slope = (output_parity_b(state, phi + d_phi, closing) - output_parity_b(state, phi - d_phi, closing)) /
              (2.0 * d_phi);
    if (std::abs(e.slope) < 1e-9) return e;
    e.informative = true;
    e.delta_phi = std::sqrt(std::max(0.0, 1.0 - e.parity * e.parity)) / std::abs(e.slope);
    return e;
}

struct ParityScan {
    double phi = 0.0;
    ParityEstimate best;
};

// Smallest informative Delta phi over a phase grid.
inline ParityScan parity_scan(const TwoModeState& state, const std::vector<double>& phi_grid, double d_phi = 1e-4) {
    ParityScan s;
    for (double phi : phi_grid) {
        const auto e = parity_phase_uncertainty(state, phi, d_phi);
        if (e.informative && e.delta_phi < s.best.delta_phi) s = {phi, e};
    }
    return s;
}

}  // namespace noonmap

#include <gtest/gtest.h>

#include "noonmap/analysis.hpp"
#include "noonmap/anlmzi.hpp"

using namespace noonmap;

namespace {

TwoModeState ehom(int N, int n_cut, double loss_tolerance = default_truncation_loss_tolerance) {
    return apply_beam_splitter(tensor(make_coherent(5.0, n_cut), make_fock(N, n_cut)), pi / 2, Axis::x, 1,
                               TruncationPolicy{loss_tolerance});
}

}  // namespace

TEST(Analysis, EhomOnePhoton) {
    const auto f = analyze_distribution(joint_distribution(ehom(1, 60)));
    EXPECT_LT(f.cnl_max_prob, 1e-20);
    EXPECT_EQ(f.peaks.size(), 2u);
    EXPECT_EQ(f.valleys, 1);
}

TEST(Analysis, EhomFifteenPhotons) {
    const auto s = ehom(15, 80);
    EXPECT_LT(s.truncation_loss(), 1e-12);
    const auto f = analyze_distribution(joint_distribution(s));
    EXPECT_LT(f.cnl_max_prob, 1e-20);
    EXPECT_EQ(f.peaks.size(), 16u);
    EXPECT_EQ(f.valleys, 15);
}

TEST(Analysis, EhomFifteenPhotonsAtSixty) {
    EXPECT_THROW(ehom(15, 60), CutoffError);
    const auto s = ehom(15, 60, 1e-5);
    EXPECT_GT(s.truncation_loss(), 1e-12);
    const auto f = analyze_distribution(joint_distribution(s));
    EXPECT_LT(f.cnl_max_prob, 1e-20);
    EXPECT_EQ(f.peaks.size(), 16u);
    EXPECT_EQ(f.valleys, 15);
}

TEST(Analysis, PeakValleyCensus) {
    for (int N = 0; N <= 8; ++N) {
        const auto s = ehom(N, 60, 1e-10);
        const auto f = analyze_distribution(joint_distribution(s));
        EXPECT_EQ(static_cast<int>(f.peaks.size()), N + 1) << N;
        EXPECT_EQ(f.valleys, N) << N;
    }
}

TEST(Analysis, CentralNodalLineTheorem) {
    const int nc = 60;
    std::vector<SingleModeState> odd;
    for (int n = 1; n <= 9; n += 2) odd.push_back(make_fock(n, nc));
    for (double a : {1.0, 2.0, 3.0}) odd.push_back(make_cat(a, -1, nc));
    std::vector<SingleModeState> others{make_vacuum(nc)};
    for (double a : {0.5, 1.0, 2.0, 3.0}) others.push_back(make_coherent(a, nc));
    for (int n = 0; n <= 5; ++n) others.push_back(make_fock(n, nc));
    for (const auto& o : odd)
        for (const auto& x : others) {
            TruncationPolicy loose{1e-9};
            const auto s = apply_beam_splitter(tensor(x, o), pi / 2, Axis::x, 1, loose);
            EXPECT_LT(analyze_distribution(joint_distribution(s)).cnl_max_prob, 1e-20);
        }
}

TEST(Analysis, NoonAxisMass) {
    const auto f = analyze_distribution(joint_distribution(make_noon(4, 6)));
    EXPECT_NEAR(f.axis_mass, 1.0, 1e-12);
    EXPECT_NEAR(f.total, 1.0, 1e-12);
}

TEST(Analysis, GridMaximaAreReported) {
    const auto f = analyze_distribution(joint_distribution(ehom(3, 60, 1e-10)));
    EXPECT_GE(f.grid_maxima.size(), f.peaks.size());
}

TEST(Analysis, ClosedFormSensitivity) {
    const auto r = coherent_fock_sensitivity(5.0, 15);
    EXPECT_NEAR(r.delta_phi_min, 1.0 / std::sqrt(790.0), 1e-12);
    EXPECT_NEAR(r.sql, 1.0 / std::sqrt(40.0), 1e-15);
    EXPECT_NEAR(r.hl, 1.0 / 40.0, 1e-15);
    EXPECT_FALSE(r.degenerate);

    const auto big = coherent_fock_sensitivity(std::sqrt(50.0), 50);
    EXPECT_NEAR(big.delta_phi_min / big.asymptotic, 1.0, 0.02);

    const auto none = coherent_fock_sensitivity(0.0, 0);
    EXPECT_TRUE(none.degenerate);
    EXPECT_TRUE(std::isinf(none.delta_phi_min));
}

TEST(Analysis, SigmaFringe) {
    const auto plus = make_noon(1, 1);
    EXPECT_NEAR(sigma_n_fringe(plus, 1, {0.0})[0], 1.0, 1e-15);
    for (int N = 1; N <= 10; ++N) {
        const auto fr = sigma_n_fringe(make_noon(N, N), N, uniform_phase_grid(64));
        EXPECT_EQ(dominant_frequency(fr), N);
        EXPECT_NEAR(*std::max_element(fr.begin(), fr.end()), 1.0, 1e-2);
    }
}

TEST(Analysis, SigmaFringeOfAnlmziOutput) {
    // C_{0,N}/C_{N,0} = -i, so <Sigma_N>(phi) = 2 Re(e^{-iN phi} (-i)) / 2 = -sin(N phi).
    const int N = 4;
    const auto out = run_anlmzi(make_fock(N, N));
    const auto grid = uniform_phase_grid(32);
    const auto fr = sigma_n_fringe(out, N, grid);
    for (std::size_t k = 0; k < grid.size(); ++k) EXPECT_NEAR(fr[k], -std::sin(N * grid[k]), 1e-12);
}

TEST(Analysis, ParityEstimatorReachesHeisenberg) {
    for (int N = 1; N <= 8; ++N) {
        const auto s = make_noon(N, N);
        const auto scan = parity_scan(s, uniform_phase_grid(97));
        EXPECT_NEAR(scan.best.delta_phi * N, 1.0, 1e-6) << N;
    }
}

TEST(Analysis, ParityNonInformativePoint) {
    // Vacuum parity does not depend on phi.
    const auto e = parity_phase_uncertainty(tensor(make_vacuum(2), make_vacuum(2)), 0.4);
    EXPECT_FALSE(e.informative);
    EXPECT_TRUE(std::isinf(e.delta_phi));
}

TEST(Analysis, ParityStepHalving) {
    const auto s = make_noon(5, 5);
    for (double phi : {0.1, 0.7, 2.0}) {
        const auto a = parity_phase_uncertainty(s, phi, 1e-4);
        const auto b = parity_phase_uncertainty(s, phi, 5e-5);
        EXPECT_NEAR(a.slope, b.slope, 1e-6);
    }
}

TEST(Analysis, CoherentParityNearShotNoise) {
    const double alpha = 3.0;
    const int nc = 40;
    const auto mzi_in = apply_beam_splitter(tensor(make_coherent(alpha, nc), make_vacuum(nc)), pi / 2);
    std::vector<double> grid;
    for (int k = -40; k <= 40; ++k) grid.push_back(pi + 1e-3 * k);
    const auto scan = parity_scan(mzi_in, grid);
    EXPECT_NEAR(scan.best.delta_phi * alpha, 1.0, 0.02);
}

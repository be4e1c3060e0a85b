// Acceptance runner: one PASS/FAIL line per criterion.
//
//   acceptance                 run all ten
//   acceptance --criterion 4   run one; exit status reflects it

#include <chrono>
#include <cstring>
#include <functional>
#include <iostream>
#include <random>
#include <string>
#include <vector>

#include <fmt/format.h>

#include "noonmap/analysis.hpp"
#include "noonmap/anlmzi.hpp"
#include "noonmap/inverse.hpp"
#include "noonmap/io/experiments.hpp"

using namespace noonmap;

namespace {

struct Outcome {
    bool pass = true;
    std::vector<std::string> notes;

    void require(bool ok, const std::string& what) {
        pass = pass && ok;
        notes.push_back((ok ? "" : "!") + what);
    }
};

double seconds_since(std::chrono::steady_clock::time_point t0) {
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

SingleModeState random_state(int n_cut, std::mt19937& rng) {
    std::normal_distribution<double> g;
    std::vector<complex> v(static_cast<std::size_t>(n_cut) + 1);
    for (auto& x : v) x = {g(rng), g(rng)};
    return SingleModeState::from_amplitudes(std::move(v));
}

Outcome hom() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    const auto out = apply_beam_splitter(tensor(make_fock(1, 2), make_fock(1, 2)), pi / 2);
    const double p11 = std::norm(out(1, 1));
    const double dt = seconds_since(t0);
    o.require(p11 < 1e-20, fmt::format("P(1,1)={:.2e}", p11));
    o.require(dt < 1e-3, fmt::format("{:.2e}s", dt));
    return o;
}

Outcome ehom() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    for (int N : {1, 5, 15}) {
        const int nc = 60;
        TruncationPolicy loose{1.0};
        const auto out = apply_beam_splitter(tensor(make_coherent(5.0, nc), make_fock(N, nc)), pi / 2, Axis::x, 1, loose);
        const auto f = analyze_distribution(joint_distribution(out));
        o.require(f.cnl_max_prob < 1e-20, fmt::format("N={} cnl={:.1e}", N, f.cnl_max_prob));
        o.require(static_cast<int>(f.peaks.size()) == N + 1 && f.valleys == N,
                  fmt::format("peaks={} valleys={}", f.peaks.size(), f.valleys));
        o.notes.push_back(fmt::format("loss={:.1e}", out.truncation_loss()));
    }
    const double dt = seconds_since(t0);
    o.require(dt < 5.0, fmt::format("{:.2f}s", dt));
    return o;
}

Outcome wigner() {
    Outcome o;
    double dev = 0.0, sym = 0.0;
    for (int two_j = 0; two_j <= 20; ++two_j)
        for (double beta : {pi / 6, pi / 4, pi / 2, 2.3}) {
            const Eigen::MatrixXcd ref = expm_oracle(generator_matrices(two_j).jy, beta);
            dev = std::max(dev, (wigner_d_block(two_j, beta).cast<complex>() - ref).cwiseAbs().maxCoeff());
            for (int mp = -two_j; mp <= two_j; mp += 2)
                for (int m = mp + 2; m <= two_j; m += 2)
                    sym = std::max(sym, std::abs(detail::wigner_d_sum(two_j, mp, m, beta) -
                                                 detail::wigner_d_sum(two_j, m, mp, -beta)));
        }
    o.require(dev < 1e-10, fmt::format("oracle dev={:.1e}", dev));
    o.require(sym < 1e-12, fmt::format("symmetry dev={:.1e}", sym));
    return o;
}

Outcome yurke_stoler() {
    Outcome o;
    const auto r = yurke_stoler_cat(2.0, 40);
    o.require(r.fidelity_minus_i >= 1.0 - 1e-10, fmt::format("F(|b>-i|-b>)={:.3e}", r.fidelity_minus_i));
    o.notes.push_back(fmt::format("F(|b>+i|-b>)={:.12f}", r.fidelity_plus_i));
    return o;
}

Outcome gamma() {
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    double mag = 0.0, ratio = 0.0, off = 0.0;
    for (int N = 1; N <= 25; ++N) {
        const auto g = anlmzi_gamma(N);
        mag = std::max({mag, std::abs(std::abs(g(0)) - 1 / std::sqrt(2.0)), std::abs(std::abs(g(N)) - 1 / std::sqrt(2.0))});
        ratio = std::max(ratio, std::abs(g(0) / g(N) + I));
        for (int k = 1; k < N; ++k) off = std::max(off, std::abs(g(k)));
    }
    const double dt = seconds_since(t0);
    o.require(mag < 1e-10, fmt::format("|g| dev={:.1e}", mag));
    o.require(ratio < 1e-10, fmt::format("ratio dev={:.1e}", ratio));
    o.require(off < 1e-12, fmt::format("off-axis={:.1e}", off));
    o.require(dt < 10.0, fmt::format("{:.2f}s", dt));
    return o;
}

Outcome general_mapping() {
    Outcome o;
    std::mt19937 rng(20);
    double worst = 1.0;
    for (int t = 0; t < 20; ++t) {
        const auto psi = random_state(12, rng);
        worst = std::min(worst, fidelity(run_anlmzi(psi), anlmzi_target(psi)));
    }
    o.require(worst >= 1.0 - 1e-10, fmt::format("min F={:.15f}", worst));

    const auto a = random_state(12, rng), b = random_state(12, rng);
    const complex s{0.4, 0.9};
    std::vector<complex> mix(13);
    for (int n = 0; n <= 12; ++n) mix[static_cast<std::size_t>(n)] = a[n] + s * b[n];
    const auto m = SingleModeState::from_amplitudes(mix, false);
    const Eigen::MatrixXcd lhs = run_anlmzi(m).amps();
    const Eigen::MatrixXcd rhs = run_anlmzi(a).amps() + s * run_anlmzi(b).amps();
    const double lin = (lhs - rhs).cwiseAbs().maxCoeff();
    o.require(lin < 1e-10, fmt::format("linearity={:.1e}", lin));
    return o;
}

Outcome cross_kerr() {
    Outcome o;
    double worst = 1.0;
    for (int N = 0; N <= 8; ++N)
        worst = std::min(worst, fidelity(run_cross_kerr_noon(N, 8), run_anlmzi(make_fock(N, 8))));
    o.require(worst >= 1.0 - 1e-10, fmt::format("min F={:.15f}", worst));
    return o;
}

Outcome sensitivity() {
    Outcome o;
    const auto r = coherent_fock_sensitivity(5.0, 15);
    const double cf = std::abs(r.delta_phi_min - 1.0 / std::sqrt(790.0));
    o.require(cf < 1e-12, fmt::format("dphi={:.6f}", r.delta_phi_min));
    const auto big = coherent_fock_sensitivity(std::sqrt(50.0), 50);
    const double ratio = big.delta_phi_min / big.asymptotic;
    o.require(std::abs(ratio - 1.0) < 0.02, fmt::format("asym ratio={:.4f}", ratio));
    double worst = 0.0;
    for (int N = 1; N <= 8; ++N) {
        const auto scan = parity_scan(make_noon(N, N), uniform_phase_grid(97));
        worst = std::max(worst, std::abs(scan.best.delta_phi * N - 1.0));
    }
    o.require(worst < 1e-6, fmt::format("N00N parity rel dev={:.1e}", worst));
    return o;
}

Outcome inverse() {
    Outcome o;
    const auto bs = OpticalElement::beam_splitter();
    {
        std::vector<complex> A{0.0, {0.3, 0.1}, {-0.7, 0.2}, {0.5, -0.4}, {0.1, 0.9}};
        const auto C = invert_bs_target(AxisTargetSpec::antisymmetric(A), bs, 4);
        const complex e = std::exp(I * (pi / 4)), em = std::exp(-I * (pi / 4));
        const double r3 = std::sqrt(3.0) / 2.0;
        Eigen::MatrixXcd P = Eigen::MatrixXcd::Zero(5, 5);
        P(0, 1) = e * A[1];
        P(0, 2) = A[2];
        P(0, 3) = em / 2.0 * A[3];
        P(1, 0) = -e * A[1];
        P(1, 2) = r3 * em * A[3];
        P(1, 3) = -I * A[4];
        P(2, 0) = -A[2];
        P(2, 1) = -r3 * em * A[3];
        P(3, 0) = -em / 2.0 * A[3];
        P(3, 1) = I * A[4];
        const double dev = (canonical_phase(C.amps()) - canonical_phase(P)).cwiseAbs().maxCoeff();
        o.require(dev < 1e-12, fmt::format("coeffs dev={:.1e}", dev));
    }
    {
        double dev = 0.0;
        for (int nc = 2; nc <= 8; ++nc) {
            const Eigen::MatrixXcd D = build_transform(AxisTargetSpec::antisymmetric({}), bs, nc).dense();
            dev = std::max(dev, (D.adjoint() * D - projector_identity(nc).cast<complex>()).cwiseAbs().maxCoeff());
        }
        o.require(dev < 1e-10, fmt::format("T^dag T dev={:.1e}", dev));
    }
    {
        const auto T = build_transform(AxisTargetSpec::antisymmetric({}), OpticalElement::beam_splitter(pi / 2, Axis::y, -1), 1);
        Eigen::MatrixXcd D = T.dense();
        const bool scaled = std::abs(std::abs(D(1, 2)) - std::sqrt(2.0)) < 1e-12;
        D(1, 2) = 0.0;
        const double norm = transform_normalization(T, make_fock(1, 1));
        o.require(scaled && D.cwiseAbs().maxCoeff() < 1e-12 && std::abs(norm - 1 / std::sqrt(2.0)) < 1e-12,
                  fmt::format("sqrt2 ab^dag, norm={:.6f}", norm));
    }
    {
        const auto r = verify_unitary_realization(8);
        o.require(r.unitarity_deviation < 1e-10, fmt::format("T unitary dev={:.1e}", r.unitarity_deviation));
        o.require(r.printed_phase_deviation < 1e-10, fmt::format("printed phases dev={:.3f}", r.printed_phase_deviation));
        o.notes.push_back(fmt::format("swapped phases dev={:.1e}", r.swapped_phase_deviation));
    }
    {
        std::mt19937 rng(99);
        double worst = 1.0;
        for (int t = 0; t < 20; ++t)
            worst = std::min(worst, roundtrip_noon_check(random_state(10, rng), AxisTargetSpec::antisymmetric({})).fidelity);
        o.require(worst >= 1.0 - 1e-10, fmt::format("roundtrip min F={:.15f}", worst));
    }
    return o;
}

Outcome figures() {
    Outcome o;
    const auto dir = std::filesystem::temp_directory_path() / "noonmap_acceptance";
    for (const char* name : {"fig3", "fig4"}) {
        const auto t0 = std::chrono::steady_clock::now();
        const auto r = io::run_named_experiment(name, {dir, {}, {}});
        const double dt = seconds_since(t0);
        for (const auto& c : r.checks) o.require(c.passed, fmt::format("{} {}={:.1e}", name, c.name, c.value));
        o.require(dt < 5.0, fmt::format("{} {:.2f}s", name, dt));
    }
    return o;
}

const std::vector<std::pair<std::string, std::function<Outcome()>>>& criteria() {
    static const std::vector<std::pair<std::string, std::function<Outcome()>>> table{
        {"HOM zero", hom},
        {"eHOM central nodal line", ehom},
        {"Wigner-d oracle", wigner},
        {"Yurke-Stoler cat", yurke_stoler},
        {"gamma coefficients", gamma},
        {"general ANLMZI mapping", general_mapping},
        {"cross-Kerr N00N", cross_kerr},
        {"phase sensitivity", sensitivity},
        {"inverse engineering", inverse},
        {"figure reproduction", figures},
    };
    return table;
}

}  // namespace

int main(int argc, char** argv) {
    int only = 0;
    for (int i = 1; i < argc; ++i) {
        if (std::strcmp(argv[i], "--criterion") == 0 && i + 1 < argc) {
            only = std::atoi(argv[++i]);
        } else {
            std::cerr << "usage: acceptance [--criterion k]\n";
            return 2;
        }
    }
    const auto& table = criteria();
    if (only < 0 || only > static_cast<int>(table.size())) {
        std::cerr << "criterion must be 1.." << table.size() << '\n';
        return 2;
    }
    bool all = true;
    for (std::size_t k = 0; k < table.size(); ++k) {
        if (only && static_cast<int>(k) + 1 != only) continue;
        Outcome o;
        try {
            o = table[k].second();
        } catch (const std::exception& e) {
            o.require(false, std::string("exception: ") + e.what());
        }
        std::string detail;
        for (const auto& n : o.notes) detail += (detail.empty() ? "" : "; ") + n;
        std::cout << fmt::format("[{}] {:>2} {:<26} {}\n", o.pass ? "PASS" : "FAIL", k + 1, table[k].first, detail);
        all = all && o.pass;
    }
    return all ? 0 : 1;
}

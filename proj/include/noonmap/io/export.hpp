// export.hpp
// Plot-ready file writers: joint distributions as CSV and PGM, amplitudes and
// features as JSON, transform matrices as sparse triplets.

#pragma once

#include <algorithm>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <fmt/format.h>

#include "json.hpp"
#include "noonmap/analysis.hpp"
#include "noonmap/fock.hpp"
#include "noonmap/inverse.hpp"

namespace noonmap::io {

using json = nlohmann::ordered_json;

namespace detail {

inline std::ofstream open_out(const std::filesystem::path& path, bool binary = false) {
    if (path.has_parent_path()) std::filesystem::create_directories(path.parent_path());
    std::ofstream out(path, binary ? std::ios::binary : std::ios::out);
    if (!out) throw Error("cannot open " + path.string() + " for writing");
    return out;
}

// Shortest round-trip text for a double.
inline std::string num(double x) { return fmt::format("{:.17g}", x); }

}  // namespace detail

inline void write_joint_csv(const std::filesystem::path& path, const JointDistribution& dist) {
    auto out = detail::open_out(path);
    out << "n,n_prime,probability\n";
    const auto& P = dist.probs();
    for (Eigen::Index n = 0; n < P.rows(); ++n)
        for (Eigen::Index np = 0; np < P.cols(); ++np)
            out << n << ',' << np << ',' << detail::num(std::max(0.0, P(n, np))) << '\n';
}

inline void write_single_mode_csv(const std::filesystem::path& path, const SingleModeState& psi) {
    auto out = detail::open_out(path);
    out << "n,probability\n";
    for (int n = 0; n <= psi.n_cut(); ++n) out << n << ',' << detail::num(std::norm(psi[n])) << '\n';
}

// 8-bit binary PGM, row index n (a mode), column index n' (b mode), scaled so
// the largest value maps to 255.
inline void write_heatmap_pgm(const std::filesystem::path& path, const Eigen::MatrixXd& values) {
    auto out = detail::open_out(path, true);
    const double mx = values.maxCoeff();
    out << "P5\n" << values.cols() << ' ' << values.rows() << "\n255\n";
    for (Eigen::Index r = 0; r < values.rows(); ++r)
        for (Eigen::Index c = 0; c < values.cols(); ++c) {
            const double v = mx > 0.0 ? std::clamp(values(r, c) / mx, 0.0, 1.0) : 0.0;
            out.put(static_cast<char>(static_cast<unsigned char>(std::lround(255.0 * v))));
        }
}

inline void write_heatmap_pgm(const std::filesystem::path& path, const JointDistribution& dist) {
    write_heatmap_pgm(path, dist.probs());
}

// Bar chart of a single-mode distribution, one column per photon number.
inline void write_bar_pgm(const std::filesystem::path& path, const SingleModeState& psi, int height = 64) {
    const int w = psi.n_cut() + 1;
    double mx = 0.0;
    for (int n = 0; n < w; ++n) mx = std::max(mx, std::norm(psi[n]));
    Eigen::MatrixXd img = Eigen::MatrixXd::Zero(height, w);
    for (int n = 0; n < w; ++n) {
        const int h = mx > 0.0 ? static_cast<int>(std::lround(height * std::norm(psi[n]) / mx)) : 0;
        for (int r = 0; r < h; ++r) img(height - 1 - r, n) = 1.0;
    }
    write_heatmap_pgm(path, img);
}

inline json amplitudes_json(const TwoModeState& s) {
    json j;
    j["n_cut"] = s.n_cut();
    j["truncation_loss"] = s.truncation_loss();
    json amps = json::array();
    for (int n = 0; n <= s.n_cut(); ++n)
        for (int np = 0; np <= s.n_cut(); ++np) {
            const complex c = s(n, np);
            if (c == complex{0.0, 0.0}) continue;
            amps.push_back({{"n", n}, {"n_prime", np}, {"re", c.real()}, {"im", c.imag()}});
        }
    j["amplitudes"] = std::move(amps);
    return j;
}

inline json features_json(const DistributionFeatures& f) {
    auto points = [](const std::vector<GridPoint>& v) {
        json a = json::array();
        for (const auto& p : v) a.push_back({{"n", p.n}, {"n_prime", p.n_prime}, {"probability", p.p}});
        return a;
    };
    json j;
    j["cnl_max_prob"] = f.cnl_max_prob;
    j["peak_count"] = f.peaks.size();
    j["valley_count"] = f.valleys;
    j["principal_total"] = f.principal_total;
    j["axis_mass"] = f.axis_mass;
    j["total"] = f.total;
    j["peaks"] = points(f.peaks);
    j["grid_maxima"] = points(f.grid_maxima);
    return j;
}

inline void write_json(const std::filesystem::path& path, const json& j) {
    auto out = detail::open_out(path);
    out << j.dump(2) << '\n';
}

inline void write_transform_triplets(const std::filesystem::path& path, const TransformMatrix& T) {
    auto out = detail::open_out(path);
    out << "# n_cut " << T.n_cut << " dim " << T.entries.rows() << "\n# row col re im\n";
    for (int k = 0; k < T.entries.outerSize(); ++k)
        for (Eigen::SparseMatrix<complex>::InnerIterator it(T.entries, k); it; ++it)
            out << it.row() << ' ' << it.col() << ' ' << detail::num(it.value().real()) << ' '
                << detail::num(it.value().imag()) << '\n';
}

inline TransformMatrix read_transform_triplets(const std::filesystem::path& path) {
    std::ifstream in(path);
    if (!in) throw Error("cannot open " + path.string());
    TransformMatrix T;
    std::vector<Eigen::Triplet<complex>> trip;
    std::string line;
    long dim = -1;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        if (line.empty()) continue;
        std::istringstream ls(line);
        if (line[0] == '#') {
            std::string hash, key;
            ls >> hash >> key;
            if (key == "n_cut") {
                std::string dim_key;
                ls >> T.n_cut >> dim_key >> dim;
            }
            continue;
        }
        long r = 0, c = 0;
        double re = 0.0, im = 0.0;
        if (!(ls >> r >> c >> re >> im)) throw Error(fmt::format("{}:{}: malformed triplet", path.string(), lineno));
        trip.emplace_back(static_cast<int>(r), static_cast<int>(c), complex{re, im});
    }
    if (dim < 0) throw Error(path.string() + ": missing '# n_cut' header");
    T.entries.resize(dim, dim);
    T.entries.setFromTriplets(trip.begin(), trip.end());
    T.is_unitary = isometric_on_inputs(T.entries, T.n_cut);
    return T;
}

}  // namespace noonmap::io

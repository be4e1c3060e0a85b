#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <sstream>

#include "noonmap/io/config.hpp"
#include "noonmap/io/experiments.hpp"

using namespace noonmap;
namespace fs = std::filesystem;

namespace {

fs::path scratch_dir(const std::string& leaf) {
    const auto p = fs::temp_directory_path() / "noonmap_tests" / leaf;
    fs::remove_all(p);
    fs::create_directories(p);
    return p;
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

io::ExperimentConfig parse(const std::string& text) { return io::parse_config(YAML::Load(text)); }

int config_error_line(const std::string& text) {
    try {
        parse(text);
    } catch (const io::ConfigError& e) {
        return e.line();
    }
    return -1;
}

}  // namespace

TEST(Config, PresetsExpand) {
    const auto c = parse("cutoff: 6\ninput:\n  a: {kind: fock, n: 3}\npipeline: anlmzi\n");
    EXPECT_EQ(c.preset, "anlmzi");
    EXPECT_EQ(c.pipeline.size(), 6u);
    EXPECT_EQ(c.b.kind, "vacuum");
    const auto x = parse("cutoff: 6\ninput:\n  a: {kind: fock, n: 3}\npipeline: cross-kerr-noon\n");
    EXPECT_EQ(x.pipeline[1].kind, ElementKind::cross_kerr);
    EXPECT_NEAR(x.pipeline[2].param, -3 * pi / 2, 1e-15);
}

TEST(Config, ComplexParameters) {
    const auto c = parse("cutoff: 20\ninput:\n  a: {kind: coherent, alpha: [1, -0.5]}\npipeline: bs-only\n");
    EXPECT_EQ(c.a.param, complex(1.0, -0.5));
}

TEST(Config, ErrorsCarryLineNumbers) {
    EXPECT_EQ(config_error_line("cutoff: 4\nbogus: 1\ninput: {a: {kind: vacuum}}\npipeline: bs-only\n"), 2);
    EXPECT_EQ(config_error_line("cutoff: 4\ninput:\n  a: {kind: squeezed}\npipeline: bs-only\n"), 3);
    EXPECT_EQ(config_error_line("cutoff: 4\ninput:\n  a: {kind: fock, n: 1}\npipeline: mzi\n"), 4);
    EXPECT_EQ(config_error_line("cutoff: 4\ninput:\n  a: {kind: fock, n: 1}\npipeline:\n"
                                "  - {element: beam_splitter}\n  - {element: beam_splitter, axis: z}\n"),
              6);
    EXPECT_EQ(config_error_line("cutoff: x\ninput: {a: {kind: vacuum}}\npipeline: bs-only\n"), 1);
    EXPECT_GT(config_error_line("input: {a: {kind: vacuum}}\npipeline: bs-only\n"), 0);
    EXPECT_GT(config_error_line("cutoff: 4\ninput:\n  a: {kind: coherent, alpha: 1}\npipeline: cross-kerr-noon\n"),
              0);
}

TEST(Config, MissingFile) {
    EXPECT_THROW(io::load_config("/nonexistent/noonmap.yaml"), io::ConfigError);
}

TEST(Config, SampleConfigsRun) {
    const auto dir = scratch_dir("samples");
    const auto cwd = fs::current_path();
    fs::current_path(dir);
    for (const char* name : {"ehom.yaml", "anlmzi_fock3.yaml", "cross_kerr_noon.yaml", "coherent_anlmzi.yaml",
                             "explicit_pipeline.yaml"}) {
        std::ostringstream log;
        const auto cfg = io::load_config(fs::path(NOONMAP_CONFIG_DIR) / name);
        EXPECT_NO_THROW(io::run_config(cfg, log)) << name;
        EXPECT_NE(log.str().find("truncation loss"), std::string::npos);
    }
    EXPECT_TRUE(fs::exists(dir / "out/ehom/joint.csv"));
    EXPECT_TRUE(fs::exists(dir / "out/anlmzi_fock3/amplitudes.json"));
    EXPECT_THROW(io::load_config(fs::path(NOONMAP_CONFIG_DIR) / "malformed.yaml"), io::ConfigError);
    fs::current_path(cwd);
}

TEST(Config, EhomSummary) {
    std::ostringstream log;
    const auto s = io::run_config(io::load_config(fs::path(NOONMAP_CONFIG_DIR) / "ehom.yaml"), log);
    EXPECT_EQ(s.peak_count, 16);
    EXPECT_EQ(s.valley_count, 15);
    EXPECT_LT(s.cnl_max_prob, 1e-20);
}

TEST(Export, JointCsvLayout) {
    const auto dir = scratch_dir("csv");
    io::write_joint_csv(dir / "j.csv", joint_distribution(make_noon(1, 1)));
    std::ifstream in(dir / "j.csv");
    std::string line;
    std::getline(in, line);
    EXPECT_EQ(line, "n,n_prime,probability");
    const int expect_n[] = {0, 0, 1, 1}, expect_np[] = {0, 1, 0, 1};
    const double expect_p[] = {0.0, 0.5, 0.5, 0.0};
    for (int k = 0; k < 4; ++k) {
        ASSERT_TRUE(std::getline(in, line));
        int n = -1, np = -1;
        double p = -1.0;
        char c1 = 0, c2 = 0;
        std::istringstream ls(line);
        ls >> n >> c1 >> np >> c2 >> p;
        EXPECT_EQ(n, expect_n[k]);
        EXPECT_EQ(np, expect_np[k]);
        EXPECT_NEAR(p, expect_p[k], 1e-15);
    }
    EXPECT_FALSE(std::getline(in, line));
}

TEST(Export, HeatmapHeaderAndScaling) {
    const auto dir = scratch_dir("pgm");
    Eigen::MatrixXd m(2, 3);
    m << 0.0, 0.5, 1.0, 0.25, 0.0, 0.0;
    io::write_heatmap_pgm(dir / "h.pgm", m);
    const auto s = slurp(dir / "h.pgm");
    const std::string header = "P5\n3 2\n255\n";
    ASSERT_EQ(s.substr(0, header.size()), header);
    const auto px = s.substr(header.size());
    ASSERT_EQ(px.size(), 6u);
    EXPECT_EQ(static_cast<unsigned char>(px[2]), 255);
    EXPECT_EQ(static_cast<unsigned char>(px[1]), 128);
    EXPECT_EQ(static_cast<unsigned char>(px[0]), 0);
}

TEST(Export, TripletRoundtrip) {
    const auto dir = scratch_dir("triplets");
    const auto T = build_transform(AxisTargetSpec::antisymmetric({}), OpticalElement::beam_splitter(), 5);
    io::write_transform_triplets(dir / "t.txt", T);
    const auto back = io::read_transform_triplets(dir / "t.txt");
    EXPECT_EQ(back.n_cut, 5);
    EXPECT_EQ(back.is_unitary, T.is_unitary);
    EXPECT_EQ((back.dense() - T.dense()).cwiseAbs().maxCoeff(), 0.0);
}

TEST(Export, MalformedTriplets) {
    const auto dir = scratch_dir("bad_triplets");
    { std::ofstream(dir / "t.txt") << "# n_cut 1 dim 4\n0 1 nope\n"; }
    EXPECT_THROW(io::read_transform_triplets(dir / "t.txt"), Error);
    { std::ofstream(dir / "u.txt") << "0 1 1 0\n"; }
    EXPECT_THROW(io::read_transform_triplets(dir / "u.txt"), Error);
}

TEST(Experiments, DeterministicOutput) {
    const auto a = scratch_dir("det_a"), b = scratch_dir("det_b");
    io::run_named_experiment("fig3", {a, {}, {}});
    io::run_named_experiment("fig3", {b, {}, {}});
    for (const char* f : {"fig3_joint.csv", "fig3_heatmap.pgm", "fig3_input.csv"})
        EXPECT_EQ(slurp(a / f), slurp(b / f)) << f;
}

TEST(Experiments, ReproductionsPass) {
    const auto dir = scratch_dir("experiments");
    for (const char* name : {"fig1a", "fig1b", "fig3", "fig4", "eq29-check", "eq33-check", "gamma-table"}) {
        const auto r = io::run_named_experiment(name, {dir, {}, {}});
        EXPECT_TRUE(r.passed()) << name;
        EXPECT_TRUE(fs::exists(dir / (std::string(name) + "_summary.json"))) << name;
    }
}

TEST(Experiments, LiteralPhaseCheckFails) {
    const auto r = io::run_named_experiment("eq37-check", {scratch_dir("eq37"), {}, {}});
    EXPECT_FALSE(r.passed());
    for (const auto& c : r.checks)
        if (c.name != "printed_phase_deviation") EXPECT_TRUE(c.passed) << c.name;
}

TEST(Experiments, ToleranceOverride) {
    const auto r = io::run_named_experiment("fig3", {scratch_dir("tol"), {}, 0.0});
    EXPECT_FALSE(r.passed());
}

TEST(Experiments, UnknownName) {
    EXPECT_THROW(io::run_named_experiment("fig9", {}), DomainError);
}

// config.hpp
// YAML experiment configs for `simulate --config`.
//
//   cutoff: 60
//   input:
//     a: {kind: coherent, alpha: 5}          # vacuum | fock(n) | coherent(alpha) |
//     b: {kind: fock, n: 15}                 # cat(alpha, parity) | zstate(z)
//   pipeline: bs-only                        # anlmzi | cross-kerr-noon | bs-only | element list
//   analyses: [distribution, features, fringe, sensitivity, inverse]
//   fringe: {N: 4, samples: 64}
//   outputs:
//     - {kind: joint_csv, path: out/joint.csv}
//
// Complex parameters accept a scalar or a [re, im] pair. Element lists use
//   - {element: beam_splitter, theta: 1.5707963267948966, axis: x, sign: 1}
//   - {element: phase_shift, mode: a, phi: 0.5}
//   - {element: self_kerr, mode: a, kappa: 1.5707963267948966, keep_linear: true}
//   - {element: cross_kerr, kappa: -1.5707963267948966}

#pragma once

#include <algorithm>
#include <filesystem>
#include <iostream>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include <fmt/format.h>
#include <yaml-cpp/yaml.h>

#include "noonmap/analysis.hpp"
#include "noonmap/anlmzi.hpp"
#include "noonmap/inverse.hpp"
#include "noonmap/io/export.hpp"

namespace noonmap::io {

class ConfigError : public Error {
public:
    ConfigError(const std::string& what, int line) : Error(fmt::format("line {}: {}", line, what)), line_(line) {}
    int line() const noexcept { return line_; }

private:
    int line_;
};

struct StateSpec {
    std::string kind = "vacuum";
    int n = 0;
    complex param{0.0, 0.0};  // alpha or z
    int parity = 1;
};

struct ExportRequest {
    std::string kind;
    std::filesystem::path path;
};

struct ExperimentConfig {
    int cutoff = 0;
    StateSpec a;
    StateSpec b;
    std::string preset;  // empty when an explicit element list was given
    std::vector<OpticalElement> pipeline;
    std::set<std::string> analyses;
    int fringe_N = 1;
    int fringe_samples = 64;
    std::vector<ExportRequest> outputs;
};

namespace detail {

inline int line_of(const YAML::Node& n) { return n.Mark().line + 1; }

template <class T>
T get(const YAML::Node& parent, const char* key, const T& fallback, bool required = false) {
    const auto n = parent[key];
    if (!n) {
        if (required) throw ConfigError(fmt::format("missing required key '{}'", key), line_of(parent));
        return fallback;
    }
    try {
        return n.as<T>();
    } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("key '{}' has the wrong type", key), line_of(n));
    }
}

inline complex get_complex(const YAML::Node& parent, const char* key, bool required) {
    const auto n = parent[key];
    if (!n) {
        if (required) throw ConfigError(fmt::format("missing required key '{}'", key), line_of(parent));
        return {0.0, 0.0};
    }
    try {
        if (n.IsSequence()) {
            if (n.size() != 2) throw ConfigError(fmt::format("'{}' must be [re, im]", key), line_of(n));
            return {n[0].as<double>(), n[1].as<double>()};
        }
        return {n.as<double>(), 0.0};
    } catch (const YAML::Exception&) {
        throw ConfigError(fmt::format("'{}' must be a number or [re, im]", key), line_of(n));
    }
}

inline StateSpec parse_state(const YAML::Node& n) {
    if (!n) return {};
    if (!n.IsMap()) throw ConfigError("state must be a mapping with a 'kind'", line_of(n));
    StateSpec s;
    s.kind = get<std::string>(n, "kind", "", true);
    if (s.kind == "vacuum") {
    } else if (s.kind == "fock") {
        s.n = get<int>(n, "n", 0, true);
    } else if (s.kind == "coherent") {
        s.param = get_complex(n, "alpha", true);
    } else if (s.kind == "cat") {
        s.param = get_complex(n, "alpha", true);
        s.parity = get<int>(n, "parity", 1);
    } else if (s.kind == "zstate") {
        s.param = get_complex(n, "z", true);
    } else {
        throw ConfigError("unknown state kind '" + s.kind + "'", line_of(n));
    }
    return s;
}

inline Axis parse_axis(const YAML::Node& n) {
    const auto s = get<std::string>(n, "axis", "x");
    if (s == "x") return Axis::x;
    if (s == "y") return Axis::y;
    throw ConfigError("axis must be x or y", line_of(n));
}

inline Mode parse_mode(const YAML::Node& n) {
    const auto s = get<std::string>(n, "mode", "", true);
    if (s == "a") return Mode::a;
    if (s == "b") return Mode::b;
    throw ConfigError("mode must be a or b", line_of(n));
}

inline OpticalElement parse_element(const YAML::Node& n) {
    if (!n.IsMap()) throw ConfigError("pipeline entries must be mappings", line_of(n));
    const auto kind = get<std::string>(n, "element", "", true);
    OpticalElement el;
    if (kind == "beam_splitter")
        el = OpticalElement::beam_splitter(get<double>(n, "theta", pi / 2), parse_axis(n), get<int>(n, "sign", 1));
    else if (kind == "phase_shift")
        el = OpticalElement::phase_shift(parse_mode(n), get<double>(n, "phi", 0.0, true));
    else if (kind == "self_kerr")
        el = OpticalElement::self_kerr(parse_mode(n), get<double>(n, "kappa", pi / 2), get<bool>(n, "keep_linear", true));
    else if (kind == "cross_kerr")
        el = OpticalElement::cross_kerr(get<double>(n, "kappa", -pi / 2));
    else
        throw ConfigError("unknown element '" + kind + "'", line_of(n));
    try {
        el.validate();
    } catch (const DomainError& e) {
        throw ConfigError(e.what(), line_of(n));
    }
    return el;
}

}  // namespace detail

inline ExperimentConfig parse_config(const YAML::Node& root) {
    if (!root.IsMap()) throw ConfigError("config must be a mapping", detail::line_of(root));
    static const std::set<std::string> known{"cutoff", "input", "pipeline", "analyses", "fringe", "outputs"};
    for (const auto& kv : root) {
        const auto key = kv.first.as<std::string>();
        if (!known.count(key)) throw ConfigError("unknown key '" + key + "'", detail::line_of(kv.first));
    }
    ExperimentConfig c;
    c.cutoff = detail::get<int>(root, "cutoff", 0, true);
    if (c.cutoff < 0) throw ConfigError("cutoff must be nonnegative", detail::line_of(root["cutoff"]));
    const auto input = root["input"];
    if (!input || !input.IsMap()) throw ConfigError("missing 'input' mapping", detail::line_of(root));
    c.a = detail::parse_state(input["a"]);
    c.b = detail::parse_state(input["b"]);

    const auto pipe = root["pipeline"];
    if (!pipe) throw ConfigError("missing 'pipeline'", detail::line_of(root));
    if (pipe.IsScalar()) {
        c.preset = pipe.as<std::string>();
        if (c.preset == "bs-only") {
            c.pipeline = {OpticalElement::beam_splitter()};
        } else if (c.preset == "anlmzi") {
            c.pipeline = anlmzi_elements(AnlmziConfig{});
        } else if (c.preset == "cross-kerr-noon") {
            if (c.a.kind != "fock") throw ConfigError("cross-kerr-noon needs a Fock input on mode a", detail::line_of(pipe));
            AnlmziConfig ac;
            ac.kerr_kind = KerrKind::cross_kerr;
            ac.fock_N = c.a.n;
            c.pipeline = anlmzi_elements(ac);
        } else {
            throw ConfigError("unknown pipeline preset '" + c.preset + "'", detail::line_of(pipe));
        }
    } else if (pipe.IsSequence()) {
        for (const auto& e : pipe) c.pipeline.push_back(detail::parse_element(e));
    } else {
        throw ConfigError("pipeline must be a preset name or a list", detail::line_of(pipe));
    }

    static const std::set<std::string> known_analyses{"distribution", "features", "fringe", "sensitivity", "inverse"};
    if (const auto an = root["analyses"]) {
        if (!an.IsSequence()) throw ConfigError("analyses must be a list", detail::line_of(an));
        for (const auto& a : an) {
            const auto s = a.as<std::string>();
            if (!known_analyses.count(s)) throw ConfigError("unknown analysis '" + s + "'", detail::line_of(a));
            c.analyses.insert(s);
        }
    }
    if (const auto fr = root["fringe"]) {
        c.fringe_N = detail::get<int>(fr, "N", 1);
        c.fringe_samples = detail::get<int>(fr, "samples", 64);
        if (c.fringe_samples < 4) throw ConfigError("fringe.samples must be at least 4", detail::line_of(fr));
    }
    static const std::set<std::string> kinds{"joint_csv", "heatmap_pgm", "amplitudes_json", "features_json",
                                             "transform_triplets"};
    if (const auto outs = root["outputs"]) {
        if (!outs.IsSequence()) throw ConfigError("outputs must be a list", detail::line_of(outs));
        for (const auto& o : outs) {
            ExportRequest r{detail::get<std::string>(o, "kind", "", true), detail::get<std::string>(o, "path", "", true)};
            if (!kinds.count(r.kind)) throw ConfigError("unknown output kind '" + r.kind + "'", detail::line_of(o));
            c.outputs.push_back(std::move(r));
        }
    }
    return c;
}

inline ExperimentConfig load_config(const std::filesystem::path& path) {
    YAML::Node root;
    try {
        root = YAML::LoadFile(path.string());
    } catch (const YAML::BadFile&) {
        throw ConfigError("cannot read " + path.string(), 0);
    } catch (const YAML::ParserException& e) {
        throw ConfigError(e.msg, e.mark.line + 1);
    }
    return parse_config(root);
}

inline SingleModeState build_state(const StateSpec& s, int n_cut) {
    if (s.kind == "fock") return make_fock(s.n, n_cut);
    if (s.kind == "coherent") return make_coherent(s.param, n_cut);
    if (s.kind == "cat") return make_cat(s.param, s.parity, n_cut);
    if (s.kind == "zstate") return make_zstate(s.param, n_cut);
    return make_vacuum(n_cut);
}

struct RunSummary {
    double max_norm_drift = 0.0;
    double truncation_loss = 0.0;
    double axis_mass = 0.0;
    double cnl_max_prob = 0.0;
    int peak_count = 0;
    int valley_count = 0;
};

// Runs the pipeline and analyses, writes exports, prints a summary table.
inline RunSummary run_config(const ExperimentConfig& c, std::ostream& log = std::cout) {
    const auto psi_a = build_state(c.a, c.cutoff);
    const auto psi_b = build_state(c.b, c.cutoff);
    if (!c.preset.empty()) {
        log << "preset " << c.preset << " ->";
        for (const auto& e : c.pipeline) log << ' ' << e.describe();
        log << '\n';
    }
    const auto res = apply_pipeline(tensor(psi_a, psi_b), c.pipeline);
    const auto& out = res.state;
    const auto dist = joint_distribution(out);
    const auto feat = analyze_distribution(dist);

    RunSummary s;
    s.max_norm_drift = res.max_norm_drift();
    s.truncation_loss = out.truncation_loss();
    s.axis_mass = feat.axis_mass;
    s.cnl_max_prob = feat.cnl_max_prob;
    s.peak_count = static_cast<int>(feat.peaks.size());
    s.valley_count = feat.valleys;

    log << fmt::format("{:<22}{:>14}\n", "quantity", "value");
    log << fmt::format("{:<22}{:>14.3e}\n", "norm drift (max)", s.max_norm_drift);
    log << fmt::format("{:<22}{:>14.3e}\n", "truncation loss", s.truncation_loss);
    log << fmt::format("{:<22}{:>14.10f}\n", "axis mass", s.axis_mass);
    log << fmt::format("{:<22}{:>14.3e}\n", "CNL max P(n,n)", s.cnl_max_prob);
    log << fmt::format("{:<22}{:>14d}\n", "peaks", s.peak_count);
    if (c.analyses.count("distribution")) log << fmt::format("{:<22}{:>14.12f}\n", "total probability", dist.total());
    if (c.analyses.count("features")) log << fmt::format("{:<22}{:>14d}\n", "valleys", s.valley_count);
    if (c.analyses.count("fringe")) {
        const auto fr = sigma_n_fringe(out, c.fringe_N, uniform_phase_grid(c.fringe_samples));
        double amp = 0.0;
        for (double v : fr) amp = std::max(amp, std::abs(v));
        log << fmt::format("{:<22}{:>14d}\n", "fringe frequency", dominant_frequency(fr));
        log << fmt::format("{:<22}{:>14.10f}\n", "fringe amplitude", amp);
    }
    if (c.analyses.count("sensitivity")) {
        if (c.a.kind == "coherent" && (c.b.kind == "fock" || c.b.kind == "vacuum")) {
            const auto r = coherent_fock_sensitivity(c.a.param, c.b.kind == "fock" ? c.b.n : 0);
            log << fmt::format("{:<22}{:>14.8f}\n", "dphi closed form", r.delta_phi_min);
            log << fmt::format("{:<22}{:>14.8f}\n", "SQL", r.sql);
            log << fmt::format("{:<22}{:>14.8f}\n", "HL", r.hl);
        }
        const auto scan = parity_scan(out, uniform_phase_grid(128));
        log << fmt::format("{:<22}{:>14.8f}\n", "dphi parity (scan)", scan.best.delta_phi);
    }
    std::optional<TransformMatrix> T;
    if (c.analyses.count("inverse") || std::any_of(c.outputs.begin(), c.outputs.end(),
                                                   [](const auto& o) { return o.kind == "transform_triplets"; }))
        T = build_transform(AxisTargetSpec::antisymmetric({}), OpticalElement::beam_splitter(), c.cutoff);
    if (c.analyses.count("inverse")) {
        try {
            const auto rt = roundtrip_noon_check(psi_a, AxisTargetSpec::antisymmetric({}));
            log << fmt::format("{:<22}{:>14.3e}\n", "inverse infidelity", 1.0 - rt.fidelity);
        } catch (const KernelError& e) {
            log << fmt::format("{:<22}{:>14}\n", "inverse", "kernel input");
        }
    }
    for (const auto& o : c.outputs) {
        if (o.kind == "joint_csv") write_joint_csv(o.path, dist);
        else if (o.kind == "heatmap_pgm") write_heatmap_pgm(o.path, dist);
        else if (o.kind == "amplitudes_json") write_json(o.path, amplitudes_json(out));
        else if (o.kind == "features_json") write_json(o.path, features_json(feat));
        else write_transform_triplets(o.path, *T);
        log << "wrote " << o.path.string() << '\n';
    }
    return s;
}

}  // namespace noonmap::io

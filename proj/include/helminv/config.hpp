#pragma once

#include "grid.hpp"
#include "inversion.hpp"

#include <cstdint>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace helminv {

/// One reconstruction run. Flat key=value config file plus overrides.
struct ExperimentConfig {
    double k = 20.0;
    int m = 2;
    int forward_n = 201;
    int inverse_n = 191;
    double amplitude = 0.25;
    DataSource mode = DataSource::full;
    InterpOrder interp = InterpOrder::bilinear;
    int margin = 2;
    int workers = 1;
    double noise = 0.0;
    std::uint64_t seed = 1234;
    double support_radius = 0.35;
    double picard_tol = 1e-10;
    int picard_max_iters = 50;
    std::vector<std::vector<Bump>> bumps;  // per ell, unscaled

    void validate() const {
        std::vector<std::string> errs;
        if (m < 2) errs.push_back("m must be >= 2");
        if (!(amplitude > 0.0)) errs.push_back("amplitude must be positive");
        if (!(k > 0.0)) errs.push_back("k must be positive");
        if (forward_n < 4) errs.push_back("forward grid too small");
        if (inverse_n < 4) errs.push_back("inverse grid too small");
        if (mode == DataSource::full && forward_n == inverse_n)
            errs.push_back("full mode requires distinct forward and inverse grids");
        if (noise < 0.0) errs.push_back("noise level must be non-negative");
        if (workers < 1) errs.push_back("workers must be >= 1");
        if (!bumps.empty() && static_cast<int>(bumps.size()) != m)
            errs.push_back("bump specs must cover exactly m coefficients");
        if (!errs.empty()) {
            std::string msg = "invalid config:";
            for (const auto& e : errs) msg += "\n  - " + e;
            throw std::invalid_argument(msg);
        }
    }

    /// Truth coefficients sampled on a grid, scaled by the amplitude.
    std::vector<ScalarField2D> make_truth(const Grid2D& grid) const {
        std::vector<std::vector<Bump>> specs = bumps.empty() ? default_bumps(m) : bumps;
        std::vector<ScalarField2D> out;
        out.reserve(specs.size());
        SupportSpec support{support_radius};
        for (auto spec : specs) {
            for (Bump& b : spec) b.amplitude *= amplitude;
            out.push_back(synth_coefficient(grid, spec, support));
        }
        return out;
    }

    ReconstructionPlan make_plan() const {
        ReconstructionPlan plan;
        plan.m = m;
        plan.k = k;
        plan.inv_grid = Grid2D::make(inverse_n);
        plan.source = mode;
        plan.interp = interp;
        plan.margin = margin + (interp == InterpOrder::bicubic ? 1 : 0);
        plan.workers = workers;
        return plan;
    }

    /// Antisymmetric bump pairs (opposite signs at mirrored centers) make each
    /// coefficient odd, so its spectrum is odd and the synthesized DC mode is
    /// exactly zero rather than a small spurious constant. Centers stay close
    /// to the origin: the pair modulates the spectrum by sin(x0·xi), and small
    /// |x0| keeps that factor smooth on the 2*pi frequency lattice.
    static std::vector<std::vector<Bump>> default_bumps(int m) {
        static const std::vector<std::vector<Bump>> catalog = {
            {{-0.100, -0.060, 1.0, 0.16}, {0.100, 0.060, -1.0, 0.16}},
            {{0.030, -0.022, 1.0, 0.11}, {-0.030, 0.022, -1.0, 0.11}},
            {{0.004, 0.040, 1.0, 0.10}, {-0.004, -0.040, -1.0, 0.10}},
            {{-0.028, 0.010, 1.0, 0.10}, {0.028, -0.010, -1.0, 0.10}},
        };
        std::vector<std::vector<Bump>> out;
        for (int ell = 0; ell < m; ++ell) out.push_back(catalog[ell % catalog.size()]);
        return out;
    }

    std::string canonical_string() const {
        std::ostringstream os;
        os << "k=" << k << "\nm=" << m << "\nforward_n=" << forward_n
           << "\ninverse_n=" << inverse_n << "\namplitude=" << amplitude
           << "\nmode=" << (mode == DataSource::oracle ? "oracle" : "full")
           << "\ninterp=" << (interp == InterpOrder::bicubic ? "bicubic" : "bilinear")
           << "\nmargin=" << margin << "\nworkers=" << workers << "\nnoise=" << noise
           << "\nseed=" << seed << "\nsupport_radius=" << support_radius
           << "\npicard_tol=" << picard_tol << "\npicard_max_iters=" << picard_max_iters << "\n";
        const auto specs = bumps.empty() ? default_bumps(m) : bumps;
        for (std::size_t ell = 0; ell < specs.size(); ++ell) {
            os << "c" << (ell + 1) << ".bumps=";
            for (std::size_t b = 0; b < specs[ell].size(); ++b) {
                const Bump& bump = specs[ell][b];
                if (b) os << ";";
                os << bump.cx << ":" << bump.cy << ":" << bump.amplitude << ":" << bump.width;
            }
            os << "\n";
        }
        return os.str();
    }

    void apply(const std::string& key, const std::string& value);
    static ExperimentConfig preset(const std::string& name);
    static ExperimentConfig from_file(const std::string& path);
};

namespace detail {

inline std::vector<Bump> parse_bump_list(const std::string& s) {
    std::vector<Bump> out;
    std::istringstream ss(s);
    std::string item;
    while (std::getline(ss, item, ';')) {
        if (item.empty()) continue;
        Bump b;
        if (std::sscanf(item.c_str(), "%lf:%lf:%lf:%lf", &b.cx, &b.cy, &b.amplitude, &b.width) != 4)
            throw std::invalid_argument("bad bump spec '" + item + "' (want cx:cy:amp:width)");
        out.push_back(b);
    }
    return out;
}

}  // namespace detail

inline void ExperimentConfig::apply(const std::string& key, const std::string& value) {
    if (key == "k") k = std::stod(value);
    else if (key == "m") m = std::stoi(value);
    else if (key == "forward_n") forward_n = std::stoi(value);
    else if (key == "inverse_n") inverse_n = std::stoi(value);
    else if (key == "amplitude") amplitude = std::stod(value);
    else if (key == "mode") {
        if (value == "oracle") mode = DataSource::oracle;
        else if (value == "full") mode = DataSource::full;
        else throw std::invalid_argument("mode must be 'oracle' or 'full'");
    } else if (key == "interp") {
        if (value == "bilinear") interp = InterpOrder::bilinear;
        else if (value == "bicubic") interp = InterpOrder::bicubic;
        else throw std::invalid_argument("interp must be 'bilinear' or 'bicubic'");
    } else if (key == "margin") margin = std::stoi(value);
    else if (key == "workers") workers = std::stoi(value);
    else if (key == "noise") noise = std::stod(value);
    else if (key == "seed") seed = std::stoull(value);
    else if (key == "support_radius") support_radius = std::stod(value);
    else if (key == "picard_tol") picard_tol = std::stod(value);
    else if (key == "picard_max_iters") picard_max_iters = std::stoi(value);
    else if (key.size() > 7 && key[0] == 'c' && key.substr(key.find('.')) == ".bumps") {
        const int ell = std::stoi(key.substr(1, key.find('.') - 1));
        if (ell < 1) throw std::invalid_argument("bad coefficient index in '" + key + "'");
        if (static_cast<int>(bumps.size()) < ell) bumps.resize(static_cast<std::size_t>(ell));
        bumps[static_cast<std::size_t>(ell - 1)] = detail::parse_bump_list(value);
    } else {
        throw std::invalid_argument("unknown config key '" + key + "'");
    }
}

inline ExperimentConfig ExperimentConfig::preset(const std::string& name) {
    ExperimentConfig cfg;
    if (name == "m2-paper") {
        cfg.m = 2;
    } else if (name == "m3-paper") {
        cfg.m = 3;
    } else {
        throw std::invalid_argument("unknown preset '" + name + "' (have m2-paper, m3-paper)");
    }
    return cfg;
}

inline ExperimentConfig ExperimentConfig::from_file(const std::string& path) {
    std::ifstream in(path);
    if (!in) throw std::runtime_error("cannot open config file " + path);
    ExperimentConfig cfg;
    std::string line;
    int lineno = 0;
    while (std::getline(in, line)) {
        ++lineno;
        const auto hash = line.find('#');
        if (hash != std::string::npos) line = line.substr(0, hash);
        while (!line.empty() && (line.back() == ' ' || line.back() == '\t' || line.back() == '\r'))
            line.pop_back();
        std::size_t start = line.find_first_not_of(" \t");
        if (start == std::string::npos) continue;
        const auto eq = line.find('=');
        if (eq == std::string::npos)
            throw std::runtime_error(path + ":" + std::to_string(lineno) + ": expected key=value");
        cfg.apply(line.substr(start, eq - start), line.substr(eq + 1));
    }
    return cfg;
}

}  // namespace helminv

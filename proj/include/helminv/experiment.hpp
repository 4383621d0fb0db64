#pragma once

#include "config.hpp"
#include "helmholtz.hpp"
#include "inversion.hpp"
#include "io.hpp"

#include <filesystem>
#include <fstream>
#include <string>
#include <vector>

namespace helminv {

struct ExperimentArtifacts {
    std::filesystem::path out_dir;
    ReconstructionResult result;
    std::vector<std::filesystem::path> files;  // everything written, in order
};

namespace detail {

inline void write_measurements_csv(const std::filesystem::path& path,
                                   const ReconstructionResult& result, DataSource source) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    const char* provenance = source == DataSource::oracle ? "oracle" : "measured";
    out << "ell,xi_x,xi_y,re,im,provenance\n";
    for (const EllResult& er : result.per_ell) {
        for (auto [p, q] : er.data.freq.points) {
            if (!er.data.has(p, q)) continue;
            const Complex v = er.data.at(p, q);
            out << er.ell << "," << fmt_double(er.data.freq.xi_x(p)) << ","
                << fmt_double(er.data.freq.xi_y(q)) << "," << fmt_double(v.real()) << ","
                << fmt_double(v.imag()) << "," << provenance << "\n";
        }
    }
}

inline void write_errors_csv(const std::filesystem::path& path,
                             const ReconstructionResult& result) {
    std::ofstream out(path);
    if (!out) throw std::runtime_error("cannot open " + path.string() + " for writing");
    out << "ell,naive_rel_err,corrected_rel_err\n";
    for (const EllResult& er : result.per_ell)
        out << er.ell << "," << fmt_double(er.naive_err.value) << ","
            << fmt_double(er.corrected_err.value) << "\n";
}

}  // namespace detail

/// One full experiment: simulate (or oracle-evaluate) the data, reconstruct,
/// and persist the artifact tree under out_dir.
inline ExperimentArtifacts run_experiment(const ExperimentConfig& cfg,
                                          const std::filesystem::path& out_dir) {
    cfg.validate();
    std::filesystem::create_directories(out_dir);

    ExperimentArtifacts art;
    art.out_dir = out_dir;

    ReconstructionPlan plan = cfg.make_plan();
    const std::vector<ScalarField2D> truth = cfg.make_truth(plan.inv_grid);

    FullModeContext fwd;
    HelmholtzOperator op;
    if (cfg.mode == DataSource::full) {
        const Grid2D fwd_grid = Grid2D::make(cfg.forward_n);
        op = HelmholtzOperator::assemble(fwd_grid, cfg.k);
        fwd.op = &op;
        fwd.coeffs = cfg.make_truth(fwd_grid);
        fwd.picard = PicardOptions{cfg.picard_tol, cfg.picard_max_iters};
        fwd.noise = NoiseModel{cfg.noise, cfg.seed};
    }
    art.result = reconstruct(plan, truth, cfg.mode == DataSource::full ? &fwd : nullptr);

    auto emit = [&](const std::filesystem::path& p) { art.files.push_back(p); };

    {
        std::ofstream out(out_dir / "config.txt");
        out << cfg.canonical_string();
        emit(out_dir / "config.txt");
    }
    for (const EllResult& er : art.result.per_ell) {
        const std::string tag = "c" + std::to_string(er.ell);
        write_spectrum_csv(out_dir / ("spectrum_d_" + tag + ".csv"), er.data);
        emit(out_dir / ("spectrum_d_" + tag + ".csv"));
        write_spectrum_csv(out_dir / ("spectrum_" + tag + ".csv"), er.corrected);
        emit(out_dir / ("spectrum_" + tag + ".csv"));
        write_field(out_dir / ("naive_" + tag + ".field"), er.naive_field);
        emit(out_dir / ("naive_" + tag + ".field"));
        write_field(out_dir / ("corrected_" + tag + ".field"), er.corrected_field);
        emit(out_dir / ("corrected_" + tag + ".field"));
        write_magnitude_pgm(out_dir / ("naive_" + tag + ".pgm"), er.naive_field);
        emit(out_dir / ("naive_" + tag + ".pgm"));
        write_magnitude_pgm(out_dir / ("corrected_" + tag + ".pgm"), er.corrected_field);
        emit(out_dir / ("corrected_" + tag + ".pgm"));
        write_magnitude_pgm(out_dir / ("truth_" + tag + ".pgm"),
                            truth[static_cast<std::size_t>(er.ell - 1)]);
        emit(out_dir / ("truth_" + tag + ".pgm"));
    }
    detail::write_measurements_csv(out_dir / "measurements.csv", art.result, cfg.mode);
    emit(out_dir / "measurements.csv");
    detail::write_errors_csv(out_dir / "errors.csv", art.result);
    emit(out_dir / "errors.csv");

    {
        std::ofstream out(out_dir / "manifest.txt");
        out << "config_hash=" << std::hex << fnv1a_string(cfg.canonical_string()) << std::dec
            << "\n";
        out << "solve_count=" << art.result.solve_count << "\n";
        for (const EllResult& er : art.result.per_ell) {
            out << "lattice_points_c" << er.ell << "=" << er.lattice_points << "\n";
            out << "naive_rel_err_c" << er.ell << "=" << fmt_double(er.naive_err.value) << "\n";
            out << "corrected_rel_err_c" << er.ell << "=" << fmt_double(er.corrected_err.value)
                << "\n";
        }
        out << "wall_seconds=" << fmt_double(art.result.wall_seconds) << "\n";
        for (const auto& p : art.files)
            out << "checksum " << p.filename().string() << "=" << std::hex << fnv1a_file(p)
                << std::dec << "\n";
        emit(out_dir / "manifest.txt");
    }
    return art;
}

}  // namespace helminv

// Command-line driver: forward solves, measurement tables, inversion,
// end-to-end experiments, invariant verification, and report printing.

#include <helminv/helminv.hpp>

#include <CLI11.hpp>

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <string>
#include <vector>

namespace fs = std::filesystem;
using namespace helminv;

namespace {

struct CommonArgs {
    std::string config_path;
    std::string preset;
    std::vector<std::string> overrides;
    std::string mode;
    int workers = 0;
    std::string out = "out";
    std::string seed;
};

void add_common(CLI::App* cmd, CommonArgs& args) {
    cmd->add_option("--config", args.config_path, "config file (key=value lines)");
    cmd->add_option("--preset", args.preset, "named preset (m2-paper, m3-paper)");
    cmd->add_option("--set", args.overrides, "override KEY=VALUE (repeatable)");
    cmd->add_option("--mode", args.mode, "data source: oracle or full");
    cmd->add_option("--workers", args.workers, "worker thread count");
    cmd->add_option("--out", args.out, "output directory");
    cmd->add_option("--seed", args.seed, "random seed");
}

ExperimentConfig resolve_config(const CommonArgs& args) {
    ExperimentConfig cfg;
    if (!args.preset.empty()) cfg = ExperimentConfig::preset(args.preset);
    if (!args.config_path.empty()) {
        if (!args.preset.empty())
            throw std::invalid_argument("--config and --preset are mutually exclusive");
        cfg = ExperimentConfig::from_file(args.config_path);
    }
    for (const std::string& kv : args.overrides) {
        const auto eq = kv.find('=');
        if (eq == std::string::npos)
            throw std::invalid_argument("--set expects KEY=VALUE, got '" + kv + "'");
        cfg.apply(kv.substr(0, eq), kv.substr(eq + 1));
    }
    if (!args.mode.empty()) cfg.apply("mode", args.mode);
    if (args.workers > 0) cfg.workers = args.workers;
    if (!args.seed.empty()) cfg.apply("seed", args.seed);
    cfg.validate();
    return cfg;
}

int cmd_forward(const CommonArgs& args) {
    const ExperimentConfig cfg = resolve_config(args);
    const Grid2D grid = Grid2D::make(cfg.forward_n);
    HelmholtzOperator op = HelmholtzOperator::assemble(grid, cfg.k);
    const auto coeffs = cfg.make_truth(grid);
    // incident plane wave along a fixed oblique direction
    const Vec2 dir{0.6, 0.8};
    const WaveVector zeta{Complex(cfg.k * dir.x, 0.0), Complex(cfg.k * dir.y, 0.0)};
    const BoundaryTrace f = plane_wave_trace(op.geometry(), zeta);
    NonlinearSolution sol =
        solve_nonlinear(op, coeffs, f, PicardOptions{cfg.picard_tol, cfg.picard_max_iters});
    fs::create_directories(args.out);
    write_field(fs::path(args.out) / "forward_u.field", sol.u);
    write_magnitude_pgm(fs::path(args.out) / "forward_u.pgm", sol.u);
    std::cout << "forward solve: n=" << grid.n << " k=" << cfg.k
              << " iterations=" << sol.iterations << " last_update=" << sol.last_update
              << " residual=" << sol.residual << "\n";
    std::cout << "wrote " << (fs::path(args.out) / "forward_u.field").string() << "\n";
    return 0;
}

struct DataStage {
    ReconstructionPlan plan;
    std::vector<SpectrumTable> tables;
    std::vector<long> lattice_points;
    long solve_count = 0;
};

DataStage build_data(const ExperimentConfig& cfg) {
    DataStage stage;
    stage.plan = cfg.make_plan();
    const auto truth = cfg.make_truth(stage.plan.inv_grid);
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
    for (int ell = 1; ell <= cfg.m; ++ell) {
        long n = 0;
        stage.tables.push_back(build_data_table(
            ell, stage.plan, truth, cfg.mode == DataSource::full ? &fwd : nullptr, &n));
        stage.lattice_points.push_back(n);
    }
    if (cfg.mode == DataSource::full) stage.solve_count = fwd.nonlinear_solves.load();
    return stage;
}

int cmd_measure(const CommonArgs& args) {
    const ExperimentConfig cfg = resolve_config(args);
    DataStage stage = build_data(cfg);
    fs::create_directories(args.out);
    {
        std::ofstream out(fs::path(args.out) / "config.txt");
        out << cfg.canonical_string();
    }
    const char* provenance = cfg.mode == DataSource::oracle ? "oracle" : "measured";
    std::ofstream mcsv(fs::path(args.out) / "measurements.csv");
    mcsv << "ell,xi_x,xi_y,re,im,provenance\n";
    for (int ell = 1; ell <= cfg.m; ++ell) {
        const SpectrumTable& t = stage.tables[static_cast<std::size_t>(ell - 1)];
        write_spectrum_csv(fs::path(args.out) / ("spectrum_d_c" + std::to_string(ell) + ".csv"),
                           t);
        for (auto [p, q] : t.freq.points) {
            if (!t.has(p, q)) continue;
            const Complex v = t.at(p, q);
            mcsv << ell << "," << fmt_double(t.freq.xi_x(p)) << "," << fmt_double(t.freq.xi_y(q))
                 << "," << fmt_double(v.real()) << "," << fmt_double(v.imag()) << ","
                 << provenance << "\n";
        }
        std::cout << "ell=" << ell << ": "
                  << stage.lattice_points[static_cast<std::size_t>(ell - 1)]
                  << " lattice points\n";
    }
    if (cfg.mode == DataSource::full)
        std::cout << "nonlinear solves: " << stage.solve_count << "\n";
    std::cout << "wrote measurement tables to " << args.out << "\n";
    return 0;
}

int cmd_invert(const CommonArgs& args) {
    const ExperimentConfig cfg = resolve_config(args);
    ReconstructionPlan plan = cfg.make_plan();
    std::vector<SpectrumTable> d_tables;
    for (int ell = 1; ell <= cfg.m; ++ell) {
        const fs::path p = fs::path(args.out) / ("spectrum_d_c" + std::to_string(ell) + ".csv");
        if (!fs::exists(p))
            throw std::runtime_error("missing " + p.string() + "; run 'measure' first");
        d_tables.push_back(read_spectrum_csv(p, plan.band_radius(ell), plan.margin));
        d_tables.back().ell = ell;
    }
    std::vector<SpectrumTable> recovered = back_substitute(d_tables, plan);
    const auto truth = cfg.make_truth(plan.inv_grid);
    std::ofstream errs(fs::path(args.out) / "errors.csv");
    errs << "ell,naive_rel_err,corrected_rel_err\n";
    for (int ell = 1; ell <= cfg.m; ++ell) {
        SpectrumTable& data = d_tables[static_cast<std::size_t>(ell - 1)];
        SpectrumTable& corr = recovered[static_cast<std::size_t>(ell - 1)];
        data.synthesize_origin();
        corr.synthesize_origin();
        const std::string tag = "c" + std::to_string(ell);
        write_spectrum_csv(fs::path(args.out) / ("spectrum_" + tag + ".csv"), corr);
        const ScalarField2D naive = inverse_fourier_truncated(data, plan.inv_grid);
        const ScalarField2D corrected = inverse_fourier_truncated(corr, plan.inv_grid);
        write_field(fs::path(args.out) / ("naive_" + tag + ".field"), naive);
        write_field(fs::path(args.out) / ("corrected_" + tag + ".field"), corrected);
        write_magnitude_pgm(fs::path(args.out) / ("naive_" + tag + ".pgm"), naive);
        write_magnitude_pgm(fs::path(args.out) / ("corrected_" + tag + ".pgm"), corrected);
        const ScalarField2D reference =
            band_limit(truth[static_cast<std::size_t>(ell - 1)], plan.band_radius(ell));
        const RelErr ne = relative_l2_error(naive, reference);
        const RelErr ce = relative_l2_error(corrected, reference);
        errs << ell << "," << fmt_double(ne.value) << "," << fmt_double(ce.value) << "\n";
        std::cout << "ell=" << ell << ": naive_rel_err=" << ne.value
                  << " corrected_rel_err=" << ce.value << "\n";
    }
    std::cout << "wrote reconstruction artifacts to " << args.out << "\n";
    return 0;
}

int cmd_run(const CommonArgs& args) {
    const ExperimentConfig cfg = resolve_config(args);
    ExperimentArtifacts art = run_experiment(cfg, args.out);
    for (const EllResult& er : art.result.per_ell)
        std::cout << "ell=" << er.ell << ": naive_rel_err=" << er.naive_err.value
                  << " corrected_rel_err=" << er.corrected_err.value << " ("
                  << er.lattice_points << " lattice points)\n";
    if (cfg.mode == DataSource::full)
        std::cout << "nonlinear solves: " << art.result.solve_count << "\n";
    std::cout << "wall seconds: " << art.result.wall_seconds << "\n";
    std::cout << "artifacts in " << art.out_dir.string() << "\n";
    return 0;
}

int cmd_verify(const std::vector<std::string>& checks) {
    std::vector<std::string> selection = checks;
    if (selection.empty() && !checks.empty()) selection = checks;
    const auto results = verify_suite(selection);
    bool all_pass = true;
    for (const CheckResult& r : results) {
        std::printf("%-10s %-4s measured=%.3e tolerance=%.3e  %s\n", r.name.c_str(),
                    r.pass ? "PASS" : "FAIL", r.measured, r.tolerance, r.detail.c_str());
        all_pass = all_pass && r.pass;
    }
    if (results.empty()) std::cout << "no checks selected\n";
    return all_pass ? 0 : 1;
}

int cmd_report(const CommonArgs& args) {
    const fs::path dir(args.out);
    for (const char* name : {"manifest.txt", "errors.csv"}) {
        const fs::path p = dir / name;
        if (!fs::exists(p)) {
            std::cout << "(no " << name << " in " << dir.string() << ")\n";
            continue;
        }
        std::cout << "== " << name << " ==\n";
        std::ifstream in(p);
        std::string line;
        while (std::getline(in, line)) std::cout << line << "\n";
    }
    return 0;
}

}  // namespace

int main(int argc, char** argv) {
    CLI::App app{"Polynomial-nonlinearity Helmholtz coefficient reconstruction"};
    app.require_subcommand(1);

    CommonArgs fwd_args, meas_args, inv_args, run_args, rep_args;
    std::vector<std::string> checks;

    add_common(app.add_subcommand("forward", "solve the nonlinear forward problem"), fwd_args);
    add_common(app.add_subcommand("measure", "build the data tables d_l(xi)"), meas_args);
    add_common(app.add_subcommand("invert", "back-substitute measured tables from --out"),
               inv_args);
    add_common(app.add_subcommand("run", "full experiment: measure + invert + report"), run_args);
    CLI::App* verify = app.add_subcommand("verify", "run invariant checks");
    verify->add_option("checks", checks, "subset of {pie, zeta, solver, spectral, scaling}");
    add_common(app.add_subcommand("report", "print manifest and errors from --out"), rep_args);

    CLI11_PARSE(app, argc, argv);

    try {
        if (app.got_subcommand("forward")) return cmd_forward(fwd_args);
        if (app.got_subcommand("measure")) return cmd_measure(meas_args);
        if (app.got_subcommand("invert")) return cmd_invert(inv_args);
        if (app.got_subcommand("run")) return cmd_run(run_args);
        if (app.got_subcommand("verify")) return cmd_verify(checks);
        if (app.got_subcommand("report")) return cmd_report(rep_args);
    } catch (const std::exception& e) {
        // machine-readable error record on stderr
        std::string msg = e.what();
        for (char& c : msg)
            if (c == '"' || c == '\n') c = ' ';
        std::cerr << "{\"error\":\"" << msg << "\"}\n";
        return 1;
    }
    return 0;
}

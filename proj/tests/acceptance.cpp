// Acceptance suite: one pass/fail line per criterion. Run with no arguments
// for all criteria, or pass criterion numbers to run a subset.

#include <helminv/helminv.hpp>

#include <chrono>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <string>
#include <vector>

using namespace helminv;
namespace fs = std::filesystem;

namespace {

struct Outcome {
    bool pass = false;
    std::string detail;
};

double now_seconds() {
    return std::chrono::duration<double>(
               std::chrono::steady_clock::now().time_since_epoch())
        .count();
}

std::string fmt(double v) {
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.3e", v);
    return buf;
}

// 1. PIE identity battery: l in 1..5, l' in 1..l+3, 50 random weight vectors
// each, relative 1e-10, runtime < 5 s.
Outcome criterion_1() {
    const double t0 = now_seconds();
    const CheckResult r = check_pie();
    const double dt = now_seconds() - t0;
    return {r.pass && dt < 5.0,
            "max rel deviation " + fmt(r.measured) + " (tol 1e-10), " + fmt(dt) + " s"};
}

// 2. Q-polynomial exactness in rational arithmetic.
Outcome criterion_2() {
    bool ok = true;
    for (int a = 1; a <= 3; ++a) {
        const auto q = q_polynomial(1, a);
        ok = ok && q.terms.size() == 1 && q.terms[0].second == Rational(1);
    }
    const auto q21 = q_polynomial(2, 1);
    ok = ok && q21.terms.size() == 2;
    for (const auto& [alpha, c] : q21.terms) ok = ok && c == Rational(3, 2);
    for (const auto& [alpha, c] : q_polynomial(2, 2).terms) {
        if (alpha == MultiIndex{2, 0} || alpha == MultiIndex{0, 2}) ok = ok && c == Rational(2);
        else if (alpha == MultiIndex{1, 1}) ok = ok && c == Rational(3);
        else ok = false;
    }
    const auto q31 = q_polynomial(3, 1);
    ok = ok && q31.terms.size() == 3;
    for (const auto& [alpha, c] : q31.terms) ok = ok && c == Rational(2);
    return {ok, "explicit rational coefficients 1, 3/2, 2, 3, 2"};
}

// 3. Wave-vector constraints on 200 random samples, runtime < 1 s.
Outcome criterion_3() {
    const double t0 = now_seconds();
    const CheckResult r = check_zeta();
    const double dt = now_seconds() - t0;
    return {r.pass && dt < 1.0,
            "max residual " + fmt(r.measured) + " (tol 1e-12), " + fmt(dt) + " s"};
}

// 4. Solver order: sup-error ratios in [3.4, 4.6] for 51 -> 101 -> 201, k=10.
Outcome criterion_4() {
    const double t0 = now_seconds();
    const CheckResult r = check_solver();
    const double dt = now_seconds() - t0;
    return {r.pass && dt < 60.0, r.detail + ", " + fmt(dt) + " s"};
}

ReconstructionResult oracle_m3_run(InterpOrder interp) {
    ReconstructionPlan plan;
    plan.m = 3;
    plan.k = 10.0;
    plan.inv_grid = Grid2D::make(101);
    plan.source = DataSource::oracle;
    plan.interp = interp;
    plan.margin = interp == InterpOrder::bicubic ? 3 : 2;
    ExperimentConfig cfg;
    cfg.m = 3;
    cfg.k = 10.0;
    return reconstruct(plan, cfg.make_truth(plan.inv_grid));
}

// 5. Oracle-mode exact top level: recovered F[c3] equals the direct transform
// on every in-band lattice point within 1e-10.
Outcome criterion_5() {
    const auto result = oracle_m3_run(InterpOrder::bilinear);
    ExperimentConfig cfg;
    cfg.m = 3;
    cfg.k = 10.0;
    const Grid2D g = Grid2D::make(101);
    const auto truth = cfg.make_truth(g);
    const SpectrumTable& top = result.per_ell[2].corrected;
    double worst = 0.0;
    long n = 0;
    for (auto [p, q] : top.freq.points) {
        if (!top.freq.in_band(p, q) || !top.has(p, q)) continue;
        const Complex ref = direct_fourier(truth[2], top.freq.xi_x(p), top.freq.xi_y(q));
        worst = std::max(worst, std::abs(top.at(p, q) - ref));
        ++n;
    }
    return {n > 0 && worst <= 1e-10,
            "max |F[c3] - direct| = " + fmt(worst) + " over " + std::to_string(n) +
                " in-band points (tol 1e-10)"};
}

// 6. Oracle-mode lower levels: c2, c1 within 5e-2 (bilinear) / 5e-3 (bicubic)
// relative L2 of band-limited truth, runtime < 2 min.
Outcome criterion_6() {
    const double t0 = now_seconds();
    const auto bil = oracle_m3_run(InterpOrder::bilinear);
    const auto bic = oracle_m3_run(InterpOrder::bicubic);
    const double dt = now_seconds() - t0;
    const double b1 = bil.per_ell[0].corrected_err.value;
    const double b2 = bil.per_ell[1].corrected_err.value;
    const double c1 = bic.per_ell[0].corrected_err.value;
    const double c2 = bic.per_ell[1].corrected_err.value;
    const bool pass =
        b1 <= 5e-2 && b2 <= 5e-2 && c1 <= 5e-3 && c2 <= 5e-3 && dt < 120.0;
    return {pass, "bilinear c1/c2 " + fmt(b1) + "/" + fmt(b2) + " (tol 5e-2), bicubic " +
                      fmt(c1) + "/" + fmt(c2) + " (tol 5e-3), " + fmt(dt) + " s"};
}

// 7. Linearization scaling: D(0.25)/D(0.125) in [3.2, 4.8], m=2, k=10,
// grid 101^2, runtime < 10 min.
Outcome criterion_7() {
    const double t0 = now_seconds();
    const CheckResult r = check_scaling(101, 10.0);
    const double dt = now_seconds() - t0;
    return {r.pass && dt < 600.0, r.detail + ", " + fmt(dt) + " s"};
}

// 8. Full-pipeline reconstruction: m=2, k=10, grids 201/101, amplitude 0.25;
// corrected c2 <= 0.10, corrected c1 <= 0.15, and the corrected error is at
// most half the naive error on every corrected level (l < m; the top level
// is the data verbatim and has no correction to compare).
Outcome criterion_8() {
    ExperimentConfig cfg;
    cfg.m = 2;
    cfg.k = 10.0;
    cfg.forward_n = 201;
    cfg.inverse_n = 101;
    cfg.amplitude = 0.25;
    cfg.mode = DataSource::full;
    ReconstructionPlan plan = cfg.make_plan();
    const auto truth = cfg.make_truth(plan.inv_grid);
    FullModeContext fwd;
    HelmholtzOperator op = HelmholtzOperator::assemble(Grid2D::make(cfg.forward_n), cfg.k);
    fwd.op = &op;
    fwd.coeffs = cfg.make_truth(op.grid());
    const auto result = reconstruct(plan, truth, &fwd);
    const double e2 = result.per_ell[1].corrected_err.value;
    const double e1 = result.per_ell[0].corrected_err.value;
    const double n1 = result.per_ell[0].naive_err.value;
    const bool pass = e2 <= 0.10 && e1 <= 0.15 && e1 <= 0.5 * n1;
    return {pass, "corrected c2 " + fmt(e2) + " (tol 0.10), corrected c1 " + fmt(e1) +
                      " (tol 0.15), naive c1 " + fmt(n1) + " (need <= half)"};
}

// 9. Increasing stability: fixed truth, oracle mode, corrected errors against
// the full truth strictly decrease for k = 5, 10, 20.
Outcome criterion_9() {
    ExperimentConfig cfg;
    cfg.m = 2;
    std::vector<std::vector<double>> errs;  // per k, per ell
    for (double k : {5.0, 10.0, 20.0}) {
        ReconstructionPlan plan;
        plan.m = 2;
        plan.k = k;
        plan.inv_grid = Grid2D::make(101);
        plan.source = DataSource::oracle;
        const auto truth = cfg.make_truth(plan.inv_grid);
        const auto result = reconstruct(plan, truth);
        std::vector<double> row;
        for (const auto& er : result.per_ell)
            row.push_back(relative_l2_error(er.corrected_field,
                                            truth[static_cast<std::size_t>(er.ell - 1)])
                              .value);
        errs.push_back(row);
    }
    bool pass = true;
    std::string detail;
    for (std::size_t ell = 0; ell < 2; ++ell) {
        pass = pass && errs[0][ell] > errs[1][ell] && errs[1][ell] > errs[2][ell];
        detail += "c" + std::to_string(ell + 1) + ": " + fmt(errs[0][ell]) + " > " +
                  fmt(errs[1][ell]) + " > " + fmt(errs[2][ell]) + (ell == 0 ? "; " : "");
    }
    return {pass, detail};
}

// 10. Zero-coefficient null test in full mode.
Outcome criterion_10() {
    ReconstructionPlan plan;
    plan.m = 2;
    plan.k = 10.0;
    plan.inv_grid = Grid2D::make(61);
    plan.source = DataSource::full;
    std::vector<ScalarField2D> truth{ScalarField2D(plan.inv_grid),
                                     ScalarField2D(plan.inv_grid)};
    FullModeContext fwd;
    HelmholtzOperator op = HelmholtzOperator::assemble(Grid2D::make(81), plan.k);
    fwd.op = &op;
    fwd.coeffs = {ScalarField2D(op.grid()), ScalarField2D(op.grid())};
    const auto result = reconstruct(plan, truth, &fwd);
    double max_d = 0.0, max_field = 0.0;
    for (const auto& er : result.per_ell) {
        for (auto [p, q] : er.data.freq.points)
            if (er.data.has(p, q)) max_d = std::max(max_d, std::abs(er.data.at(p, q)));
        max_field = std::max(max_field, field_max_abs(er.corrected_field));
        max_field = std::max(max_field, field_max_abs(er.naive_field));
    }
    return {max_d < 1e-8 && max_field < 1e-6,
            "max |d| = " + fmt(max_d) + " (tol 1e-8), max |c| = " + fmt(max_field) +
                " (tol 1e-6)"};
}

// 11. Solve-count accounting: actual nonlinear solve count equals the
// (2^l - 1) N_l sum exactly.
Outcome criterion_11() {
    ExperimentConfig cfg;
    cfg.m = 2;
    cfg.k = 10.0;
    cfg.forward_n = 81;
    cfg.inverse_n = 61;
    cfg.mode = DataSource::full;
    ReconstructionPlan plan = cfg.make_plan();
    const auto truth = cfg.make_truth(plan.inv_grid);
    FullModeContext fwd;
    HelmholtzOperator op = HelmholtzOperator::assemble(Grid2D::make(cfg.forward_n), cfg.k);
    fwd.op = &op;
    fwd.coeffs = cfg.make_truth(op.grid());
    const auto result = reconstruct(plan, truth, &fwd);
    long formula = 0;
    for (const auto& er : result.per_ell)
        formula += ((1L << er.ell) - 1) * er.lattice_points;
    return {result.solve_count == formula && formula > 0,
            "counted " + std::to_string(result.solve_count) + ", formula " +
                std::to_string(formula)};
}

// 12. Paper presets complete with corrected c1 strictly better than naive c1
// and emit the comparison images.
Outcome criterion_12() {
    bool pass = true;
    std::string detail;
    for (const char* preset : {"m2-paper", "m3-paper"}) {
        ExperimentConfig cfg = ExperimentConfig::preset(preset);
        const fs::path dir = fs::temp_directory_path() / ("helminv_acceptance_" +
                                                          std::string(preset));
        fs::remove_all(dir);
        const auto art = run_experiment(cfg, dir);
        const double corrected = art.result.per_ell[0].corrected_err.value;
        const double naive = art.result.per_ell[0].naive_err.value;
        const bool images = fs::exists(dir / "corrected_c1.pgm") &&
                            fs::exists(dir / "naive_c1.pgm") && fs::exists(dir / "truth_c1.pgm");
        pass = pass && corrected < naive && images;
        detail += std::string(preset) + ": corrected c1 " + fmt(corrected) + " vs naive " +
                  fmt(naive) + (std::string(preset) == "m2-paper" ? "; " : "");
        fs::remove_all(dir);
    }
    return {pass, detail};
}

}  // namespace

int main(int argc, char** argv) {
    std::vector<int> selection;
    for (int i = 1; i < argc; ++i) selection.push_back(std::atoi(argv[i]));
    if (selection.empty())
        for (int i = 1; i <= 12; ++i) selection.push_back(i);

    Outcome (*criteria[])() = {criterion_1, criterion_2, criterion_3, criterion_4,
                               criterion_5, criterion_6, criterion_7, criterion_8,
                               criterion_9, criterion_10, criterion_11, criterion_12};
    bool all_pass = true;
    for (int idx : selection) {
        if (idx < 1 || idx > 12) {
            std::fprintf(stderr, "unknown criterion %d\n", idx);
            return 2;
        }
        const Outcome o = criteria[idx - 1]();
        std::printf("criterion %02d: %s  (%s)\n", idx, o.pass ? "PASS" : "FAIL",
                    o.detail.c_str());
        std::fflush(stdout);
        all_pass = all_pass && o.pass;
    }
    return all_pass ? 0 : 1;
}

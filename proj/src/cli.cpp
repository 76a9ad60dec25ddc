#include "bsl/cli.hpp"

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "bsl/csv.hpp"
#include "bsl/errors.hpp"
#include "bsl/suite.hpp"

namespace bsl {

namespace fs = std::filesystem;

std::string prepare_output_dir(const RunConfig& cfg) {
    std::string dir = cfg.output_dir;
    if (const char* env = std::getenv("BSL_OUTPUT_DIR"); env && *env) dir = env;
    std::error_code ec;
    fs::create_directories(dir, ec);
    if (ec || !fs::is_directory(dir)) throw ConfigError("cannot create output directory " + dir);
    return dir;
}

namespace {

std::string path(const std::string& dir, const std::string& name) { return (fs::path(dir) / name).string(); }

std::string tag6(double t) {
    char buf[32];
    std::snprintf(buf, sizeof buf, "%.6f", t);
    return buf;
}

std::string word_string(const Mobius& m) {
    std::string s;
    for (int w : m.word) s += (s.empty() ? "" : " ") + std::to_string(w);
    return s;
}

} // namespace

int cmd_domain(const RunConfig& cfg) {
    FuchsianGroup g = build_group(cfg);
    auto pr = verify_pairing(g, cfg.tol("pairing"));
    std::string dir = prepare_output_dir(cfg);
    CsvWriter w(path(dir, "domain.csv"),
                {"vertex", "angle", "euclidean_radius", "side_left_endpoint", "side_right_endpoint"});
    for (int j = 0; j < g.sides(); ++j) {
        w.integer(j).num(angle_of(g.vertices[j])).num(std::abs(g.vertices[j]));
        w.num(g.side_left_endpoint(j)).num(g.side_right_endpoint(j)).end_row();
    }
    std::printf("group %s: %d vertices, circumradius %.15g, %s\n", cfg.group.c_str(), g.sides(),
                hyperbolic_distance(0.0, g.vertices[0]), pr.text().c_str());
    return pr.ok ? kExitOk : kExitInvariant;
}

int cmd_partition(const RunConfig& cfg) {
    FuchsianGroup g = build_group(cfg);
    check_pairing(g, cfg.tol("pairing"));
    auto S = build_boundary_system(g);
    std::string dir = prepare_output_dir(cfg);
    CsvWriter w(path(dir, "partition.csv"),
                {"side", "arc", "start", "end", "generator", "image_first_arc", "image_arcs"});
    for (const BowenSeriesMap* T : {&S.left, &S.right}) {
        const auto& P = T->partition();
        for (int i = 0; i < P.size(); ++i) {
            Arc a = P.arc(i);
            auto [first, count] = T->image_range(i);
            w.str(T->side() == Side::Left ? "L" : "R").integer(i).num(a.start).num(a.end());
            w.str(word_string(g.gens[P.gen[i]])).integer(first).integer(count).end_row();
        }
    }
    std::vector<std::string> header{"k"};
    for (int l = 0; l < S.baker.arcs(); ++l) header.push_back(std::to_string(l));
    CsvWriter j(path(dir, "incidence.csv"), header);
    for (int k = 0; k < S.baker.arcs(); ++k) {
        j.integer(k);
        for (int l = 0; l < S.baker.arcs(); ++l) j.integer(S.baker.J[k][l]);
        j.end_row();
    }
    std::printf("%d Markov arcs per side (refinement iterations %d/%d), incidence ones %d\n", S.left.arcs(),
                S.refine_iterations_left, S.refine_iterations_right, count_ones(S.baker.J));
    return kExitOk;
}

int cmd_verify(const RunConfig& cfg) {
    std::string dir = prepare_output_dir(cfg);
    SuiteReport rep = run_verify(cfg);
    std::ofstream(path(dir, "verify_report.txt")) << rep.text();
    std::ofstream(path(dir, "verify_report.json")) << rep.json();
    std::cout << rep.text();
    return rep.ok() ? kExitOk : kExitInvariant;
}

int cmd_scan(const RunConfig& cfg) {
    FuchsianGroup g = build_group(cfg);
    std::string dir = prepare_output_dir(cfg);
    Pipeline P(g, cfg.seed);
    Collocation C(P.left_op(), cfg.nodes_per_arc);
    auto scan = scan_critical_line(C, cfg.scan.t_min, cfg.scan.t_max, cfg.scan.step);
    CsvWriter w(path(dir, "scan.csv"), {"t", "re_det", "im_det", "abs_det"});
    for (size_t i = 0; i < scan.t.size(); ++i) {
        cplx d = scan.det[i].value();
        w.num(scan.t[i]).num(d.real()).num(d.imag()).num(std::abs(d)).end_row();
    }
    CsvWriter m(path(dir, "minima.csv"), {"t", "log_abs_det", "log_threshold", "eigenvalue_gap", "accepted"});
    int accepted = 0;
    for (auto& mn : scan.minima) {
        m.num(mn.t).num(mn.log_abs_det).num(mn.log_threshold).num(mn.gap).integer(mn.accepted ? 1 : 0).end_row();
        if (mn.accepted) {
            ++accepted;
            std::printf("t* = %.10f  lambda = %.10f  |lambda-1| = %.2e\n", mn.t, 0.25 + mn.t * mn.t, mn.gap);
        }
    }
    std::printf("%zu grid points, %zu local minima, %d accepted\n", scan.t.size(), scan.minima.size(), accepted);
    return kExitOk;
}

int cmd_eigen(const RunConfig& cfg, double t) {
    FuchsianGroup g = build_group(cfg);
    std::string dir = prepare_output_dir(cfg);
    Pipeline P(g, cfg.seed);
    TStarOptions opt;
    int N = cfg.nodes_per_arc;
    opt.levels = {N, N + N / 2, 2 * N};
    opt.window = cfg.scan.step;
    opt.seed = cfg.seed;
    TStarReport T;
    try {
        T = analyze_tstar(P, t, opt);
    } catch (const SpuriousMinimum& e) {
        std::printf("spurious minimum at t = %.10f: %s\n", t, e.what());
        return kExitInvariant;
    }
    const LevelResult& f = T.finest();
    std::string tg = tag6(f.t);
    Collocation C(P.left_op(), f.N);

    CsvWriter e(path(dir, "eigen_" + tg + ".csv"), {"arc", "node_angle", "re_psi", "im_psi", "re_nu", "im_nu"});
    for (int k = 0; k < P.left_op().arcs(); ++k)
        for (int j = 0; j < f.N; ++j) {
            int i = k * f.N + j;
            e.integer(k).num(C.node(k, j)).num(f.spec.right[i].real()).num(f.spec.right[i].imag());
            e.num(f.spec.left[i].real()).num(f.spec.left[i].imag()).end_row();
        }

    CsvWriter p(path(dir, "psi_" + tg + ".csv"), {"xi", "re_psi", "im_psi", "residual"});
    for (size_t i = 0; i < f.kernel.xi.size(); ++i) {
        p.num(f.kernel.xi[i]).num(f.kernel.psi[i].real()).num(f.kernel.psi[i].imag());
        p.num(std::abs(f.kernel.Lpsi[i] - f.kernel.psi[i]) / f.kernel.psi_sup).end_row();
    }

    auto bd = BoundaryDistribution::from_nodes(C, f.spec.left, cplx(0.5, f.t));
    CsvWriter d(path(dir, "dtilde_" + tg + ".csv"), {"theta", "re_dtilde", "im_dtilde"});
    for (int i = 0; i <= 4096; ++i) {
        double th = kTau * i / 4096;
        cplx v = bd.cumulative(th);
        d.num(th).num(v.real()).num(v.imag()).end_row();
    }

    if (T.roundtrip) {
        const auto& rt = *T.roundtrip;
        CsvWriter r(path(dir, "roundtrip_" + tg + ".csv"),
                    {"radius", "arc", "start", "end", "re_otal", "im_otal", "re_mass", "im_mass", "fit_residual"});
        for (size_t ri = 0; ri < rt.radii.size(); ++ri)
            for (size_t a = 0; a < rt.rows[ri].size(); ++a) {
                const auto& row = rt.rows[ri][a];
                r.num(rt.radii[ri]).integer(static_cast<long long>(a)).num(row.a).num(row.b);
                r.num(row.otal.real()).num(row.otal.imag()).num(row.mass.real()).num(row.mass.imag());
                r.num(std::abs(row.otal - rt.c[ri] * row.mass)).end_row();
            }
    }

    SuiteReport rep;
    check_tstar(rep, cfg, T, "tstar[" + tg + "]");
    std::printf("t* = %.12f  eigenvalue %.12f%+.3ei  N = %d\n", f.t, f.spec.eigenvalue.real(), f.spec.eigenvalue.imag(),
                f.N);
    if (T.roundtrip)
        std::printf("fitted c(s) = %.10g%+.10gi at r = %g\n", T.roundtrip->c.front().real(),
                    T.roundtrip->c.front().imag(), T.roundtrip->radii.front());
    std::cout << rep.text();
    return rep.ok() ? kExitOk : kExitInvariant;
}

int cmd_billiard(const RunConfig& cfg, int steps) {
    if (steps < 0) throw ConfigError("--steps must be non-negative");
    FuchsianGroup g = build_group(cfg);
    std::string dir = prepare_output_dir(cfg);
    Pipeline P(g, cfg.seed);
    std::mt19937_64 rng(cfg.seed);
    SectionPoint start = sample_section_point(g, rng);
    auto orbit = billiard_orbit(g, P.baker(), start, steps);
    CsvWriter w(path(dir, "billiard_orbit.csv"), {"step", "x", "y", "exit_side", "rho_word_length"});
    for (auto& r : orbit) w.integer(r.step).num(r.pt.x).num(r.pt.y).integer(r.exit_side).integer(r.rho_length).end_row();
    std::printf("%zu orbit points written\n", orbit.size());
    return kExitOk;
}

int run_cli(int argc, char** argv) {
    CLI::App app{"boundary spectral lab: transfer operators, baker extensions and Helgason boundary values"};
    app.require_subcommand(1);
    std::string config_path;
    double t = 0;
    int steps = 1000;
    app.add_option("--config", config_path, "JSON configuration file");
    auto* dom = app.add_subcommand("domain", "fundamental polygon, writes domain.csv");
    auto* par = app.add_subcommand("partition", "Markov partitions and incidence matrix");
    auto* ver = app.add_subcommand("verify", "run the invariant suite");
    auto* scn = app.add_subcommand("scan", "determinant scan along the critical line");
    auto* eig = app.add_subcommand("eigen", "eigenpair, kernel transfer and Helgason data at a critical value");
    eig->add_option("--t", t, "critical value t* from a scan")->required();
    auto* bil = app.add_subcommand("billiard", "billiard orbit with conjugating words");
    bil->add_option("--steps", steps, "orbit length");
    for (auto* sub : {dom, par, ver, scn, eig, bil}) sub->add_option("--config", config_path, "JSON configuration file");

    try {
        app.parse(argc, argv);
    } catch (const CLI::ParseError& e) {
        int rc = app.exit(e);
        return rc == 0 ? kExitOk : kExitConfig;
    }
    try {
        RunConfig cfg = config_path.empty() ? default_config() : load_config(config_path);
        if (*dom) return cmd_domain(cfg);
        if (*par) return cmd_partition(cfg);
        if (*ver) return cmd_verify(cfg);
        if (*scn) return cmd_scan(cfg);
        if (*eig) return cmd_eigen(cfg, t);
        if (*bil) return cmd_billiard(cfg, steps);
    } catch (const ConfigError& e) {
        std::fprintf(stderr, "config error: %s\n", e.what());
        return kExitConfig;
    } catch (const InvariantViolation& e) {
        std::fprintf(stderr, "invariant violation: %s\n%s\n", e.what(), e.report.c_str());
        return kExitInvariant;
    } catch (const Error& e) {
        std::fprintf(stderr, "error: %s\n", e.what());
        return kExitInvariant;
    }
    return kExitConfig;
}

} // namespace bsl

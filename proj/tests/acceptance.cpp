// Acceptance run: one PASS/FAIL line per criterion. Thresholds and time budgets are pinned here
// rather than read from a config so that a tolerance override cannot loosen them.
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>
#include <string>
#include <vector>

#include "bsl/analysis.hpp"
#include "bsl/config.hpp"
#include "bsl/errors.hpp"
#include "bsl/report.hpp"
#include "bsl/simd.hpp"
#include "bsl/suite.hpp"
#include "bsl/transfer.hpp"

using namespace bsl;

namespace {

using Clock = std::chrono::steady_clock;
double since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

RunConfig pinned_config() {
    RunConfig c = default_config();
    c.nodes_per_arc = 16;
    c.scan = {0.0, 10.0, 0.01};
    c.tolerances = {
        {"geometry", 1e-12},      {"pairing", 1e-10},         {"even_corner", 1e-8},  {"markov", 1e-10},
        {"baker", 1e-12},         {"conjugacy", 1e-10},       {"involution", 1e-10},  {"duality", 1e-10},
        {"lebesgue", 1e-8},       {"conjugation", 1e-10},     {"n_stability", 1e-8},  {"t_stability", 1e-6},
        {"eigen_residual", 1e-6}, {"kernel_transfer", 1e-4},  {"noise_floor", 1e-10}, {"laplace", 1e-3},
        {"automorphy", 1e-2},     {"equivariance", 1e-2},     {"roundtrip", 0.1},     {"parts", 1e-8},
    };
    return c;
}

bool ends_with(const std::string& s, const std::string& suffix) {
    return s.size() >= suffix.size() && s.compare(s.size() - suffix.size(), suffix.size(), suffix) == 0;
}
bool contains(const std::string& s, const std::string& part) { return s.find(part) != std::string::npos; }

struct Criterion {
    int id;
    std::string title;
    bool pass = true;
    std::vector<std::string> detail;

    void need(bool ok, const std::string& what) {
        if (!ok) pass = false;
        detail.push_back(std::string(ok ? "  ok   " : "  FAIL ") + what);
    }
    void checks(const SuiteReport& r, const std::function<bool(const std::string&)>& pick = nullptr) {
        for (auto& c : r.checks()) {
            if (pick && !pick(c.name)) continue;
            char buf[256];
            std::snprintf(buf, sizeof buf, "%s value=%.3e threshold=%.3e", c.name.c_str(), c.value, c.threshold);
            need(c.pass, buf);
        }
    }
    void budget(double seconds, double limit, const std::string& what) {
        char buf[160];
        std::snprintf(buf, sizeof buf, "%s %.2f s (limit %.0f s)", what.c_str(), seconds, limit);
        need(seconds < limit, buf);
    }
    void print(bool verbose) const {
        std::printf("%s criterion %d: %s\n", pass ? "PASS" : "FAIL", id, title.c_str());
        for (auto& d : detail)
            if (verbose || d.rfind("  FAIL", 0) == 0) std::printf("%s\n", d.c_str());
        std::fflush(stdout);
    }
};

} // namespace

int main(int argc, char** argv) {
    bool verbose = argc > 1 && std::string(argv[1]) == "-v";
    RunConfig cfg = pinned_config();
    std::printf("simd: %s\n", simd::name(simd::active()));
    std::vector<Criterion> all;

    {
        Criterion c{1, "geometry identities, 1e3 samples each, < 1e-12, < 1 s"};
        SuiteReport r;
        auto t0 = Clock::now();
        check_geometry(r, cfg, 1000);
        c.budget(since(t0), 1, "runtime");
        c.checks(r);
        c.print(verbose);
        all.push_back(c);
    }

    FuchsianGroup g = build_group(cfg);
    {
        Criterion c{2, "octagon: circumradius 1e-12, pairing/relator 1e-10, even corner 1e-8, < 1 s"};
        SuiteReport r;
        auto t0 = Clock::now();
        FuchsianGroup fresh = build_group(cfg);
        check_domain(r, cfg, fresh);
        c.budget(since(t0), 1, "runtime");
        c.checks(r);
        c.print(verbose);
        all.push_back(c);
    }

    // the Markov build (partition refinement, both incidence routes) is charged to criterion 3
    auto tp = Clock::now();
    Pipeline P(g, cfg.seed);
    double pipeline_seconds = since(tp);
    {
        Criterion c{3, "Markov structure: <= 50 iterations, endpoints 1e-10, T^2 expanding, baker 1e-12, < 10 s"};
        SuiteReport r;
        auto t0 = Clock::now();
        check_markov(r, cfg, P);
        c.budget(pipeline_seconds + since(t0), 10, "runtime incl. pipeline build");
        c.checks(r);
        c.print(verbose);
        all.push_back(c);
    }
    {
        Criterion c{4, "billiard conjugacy: 1e3 points, max_word <= 8, identities 1e-10, < 30 s"};
        SuiteReport r;
        auto t0 = Clock::now();
        check_billiard(r, cfg, P);
        c.budget(since(t0), 30, "runtime");
        c.checks(r);
        c.print(verbose);
        all.push_back(c);
    }
    {
        Criterion c{5, "involution identity and operator duality at 1/2 and 1/2+5i, 1e-10, < 10 s"};
        SuiteReport r;
        auto t0 = Clock::now();
        check_involution(r, cfg, P);
        c.budget(since(t0), 10, "runtime");
        c.checks(r);
        c.print(verbose);
        all.push_back(c);
    }
    {
        Criterion c{6, "transfer engine: Lebesgue 1e-8, det conjugation 1e-10, N 24->32 stability 1e-8, < 60 s"};
        SuiteReport r;
        auto t0 = Clock::now();
        check_transfer(r, cfg, P);
        c.budget(since(t0), 60, "runtime");
        c.checks(r);
        c.print(verbose);
        all.push_back(c);
    }

    Criterion c7{7, "scan [0,10] step 0.01 at N=16: each t* stable 16->32 to 1e-6, |lambda-1| < 1e-3, residual < 1e-6"};
    Criterion c8{8, "kernel transfer at each t*: residual < 1e-4 at N=32, monotone 16->24->32, nonzero, < 60 s"};
    Criterion c9{9, "Helgason loop: single node Laplace; automorphy/equivariance < 1e-2, monotone; round trip < 10%"};
    {
        auto t0 = Clock::now();
        Collocation C(P.left_op(), cfg.nodes_per_arc);
        auto scan = scan_critical_line(C, cfg.scan.t_min, cfg.scan.t_max, cfg.scan.step);
        double scan_seconds = since(t0);
        c7.budget(scan_seconds, 15 * 60, "scan runtime");
        c7.need(scan.t.size() == 1001, "grid has 1001 points (" + std::to_string(scan.t.size()) + ")");
        std::vector<double> accepted;
        for (auto& m : scan.minima)
            if (m.accepted) accepted.push_back(m.t);
        c7.need(!accepted.empty(), std::to_string(accepted.size()) + " accepted t*");

        for (double t : accepted) {
            auto ta = Clock::now();
            TStarOptions opt;
            opt.levels = {16, 24, 32};
            opt.seed = cfg.seed;
            TStarReport T;
            try {
                T = analyze_tstar(P, t, opt);
            } catch (const Error& e) {
                c7.need(false, std::string("t* near ") + std::to_string(t) + ": " + e.what());
                continue;
            }
            double total = since(ta);
            char tag[32];
            std::snprintf(tag, sizeof tag, "t*=%.8f", T.finest().t);
            SuiteReport r;
            check_tstar(r, cfg, T, tag);
            c7.checks(r, [](const std::string& n) {
                return ends_with(n, ".t_stability") || ends_with(n, ".eigenvalue_gap") || ends_with(n, ".eigen_residual") ||
                       ends_with(n, ".left_residual") || ends_with(n, ".dual_consistency") || ends_with(n, ".two_step_gap");
            });
            c8.checks(r, [](const std::string& n) { return contains(n, ".kernel_transfer"); });
            c8.budget(total - T.roundtrip_seconds, 60, std::string(tag) + " analysis");
            c9.checks(r, [](const std::string& n) {
                return contains(n, ".automorphy") || contains(n, ".equivariance") || contains(n, ".roundtrip");
            });
            c9.budget(total, 300, std::string(tag) + " incl. round trip");
        }
    }
    {
        SuiteReport r;
        check_helgason(r, cfg);
        c9.checks(r, [](const std::string& n) { return contains(n, "laplace"); });
        // second-order differences: the h -> h/2 ratio is 4 up to higher-order terms
        for (auto& ck : r.checks())
            if (ck.name == "helgason.laplace_step_gain") {
                char buf[96];
                std::snprintf(buf, sizeof buf, "laplace gain %.4f >= 3.9", ck.value);
                c9.need(ck.value >= 3.9, buf);
            }
    }
    c7.print(verbose);
    c8.print(verbose);
    c9.print(verbose);
    all.push_back(c7);
    all.push_back(c8);
    all.push_back(c9);

    {
        Criterion c{10, "determinism: two verify runs give byte-identical reports"};
        RunConfig vc = default_config();
        std::string a, b, ja, jb;
        {
            auto r = run_verify(vc);
            a = r.text();
            ja = r.json();
        }
        {
            auto r = run_verify(vc);
            b = r.text();
            jb = r.json();
        }
        c.need(a == b, "text reports identical (" + std::to_string(a.size()) + " bytes)");
        c.need(ja == jb, "json reports identical");
        c.print(verbose);
        all.push_back(c);
    }

    int failed = 0;
    for (auto& c : all) failed += !c.pass;
    std::printf("\n");
    for (auto& c : all) std::printf("%s criterion %d\n", c.pass ? "PASS" : "FAIL", c.id);
    std::printf("%d of %zu criteria pass\n", static_cast<int>(all.size()) - failed, all.size());
    return failed == 0 ? 0 : 1;
}

// Acceptance run: one PASS/FAIL line per criterion, exit status 1 if any fails.
// Tolerances and probe sets are fixed here; every line prints the measured values next to them.

#include <sys/wait.h>

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdarg>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "gsqg/errors.hpp"
#include "gsqg/lemmas.hpp"
#include "gsqg/scenario.hpp"
#include "gsqg/velocity.hpp"
#include "report.hpp"

using namespace gsqg;
namespace fs = std::filesystem;

namespace {

struct Line {
    bool pass = false;
    std::string detail;
};

std::string fmt(const char* f, ...) {
    char buf[1024];
    va_list ap;
    va_start(ap, f);
    std::vsnprintf(buf, sizeof buf, f, ap);
    va_end(ap);
    return buf;
}

int failures = 0;

void criterion(int id, const char* name, const std::function<Line()>& body) {
    const auto t0 = std::chrono::steady_clock::now();
    Line r;
    try {
        r = body();
    } catch (const std::exception& e) {
        r = {false, std::string("exception: ") + e.what()};
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    if (!r.pass) ++failures;
    std::printf("%s %2d %-22s %s [%.1f s]\n", r.pass ? "PASS" : "FAIL", id, name, r.detail.c_str(), secs);
    std::fflush(stdout);
}

double seconds_of(const std::function<void()>& f) {
    const auto t0 = std::chrono::steady_clock::now();
    f();
    return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

const std::vector<double> alpha_grid{0.05, 0.10, 0.15, 0.20, 0.25};

// smooth datum vanishing on the edges of [0, 2]^2
ScalarField quartic(double h, Parity parity) {
    const auto g = GridSpec::covering(0.0, 0.0, 2.0, 2.0, h);
    return ScalarField::sample(g, parity, Box{0.0, 2.0, 0.0, 2.0},
                               [](double x, double y) { return x * y * (2 - x) * (2 - y); });
}

// blow-up datum at the reference resolution
const BlowupScenario reference_scenario(0.05, Params(0.25, 0.5));
ScalarField reference_datum() {
    return build_blowup_datum(reference_scenario, 0.025, blowup_grid(0.025, 8.0, 8.0));
}

std::string slurp(const fs::path& p) {
    std::ifstream in(p, std::ios::binary);
    std::stringstream ss;
    ss << in.rdbuf();
    return ss.str();
}

const cli::json* find_check(const cli::json& report, const std::string& name) {
    for (const auto& c : report.at("checks"))
        if (c.at("name") == name) return &c;
    return nullptr;
}

}  // namespace

int main() {
    criterion(1, "margin_at_quarter", [] {
        double m = 0.0;
        const double s = seconds_of([&] { m = lemma::critical_alpha_margin(0.25); });
        return Line{m >= 0.030 && m <= 0.038 && s < 1.0, fmt("margin=%.6f in [0.030, 0.038], %.3f s < 1 s", m, s)};
    });

    criterion(2, "critical_alpha", [] {
        lemma::RootResult r;
        const double s = seconds_of([&] { r = lemma::critical_alpha_root(); });
        const bool ok = r.found && std::abs(r.root - 0.257) <= 0.003 && r.root >= 0.25 && r.root <= 0.28 && s < 1.0;
        return Line{ok, fmt("root=%.6f target 0.257 +- 0.003, %.3f s < 1 s", r.root, s)};
    });

    criterion(3, "f1_quarter", [] {
        const double f1 = lemma::f_alpha(0.25, 1.0);
        return Line{f1 >= 0.9374 && f1 >= 0.92, fmt("f(1)=%.8f >= 0.9374", f1)};
    });

    criterion(4, "lemma42_bound", [] {
        bool ok = true;
        double worst_min = 1e300, worst_delta = 0.0;
        const double s = seconds_of([&] {
            for (double a : alpha_grid) {
                const double i1 = lemma::I_one(a), g1 = lemma::g_one(a);
                const double m = std::min(i1, i1 + 2.0 * g1);
                const auto r = lemma::lemma42_infimum(a);
                worst_min = std::min(worst_min, m);
                worst_delta = std::max(worst_delta, r.discrepancy);
                ok = ok && m >= 0.05 && r.pass && r.discrepancy <= 1e-4;
            }
        });
        ok = ok && s < 60.0;
        return Line{ok, fmt("min over grid of min{I(1), I(1)+2g(1)}=%.6f >= 0.05, max discrepancy=%.2e <= 1e-4, "
                            "%.1f s < 60 s",
                            worst_min, worst_delta, s)};
    });

    criterion(5, "lemma43_positive", [] {
        bool ok = true;
        double smallest = 1e300, worst_delta = 0.0;
        for (double a : alpha_grid) {
            const auto r = lemma::lemma43_value(a);
            smallest = std::min(smallest, r.closed_form);
            worst_delta = std::max(worst_delta, r.discrepancy);
            ok = ok && r.pass && r.closed_form > 0.0 && r.discrepancy <= 1e-4;
        }
        return Line{ok, fmt("smallest value=%.6f > 0, max discrepancy=%.2e <= 1e-4", smallest, worst_delta)};
    });

    criterion(6, "kryz_threshold", [] {
        const auto r = lemma::kryz_root();
        const auto printed = lemma::kryz_printed_root();
        cli::RunConfig c;
        c.command = "thresholds";
        const auto th = cli::run(c);
        const std::string flag = th.report.at("kryz_printed").at("flag").get<std::string>();
        const bool flagged = !printed.found && flag.find("sign ambiguity") != std::string::npos;
        return Line{r.found && std::abs(r.root - 0.05) <= 0.02 && flagged,
                    fmt("root=%.6f target 0.05 +- 0.02, printed reading flagged: %s", r.root, flagged ? "yes" : "no")};
    });

    criterion(7, "closed_form_identities", [] {
        bool ok = true;
        double strip = 0.0, region = 0.0;
        for (const auto& ic : lemma::check_strip_identities(100, 1, 1e-9)) {
            strip = std::max(strip, ic.max_error);
            ok = ok && ic.pass && ic.draws == 100 && ic.max_error <= 1e-9;
        }
        for (double a : {0.1, 0.25})
            for (const auto& ic : lemma::check_region_identities(a, {0.25, 0.5, 1.0}, 1e-5)) {
                region = std::max(region, ic.max_error);
                ok = ok && ic.pass && ic.max_error <= 1e-5;
            }
        return Line{ok, fmt("strip max error=%.2e <= 1e-9 (100 draws), region max error=%.2e <= 1e-5", strip, region)};
    });

    criterion(8, "lemma41_positivity", [] {
        bool ok = true;
        std::string d;
        for (double a : {0.0, 0.1, 0.25}) {
            const auto r = lemma::lemma41_check(a, 100000, 1);
            ok = ok && r.samples == 100000 && r.violations == 0 && r.reduced_violations == 0;
            d += fmt("a=%.2f: %lld/%lld non-positive; ", a, static_cast<long long>(r.violations),
                     static_cast<long long>(r.samples));
        }
        return Line{ok, d};
    });

    criterion(9, "velocity_invariants", [] {
        const KernelParams kp(0.25);
        const QuadConfig qc;

        // u1 on the symmetry axis of data odd in x1
        const auto odd = quartic(0.05, {true, true});
        double axis_ratio = 0.0;
        for (int k = 1; k <= 10; ++k) {
            const auto r = velocity_at(odd, kp, {0.0, 0.2 * k}, qc);
            axis_ratio = std::max(axis_ratio, std::abs(r.u.x1) / std::max(r.err_est, 1e-15));
        }
        const bool axis_ok = axis_ratio <= 1.0;

        // u2 / h at heights 0.1, 0.05, 0.025 above the boundary for data odd in x2
        const auto odd2 = quartic(0.05, {false, true});
        std::vector<double> q;
        for (double h : {0.1, 0.05, 0.025}) q.push_back(std::abs(velocity_at(odd2, kp, {0.6, h}, qc).u.x2) / h);
        const double qlo = *std::min_element(q.begin(), q.end()), qhi = *std::max_element(q.begin(), q.end());
        const bool bounded = qlo > 0.0 && qhi / qlo <= 1.5;

        std::mt19937_64 rng(13);
        std::uniform_real_distribution<double> U(0.05, 2.5);
        int div_bad = 0;
        for (int k = 0; k < 50; ++k) {
            const Vec2 x{U(rng), U(rng)};
            const auto d = divergence_at(odd, kp, x, qc);
            if (!(std::abs(d.value) <= d.budget)) ++div_bad;
        }

        // quadrant kernels against the image form on the blow-up datum
        const BlowupScenario sc(0.05, Params(0.25, 0.5));
        const auto blow = build_blowup_datum(sc, 0.025, blowup_grid(0.025, 4.0, 4.0));
        double sym = 0.0;
        for (int k = 0; k < 20; ++k) {
            const Vec2 x{0.05 + 0.13 * ((k * 7) % 20), 0.02 + 0.11 * ((k * 3) % 20)};
            sym = std::max(sym, norm(velocity_at(blow, kp, x, qc).u - velocity_quarter_at(blow, kp, x, qc).u));
        }
        const bool ok = axis_ok && bounded && div_bad == 0 && sym <= 1e-5;
        return Line{ok, fmt("axis |u1|/err max=%.2f <= 1; u2/h in [%.4f, %.4f] ratio %.3f <= 1.5; "
                            "divergence outside budget %d/50; K1/K2 vs image %.2e <= 1e-5",
                            axis_ratio, qlo, qhi, qhi / qlo, div_bad, sym)};
    });

    criterion(10, "weighted_gradients", [] {
        const KernelParams kp(0.25);
        const QuadConfig qc;
        const auto f = reference_datum();
        const std::vector<double> heights{0.02, 0.04, 0.08};
        std::vector<double> wd1u2, wd2u1, d1u1, d2u1;
        for (double x2 : heights) {
            const auto g = gradient_diag(f, kp, {1.0, x2}, qc);
            wd1u2.push_back(std::abs(g.weighted_d1u2()));
            wd2u1.push_back(std::abs(g.weighted_d2u1()));
            d1u1.push_back(std::abs(g.d1u1));
            d2u1.push_back(std::abs(g.d2u1));
        }
        auto spread = [](const std::vector<double>& v) {
            return *std::max_element(v.begin(), v.end()) / *std::min_element(v.begin(), v.end());
        };
        // least-squares slope of log|d2u1| against log x2
        double mx = 0, my = 0;
        for (std::size_t k = 0; k < heights.size(); ++k) {
            mx += std::log(heights[k]) / 3;
            my += std::log(d2u1[k]) / 3;
        }
        double sxy = 0, sxx = 0;
        for (std::size_t k = 0; k < heights.size(); ++k) {
            sxy += (std::log(heights[k]) - mx) * (std::log(d2u1[k]) - my);
            sxx += (std::log(heights[k]) - mx) * (std::log(heights[k]) - mx);
        }
        const double slope = sxy / sxx;
        const double s1 = spread(wd1u2), s2 = spread(wd2u1), s3 = spread(d1u1);
        const bool ok = s1 < 2.0 && s2 < 2.0 && s3 < 2.0 && std::abs(slope + 0.5) <= 0.15;
        return Line{ok, fmt("spread < 2: w*d1u2 %.3f, w*d2u1 %.3f, d1u1 %.3f; d2u1 slope %.3f (target -0.5 +- 0.15)",
                            s1, s2, s3, slope)};
    });

    criterion(11, "barrier_t0", [] {
        BarrierReport b;
        const double s = seconds_of([&] {
            b = barrier_check(reference_datum(), reference_scenario, 0.0, KernelParams(0.25), QuadConfig{}, 64);
        });
        const bool ok = b.ok() && b.I.size() == 64 && b.J.size() == 64 && s < 300.0;
        return Line{ok, fmt("X0=%.5f, max(u1 + threshold - err) on I_0=%.3e <= 0, min(u2 + err) on J_0=%.3e >= 0, "
                            "%.1f s < 300 s",
                            b.X, b.max_margin_I, b.min_u2_J, s)};
    });

    criterion(12, "short_time_containment", [] {
        cli::RunConfig c;
        c.command = "simulate";
        c.mode = "recomputed";
        c.h = 0.025;
        c.dt = 0.002;
        c.box = 8.0;
        c.out = (fs::temp_directory_path() / "gsqg_acceptance" / "simulate.json").string();
        fs::create_directories(fs::path(c.out).parent_path());
        cli::Outcome o;
        const double s = seconds_of([&] { o = cli::run(c); });
        const auto* cont = find_check(o.report, "containment");
        const auto* sup = find_check(o.report, "sup_drift");
        if (!cont || !sup) return Line{false, "simulate report lacks containment or sup_drift"};
        const double min_d = cont->at("values").at("min_d").get<double>();
        const double t_hit = cont->at("values").at("first_contact_time").get<double>();
        const double drift = sup->at("values").at("drift").get<double>();
        const double T = o.report.at("T").get<double>();
        const double mass = o.report.at("mass_drift").get<double>();
        const bool ok = min_d > 0.0 && drift <= 0.01 && s < 1800.0;
        return Line{ok, fmt("T=%.4f, min d(t)=%.4f > 0 (first d <= 0 at t=%.4f), sup drift=%.2e <= 0.01, "
                            "mass drift=%.3f, %.0f s < 1800 s",
                            T, min_d, t_hit, drift, mass, s)};
    });

    criterion(13, "determinism", [] {
        const fs::path dir = fs::temp_directory_path() / "gsqg_acceptance";
        fs::create_directories(dir);
        std::string dumps[2];
        for (int k = 0; k < 2; ++k) {
            const fs::path out = dir / "verify.json";  // the report embeds its own path
            const std::string cmd =
                std::string(GSQG_BINARY) + " verify-all --alpha 0.25 --beta 0.5 --seed 1 --out " + out.string() +
                " >/dev/null 2>&1";
            const int raw = std::system(cmd.c_str());
            if (!WIFEXITED(raw) || WEXITSTATUS(raw) != cli::exit_ok)
                return Line{false, fmt("verify-all exited with status %d", WIFEXITED(raw) ? WEXITSTATUS(raw) : -1)};
            dumps[k] = slurp(out);
        }
        const bool ok = !dumps[0].empty() && dumps[0] == dumps[1];
        return Line{ok, fmt("two verify-all reports (%zu bytes) byte-identical: %s", dumps[0].size(), ok ? "yes" : "no")};
    });

    std::printf("%d of 13 criteria failed\n", failures);
    return failures == 0 ? 0 : 1;
}

#include "report.hpp"

#include <algorithm>
#include <cmath>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <sstream>

#include "gsqg/advect.hpp"
#include "gsqg/errors.hpp"
#include "gsqg/field.hpp"
#include "gsqg/illposed.hpp"
#include "gsqg/lemmas.hpp"
#include "gsqg/params.hpp"
#include "gsqg/scenario.hpp"

namespace gsqg::cli {

namespace {

json vec(const Vec2& v) { return json::array({v.x1, v.x2}); }

json quad_json(const QuadConfig& q) {
    return json{{"abs_tol", q.abs_tol},
                {"rel_tol", q.rel_tol},
                {"split_radius", q.split_radius},
                {"max_subdivisions", q.max_subdivisions},
                {"fd_step", q.fd_step}};
}

json lemma_json(const lemma::LemmaReport& r) {
    json d = json::object();
    for (const auto& [k, v] : r.details) d[k] = v;
    return json{{"name", r.name},
                {"alpha", r.alpha},
                {"aux_param", r.aux_param},
                {"closed_form", r.closed_form},
                {"quadrature", r.quadrature},
                {"bound", r.bound},
                {"pass", r.pass},
                {"discrepancy", r.discrepancy},
                {"tolerance", r.tolerance},
                {"anchor", r.anchor},
                {"details", d}};
}

json root_json(const lemma::RootResult& r) {
    return json{{"found", r.found},
                {"root", r.root},
                {"bracket", json::array({r.lo, r.hi})},
                {"residual", r.residual},
                {"iterations", r.iterations},
                {"widenings", r.widenings}};
}

std::vector<double> alpha_grid(const RunConfig& c) {
    if (!(c.grid_step > 0.0) || c.grid_hi < c.grid_lo) throw ValidationError("alpha grid: need lo <= hi and step > 0");
    const auto n = static_cast<int>(std::floor((c.grid_hi - c.grid_lo) / c.grid_step + 1e-9)) + 1;
    std::vector<double> out;
    // round to 12 digits so 0.05 + 2 * 0.05 prints as 0.15
    for (int k = 0; k < n; ++k) out.push_back(std::round((c.grid_lo + k * c.grid_step) * 1e12) / 1e12);
    return out;
}

BlowupScenario scenario_of(const RunConfig& c) { return BlowupScenario(c.eps, Params(c.alpha, c.beta), c.eps_prime); }

double smoothing_of(const RunConfig& c) { return c.smoothing > 0.0 ? c.smoothing : 0.5 * c.eps; }

ScalarField field_of(const RunConfig& c) {
    if (c.scenario == "blowup")
        return build_blowup_datum(scenario_of(c), smoothing_of(c), blowup_grid(c.h, c.box, c.box));
    if (c.scenario == "illposed-low")
        return build_illposed_low(IllposedSpecLow(Params(c.alpha, c.beta), c.cap_a, c.n_max), c.h);
    if (c.scenario == "illposed-high")
        return build_illposed_high(IllposedSpecHigh(Params(c.alpha, c.beta), c.gamma, c.n0), c.h);
    throw ValidationError("unknown scenario '" + c.scenario + "' (blowup | illposed-low | illposed-high)");
}

std::string stem_of(const RunConfig& c) {
    if (c.out.empty()) return {};
    std::filesystem::path p(c.out);
    return (p.parent_path() / p.stem()).string();
}

json finish(std::string command, const RunConfig& c, const std::vector<Check>& checks, json body, int& status) {
    json r;
    r["command"] = std::move(command);
    r["config"] = to_json(c);
    json arr = json::array();
    bool all = true;
    for (const auto& k : checks) {
        arr.push_back(to_json(k));
        all = all && k.pass;
    }
    for (auto& [k, v] : body.items()) r[k] = v;
    r["checks"] = arr;
    r["all_pass"] = all;
    if (status == exit_ok && !all) status = exit_check_failed;
    return r;
}

// Run fn; a quadrature failure turns into a failed check and the numerical exit status.
void guarded(std::vector<Check>& checks, int& status, const std::string& name, const std::string& anchor,
             const std::function<void()>& fn) {
    try {
        fn();
    } catch (const ConvergenceError& e) {
        Check k{name, false, anchor, json{{"error", e.what()}, {"partial_err_est", e.partial.err_est}}};
        checks.push_back(k);
        status = exit_numerical;
    }
}

json shear_json(const ShearSeries& s) {
    json samples = json::array();
    for (const auto& p : s.samples)
        samples.push_back(json{{"t", p.t}, {"z", vec(p.z)}, {"gap", vec(p.gap)}, {"quotient", p.quotient}});
    return json{{"kind", s.kind},
                {"n", s.n},
                {"scale", s.scale},
                {"delta_theta", s.delta_theta},
                {"crossing_time", s.crossing_time},
                {"quotient0", s.quotient0},
                {"quotient_at_crossing", s.quotient_at_crossing},
                {"samples", samples}};
}

void write_shear_csv(const std::string& path, const std::vector<ShearSeries>& series) {
    std::ofstream f(path);
    if (!f) throw ValidationError("cannot write " + path);
    f.precision(12);
    f << "kind,n,t,z1,z2,gap1,gap2,quotient\n";
    for (const auto& s : series)
        for (const auto& p : s.samples)
            f << s.kind << ',' << s.n << ',' << p.t << ',' << p.z.x1 << ',' << p.z.x2 << ',' << p.gap.x1 << ','
              << p.gap.x2 << ',' << p.quotient << '\n';
}

ShearOptions shear_options(const RunConfig& c) {
    ShearOptions o;
    o.T = c.T > 0.0 ? c.T : 0.1;
    o.dt = c.dt;
    return o;
}

// Shear checks shared by simulate and illposed.
void shear_checks(const std::vector<ShearSeries>& low, const ShearSeries* high, std::vector<Check>& checks) {
    for (const auto& s : low) {
        checks.push_back({"shear_low_n" + std::to_string(s.n) + "_initial_quotient", s.quotient0 <= 1.0 + 1e-6,
                          "theta~ is Lipschitz with constant 1 at t = 0",
                          json{{"quotient0", s.quotient0}, {"tolerance", 1e-6}}});
        const bool crossed = s.crossing_time >= 0.0;
        const double growth = crossed ? s.quotient_at_crossing / s.quotient0 : 0.0;
        checks.push_back({"shear_low_n" + std::to_string(s.n) + "_growth", crossed && growth >= 2.0,
                          "the horizontal gap closes and the difference quotient at least doubles",
                          json{{"crossing_time", s.crossing_time}, {"growth", growth}, {"required", 2.0}}});
    }
    if (low.size() >= 2) {
        bool mono = true;
        for (std::size_t k = 1; k < low.size(); ++k)
            mono = mono && low[k].quotient_at_crossing / low[k].quotient0 >
                               low[k - 1].quotient_at_crossing / low[k - 1].quotient0;
        checks.push_back({"shear_low_growth_monotone_in_n", mono, "quotient growth increases with n", json::object()});
    }
    if (high)
        checks.push_back({"shear_high_initial_quotient", high->quotient0 <= 1.0 + 1e-6,
                          "theta~ is Lipschitz with constant 1 at t = 0",
                          json{{"quotient0", high->quotient0}, {"crossing_time", high->crossing_time},
                               {"quotient_at_crossing", high->quotient_at_crossing}}});
}

}  // namespace

json to_json(const RunConfig& c) {
    return json{{"command", c.command},
                {"alpha", c.alpha},
                {"beta", c.beta},
                {"quad", quad_json(c.quad)},
                {"alpha_grid", json::array({c.grid_lo, c.grid_hi, c.grid_step})},
                {"scenario", c.scenario},
                {"eps", c.eps},
                {"eps_prime", c.eps_prime},
                {"smoothing", c.smoothing},
                {"h", c.h},
                {"box", c.box},
                {"T", c.T},
                {"dt", c.dt},
                {"mode", c.mode},
                {"probes", c.probes},
                {"snapshots", c.snapshots},
                {"cap_a", c.cap_a},
                {"n_max", c.n_max},
                {"gamma", c.gamma},
                {"n0", c.n0},
                {"shear_n", c.shear_n},
                {"x", json::array({c.x1, c.x2})},
                {"seed", c.seed},
                {"lemma41_samples", c.lemma41_samples},
                {"identity_draws", c.identity_draws},
                {"out", c.out}};
}

RunConfig config_from_json(const json& j, RunConfig c) {
    auto get = [&j](const char* key, auto& dst) {
        if (j.contains(key)) j.at(key).get_to(dst);
    };
    get("command", c.command);
    get("alpha", c.alpha);
    get("beta", c.beta);
    if (j.contains("quad")) {
        const json& q = j.at("quad");
        if (q.contains("abs_tol")) q.at("abs_tol").get_to(c.quad.abs_tol);
        if (q.contains("rel_tol")) q.at("rel_tol").get_to(c.quad.rel_tol);
        if (q.contains("split_radius")) q.at("split_radius").get_to(c.quad.split_radius);
        if (q.contains("max_subdivisions")) q.at("max_subdivisions").get_to(c.quad.max_subdivisions);
        if (q.contains("fd_step")) q.at("fd_step").get_to(c.quad.fd_step);
    }
    if (j.contains("alpha_grid")) {
        const auto g = j.at("alpha_grid").get<std::vector<double>>();
        if (g.size() != 3) throw ValidationError("config: alpha_grid must be [lo, hi, step]");
        c.grid_lo = g[0];
        c.grid_hi = g[1];
        c.grid_step = g[2];
    }
    get("scenario", c.scenario);
    get("eps", c.eps);
    get("eps_prime", c.eps_prime);
    get("smoothing", c.smoothing);
    get("h", c.h);
    get("box", c.box);
    get("T", c.T);
    get("dt", c.dt);
    get("mode", c.mode);
    get("probes", c.probes);
    get("snapshots", c.snapshots);
    get("cap_a", c.cap_a);
    get("n_max", c.n_max);
    get("gamma", c.gamma);
    get("n0", c.n0);
    get("shear_n", c.shear_n);
    if (j.contains("x")) {
        const auto x = j.at("x").get<std::vector<double>>();
        if (x.size() != 2) throw ValidationError("config: x must be [x1, x2]");
        c.x1 = x[0];
        c.x2 = x[1];
    }
    get("seed", c.seed);
    get("lemma41_samples", c.lemma41_samples);
    get("identity_draws", c.identity_draws);
    get("out", c.out);
    return c;
}

json to_json(const Check& c) {
    return json{{"name", c.name}, {"pass", c.pass}, {"anchor", c.anchor}, {"values", c.values}};
}

std::string dump(const json& report) { return report.dump(2) + "\n"; }

Outcome run_lemmas(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    json reports = json::array();
    json special = json::array();
    for (double a : alpha_grid(c)) {
        const auto r42 = lemma::lemma42_infimum(a);
        const auto r43 = lemma::lemma43_value(a);
        reports.push_back(lemma_json(r42));
        reports.push_back(lemma_json(r43));
        checks.push_back({r42.name + "@" + json(a).dump(), r42.pass, r42.anchor,
                          json{{"closed_form", r42.closed_form}, {"bound", r42.bound}, {"discrepancy", r42.discrepancy}}});
        checks.push_back({r43.name + "@" + json(a).dump(), r43.pass, r43.anchor,
                          json{{"closed_form", r43.closed_form}, {"discrepancy", r43.discrepancy}}});
        special.push_back(json{{"alpha", a},
                               {"f(1)", lemma::f_alpha(a, 1.0)},
                               {"mu", lemma::mu_alpha(a)},
                               {"mu_upper", lemma::mu_upper(a)},
                               {"I(1)", lemma::I_one(a)},
                               {"g(1)", lemma::g_one(a)}});
    }
    o.report = finish("lemmas", c, checks, json{{"reports", reports}, {"special_values", special}}, o.status);
    return o;
}

Outcome run_thresholds(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    const auto crit = lemma::critical_alpha_root();
    const auto kryz = lemma::kryz_root();
    const auto printed = lemma::kryz_printed_root();
    const double m25 = lemma::critical_alpha_margin(0.25);

    checks.push_back({"critical_alpha", crit.found && std::abs(crit.root - 0.257) <= 0.003,
                      "the margin becomes negative around alpha = 0.257",
                      json{{"root", crit.root}, {"target", 0.257}, {"tolerance", 0.003}}});
    checks.push_back({"margin_at_quarter", m25 >= 0.030 && m25 <= 0.038,
                      "at alpha = 1/4 the margin is approximately 0.937 - 0.903 = 0.034",
                      json{{"value", m25}, {"range", json::array({0.030, 0.038})}}});
    checks.push_back({"kryz_root", kryz.found && std::abs(kryz.root - 0.05) <= 0.02,
                      "the earlier criterion breaks down at alpha ~ 0.05",
                      json{{"root", kryz.root}, {"target", 0.05}, {"tolerance", 0.02}}});

    json body;
    body["critical_alpha"] = root_json(crit);
    body["critical_alpha"]["margin_at_0.25"] = m25;
    body["kryz_root"] = root_json(kryz);
    body["kryz_root"]["reading"] = "20^{-a}/6 - [1/(1-2a) - 2^{-a}]";
    body["kryz_printed"] = root_json(printed);
    body["kryz_printed"]["reading"] = "20^{-a}/6 - 1/(1-2a) - 2^{-a}";
    body["kryz_printed"]["flag"] =
        printed.found ? "printed reading has a root" : "printed reading is negative on (0, 0.49): no root; sign ambiguity";
    body["residuals"] = json{{"critical_alpha", crit.residual}, {"kryz", kryz.residual}};
    o.report = finish("thresholds", c, checks, body, o.status);
    return o;
}

Outcome run_velocity(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    const ScalarField field = field_of(c);
    const KernelParams kp(c.alpha);
    const Vec2 x{c.x1, c.x2};
    json body;
    body["x"] = vec(x);
    guarded(checks, o.status, "velocity", "u = grad^perp (-Delta)^{-1+a} theta with odd images", [&] {
        const auto r = velocity_at(field, kp, x, c.quad);
        body["u"] = vec(r.u);
        body["err_est"] = r.err_est;
        body["subdivisions"] = r.subdivisions;
        if (field.parity().odd_x1 && field.parity().odd_x2) {
            const auto q = velocity_quarter_at(field, kp, x, c.quad);
            const double d = norm(q.u - r.u);
            body["u_quarter"] = vec(q.u);
            checks.push_back({"quarter_vs_image", d <= 1e-5, "K1/K2 over the quadrant equal the image-kernel velocity",
                              json{{"difference", d}, {"tolerance", 1e-5}}});
        }
        if (x.x2 > c.quad.fd_step) {
            const auto g = gradient_diag(field, kp, x, c.quad);
            body["gradient"] = json{{"d1u1", g.d1u1},
                                    {"d1u2", g.d1u2},
                                    {"d2u1", g.d2u1},
                                    {"d2u2", g.d2u2},
                                    {"weighted_d1u2", g.weighted_d1u2()},
                                    {"weighted_d2u1", g.weighted_d2u1()},
                                    {"divergence", g.divergence()},
                                    {"fd_err", g.fd_err},
                                    {"quad_err", g.quad_err},
                                    {"one_sided", g.one_sided}};
        }
    });
    o.report = finish("velocity", c, checks, body, o.status);
    return o;
}

namespace {

Outcome simulate_blowup(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    const BlowupScenario sc = scenario_of(c);
    const ScalarField field = build_blowup_datum(sc, smoothing_of(c), blowup_grid(c.h, c.box, c.box));
    const KernelParams kp(c.alpha);
    const double X0 = sc.X(0.0);

    ParticleSet ps;
    for (int k = 0; k <= 4; ++k) ps.add("I0_" + std::to_string(k), {X0, X0 * k / 4.0}, field.value(X0, X0 * k / 4.0));
    ps.add("L0_corner", {1.0, 1.0}, field.value(1.0, 1.0));
    ps.add("axis", {0.0, 0.5}, 0.0);
    ps.add("plateau", {1.0, 0.25}, field.value(1.0, 0.25));
    ps.add("outer", {2.5, 1.0}, field.value(2.5, 1.0));

    AdvectOptions opt;
    opt.T = c.T > 0.0 ? c.T : 0.1 * sc.T_eps();
    opt.dt = c.dt;
    if (c.mode == "frozen")
        opt.mode = FieldUpdate::frozen;
    else if (c.mode == "recomputed")
        opt.mode = FieldUpdate::recomputed;
    else
        throw ValidationError("mode must be frozen or recomputed");
    const int steps = static_cast<int>(std::ceil(opt.T / opt.dt - 1e-9));
    opt.snapshot_every = std::max(1, steps / std::max(1, c.snapshots));

    const TrajectoryRecord rec = advect(field, kp, c.quad, ps, opt);
    const auto cm = containment_monitor(rec.snapshots, sc);

    json series = json::array();
    double min_d = std::numeric_limits<double>::infinity();
    double first_contact = -1.0;
    for (std::size_t k = 0; k < rec.snapshots.size(); ++k) {
        const auto& [t, f] = rec.snapshots[k];
        json row{{"t", t}, {"X_t", cm[k].X}, {"d_t", cm[k].d}, {"contained", cm[k].contained}};
        min_d = std::min(min_d, cm[k].d);
        if (first_contact < 0.0 && !(cm[k].d > 0.0)) first_contact = t;
        try {
            const auto b = barrier_check(f, sc, t, kp, c.quad, c.probes);
            row["margin_I"] = b.max_margin_I;
            row["min_u2_J"] = b.min_u2_J;
            row["barrier_ok"] = b.ok();
        } catch (const ConvergenceError& e) {
            row["margin_I"] = nullptr;
            row["min_u2_J"] = nullptr;
            row["error"] = e.what();
            o.status = exit_numerical;
        }
        series.push_back(row);
    }

    const double sup0 = rec.stats.front().sup, sup1 = rec.stats.back().sup;
    const double mass0 = rec.stats.front().mass, mass1 = rec.stats.back().mass;
    const double sup_drift = std::abs(sup1 - sup0) / sup0;
    const double mass_drift = std::abs(mass1 - mass0) / mass0;

    bool quadrant = true;
    for (const auto& step : rec.positions)
        for (std::size_t k = 0; k < step.size(); ++k) quadrant = quadrant && step[k].x1 >= 0.0 && step[k].x2 >= 0.0;

    checks.push_back({"initial_distance", cm.front().d >= sc.epsilon() - c.h, "d(0) >= eps",
                      json{{"d0", cm.front().d}, {"eps", sc.epsilon()}, {"grid_tolerance", c.h}}});
    // frozen mode does not evolve theta, so containment and drift are only meaningful when recomputed
    if (opt.mode == FieldUpdate::recomputed) {
        checks.push_back({"containment", min_d > 0.0, "L_t stays inside {theta = 1}: d(t) > 0",
                          json{{"min_d", min_d}, {"first_contact_time", first_contact}}});
        checks.push_back({"sup_drift", sup_drift <= 0.01, "transport conserves sup |theta|",
                          json{{"drift", sup_drift}, {"tolerance", 0.01}}});
    }
    checks.push_back({"quadrant_preserved", quadrant, "trajectories starting in D+ stay in D+", json::object()});

    json particles = json::array();
    for (std::size_t k = 0; k < ps.size(); ++k)
        particles.push_back(json{{"label", ps.labels[k]},
                                 {"initial", vec(ps.initial[k])},
                                 {"final", vec(ps.position[k])},
                                 {"theta", ps.value[k]},
                                 {"exited", ps.exited[k] != 0}});
    json exits = json::array();
    for (const auto& [k, t] : rec.exits) exits.push_back(json{{"particle", ps.labels[k]}, {"t", t}});

    json body{{"T", opt.T},
              {"T_eps", sc.T_eps()},
              {"steps", steps},
              {"cfl_violations", rec.cfl_violations},
              {"edge_losses", rec.edge_losses},
              {"warnings", rec.warnings},
              {"sup", json::array({sup0, sup1})},
              {"mass", json::array({mass0, mass1})},
              {"sup_drift", sup_drift},
              {"mass_drift", mass_drift},
              {"series", series},
              {"particles", particles},
              {"exits", exits}};

    const std::string stem = stem_of(c);
    if (!stem.empty()) {
        const std::string csv = stem + "_series.csv";
        std::ofstream f(csv);
        if (!f) throw ValidationError("cannot write " + csv);
        f.precision(12);
        f << "t,X_t,d_t,margin_I,min_u2_J\n";
        for (const auto& r : series) {
            f << r["t"].get<double>() << ',' << r["X_t"].get<double>() << ',' << r["d_t"].get<double>() << ',';
            if (r["margin_I"].is_null())
                f << "nan,nan\n";
            else
                f << r["margin_I"].get<double>() << ',' << r["min_u2_J"].get<double>() << '\n';
        }
        const std::string pcsv = stem + "_particles.csv";
        std::ofstream pf(pcsv);
        if (!pf) throw ValidationError("cannot write " + pcsv);
        pf.precision(12);
        pf << "t,label,x1,x2\n";
        for (std::size_t s = 0; s < rec.times.size(); ++s)
            for (std::size_t k = 0; k < ps.size(); ++k)
                pf << rec.times[s] << ',' << ps.labels[k] << ',' << rec.positions[s][k].x1 << ','
                   << rec.positions[s][k].x2 << '\n';
        write_field(rec.snapshots.front().second, stem + "_field_initial.json");
        write_field(rec.final_field, stem + "_field_final.json");
        body["files"] = json{{"series", csv},
                             {"particles", pcsv},
                             {"field_initial", stem + "_field_initial.json"},
                             {"field_final", stem + "_field_final.json"}};
    }
    o.report = finish("simulate", c, checks, body, o.status);
    return o;
}

Outcome simulate_shear(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    const KernelParams kp(c.alpha);
    const ShearOptions so = shear_options(c);
    std::vector<ShearSeries> low;
    std::vector<ShearSeries> all;
    json body;
    body["note"] = "pair separation under the frozen t = 0 velocity";
    if (c.scenario == "illposed-low") {
        const IllposedSpecLow data(Params(c.alpha, c.beta), c.cap_a, c.n_max);
        for (int n : c.shear_n) {
            guarded(checks, o.status, "shear_low_n" + std::to_string(n), "pair shearing near the boundary",
                    [&] { low.push_back(shear_diagnostic(data, n, kp, c.quad, so)); });
        }
        all = low;
        shear_checks(low, nullptr, checks);
    } else {
        const IllposedSpecHigh data(Params(c.alpha, c.beta), c.gamma, c.n0);
        guarded(checks, o.status, "shear_high", "pair shearing near the boundary",
                [&] { all.push_back(shear_diagnostic(data, kp, c.quad, so)); });
        if (!all.empty()) shear_checks({}, &all.front(), checks);
    }
    json arr = json::array();
    for (const auto& s : all) arr.push_back(shear_json(s));
    body["series"] = arr;
    const std::string stem = stem_of(c);
    if (!stem.empty()) {
        write_shear_csv(stem + "_shear.csv", all);
        body["files"] = json{{"series", stem + "_shear.csv"}};
    }
    o.report = finish("simulate", c, checks, body, o.status);
    return o;
}

// Largest difference quotient of f over horizontal and vertical lattice neighbours.
double lipschitz_sample(const std::function<double(double, double)>& f, double x0, double x1, double y0, double y1,
                        double h) {
    double L = 0.0;
    for (double y = y0; y <= y1; y += h)
        for (double x = x0; x <= x1; x += h) {
            const double v = f(x, y);
            L = std::max({L, std::abs(f(x + h, y) - v) / h, std::abs(f(x, y + h) - v) / h});
        }
    return L;
}

}  // namespace

Outcome run_simulate(const RunConfig& c) {
    if (c.scenario == "blowup") return simulate_blowup(c);
    if (c.scenario == "illposed-low" || c.scenario == "illposed-high") return simulate_shear(c);
    throw ValidationError("unknown scenario '" + c.scenario + "' (blowup | illposed-low | illposed-high)");
}

Outcome run_illposed(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    const KernelParams kp(c.alpha);
    json body;
    const Params p(c.alpha, c.beta);
    const Regime regime = classify(p);
    body["regime"] = std::string(to_string(regime));
    const ShearOptions so = shear_options(c);

    if (c.beta < 2.0 * c.alpha) {
        const IllposedSpecLow data(p, c.cap_a, c.n_max);
        json caps = json::array();
        bool peaks = true;
        for (int n = 1; n <= c.n_max; ++n) {
            const Vec2 cc = data.cap_center(n);
            const double peak = data.stretched_value(cc.x1, cc.x2);
            peaks = peaks && std::abs(peak - (1.0 + data.a_n(n))) <= 1e-12;
            caps.push_back(json{{"n", n}, {"a_n", data.a_n(n)}, {"b_n", data.b_n(n)}, {"peak", peak},
                                {"probe", vec(data.probe(n))}, {"probe_prime", vec(data.probe_prime(n))}});
        }
        body["caps"] = caps;
        checks.push_back({"cap_peaks", peaks, "theta~_0 equals 1 + a_n at the n-th cap centre", json::object()});
        const double L = lipschitz_sample([&](double a, double b) { return data.stretched_value(a, b); }, -2.5, 2.5,
                                          0.01, 2.5, 0.01);
        checks.push_back({"stretched_lipschitz", L <= 1.0 + 1e-9, "theta~_0 is Lipschitz with constant 1",
                          json{{"sampled_constant", L}}});
        const ScalarField f = build_illposed_low(data, c.h);
        const WNorm w = wbeta_norm(f, p);
        checks.push_back({"wbeta_finite", std::isfinite(w.seminorm) && std::isfinite(w.sup_norm),
                          "theta_0 lies in X_beta",
                          json{{"sup_norm", w.sup_norm}, {"seminorm", w.seminorm}}});
        std::vector<ShearSeries> low;
        for (int n : c.shear_n) {
            if (n > c.n_max) continue;
            guarded(checks, o.status, "shear_low_n" + std::to_string(n), "pair shearing near the boundary",
                    [&] { low.push_back(shear_diagnostic(data, n, kp, c.quad, so)); });
        }
        shear_checks(low, nullptr, checks);
        json arr = json::array();
        for (const auto& s : low) {
            json j = shear_json(s);
            j.erase("samples");
            arr.push_back(j);
        }
        body["shear"] = arr;
    } else {
        const IllposedSpecHigh data(p, c.gamma, c.n0);
        const double ty = data.value(data.probe().x1, data.probe().x2);
        const double typ = data.value(data.probe_prime().x1, data.probe_prime().x2);
        const double expect = data.a_n(c.n0) / c.n0;
        checks.push_back({"probe_values", std::abs(ty - expect) <= 1e-12 * std::max(1.0, expect) && typ == 0.0,
                          "theta at y is a_{n0}/n0 and at y' is 0",
                          json{{"theta_y", ty}, {"expected", expect}, {"theta_y_prime", typ}}});
        const double L = lipschitz_sample([&](double a, double b) { return data.stretched_value(a, b); }, -2.9, 0.9,
                                          0.01, 2.9, 0.01);
        checks.push_back({"stretched_lipschitz", L <= 1.0 + 1e-9, "theta~_0 is Lipschitz (lambda_beta' <= 1)",
                          json{{"sampled_constant", L}}});
        guarded(checks, o.status, "shear_high", "pair shearing near the boundary", [&] {
            const ShearSeries s = shear_diagnostic(data, kp, c.quad, so);
            shear_checks({}, &s, checks);
            json j = shear_json(s);
            j.erase("samples");
            body["shear"] = j;
        });
    }
    o.report = finish("illposed", c, checks, body, o.status);
    return o;
}

Outcome run_verify_all(const RunConfig& c) {
    Outcome o;
    std::vector<Check> checks;
    json body;

    if (c.alpha <= 0.25) {
        const auto r42 = lemma::lemma42_infimum(c.alpha);
        const auto r43 = lemma::lemma43_value(c.alpha);
        checks.push_back({"lemma42", r42.pass, r42.anchor,
                          json{{"closed_form", r42.closed_form}, {"quadrature", r42.quadrature}, {"bound", r42.bound},
                               {"discrepancy", r42.discrepancy}, {"tolerance", r42.tolerance}}});
        checks.push_back({"lemma43", r43.pass, r43.anchor,
                          json{{"closed_form", r43.closed_form}, {"quadrature", r43.quadrature},
                               {"discrepancy", r43.discrepancy}, {"tolerance", r43.tolerance}}});
    }

    const Outcome th = run_thresholds(c);
    for (const auto& k : th.report["checks"]) {
        Check ck{k["name"].get<std::string>(), k["pass"].get<bool>(), k["anchor"].get<std::string>(), k["values"]};
        checks.push_back(ck);
    }
    body["kryz_printed_flag"] = th.report["kryz_printed"]["flag"];

    const double f1 = lemma::f_alpha(0.25, 1.0);
    checks.push_back({"f1_quarter", f1 >= 0.9374 && f1 >= 0.92, "f(1) at alpha = 1/4 is at least 0.9374 (and 0.92)",
                      json{{"value", f1}}});

    for (const auto& ic : lemma::check_strip_identities(c.identity_draws, c.seed))
        checks.push_back({"identity_" + ic.name, ic.pass, ic.anchor,
                          json{{"draws", ic.draws}, {"max_error", ic.max_error}, {"tolerance", ic.tolerance}}});
    if (c.alpha <= 0.25)
        for (const auto& ic : lemma::check_region_identities(c.alpha, {0.25, 0.5, 1.0}))
            checks.push_back({"identity_" + ic.name, ic.pass, ic.anchor,
                              json{{"max_error", ic.max_error}, {"tolerance", ic.tolerance}}});

    std::vector<double> l41_alphas{0.0, 0.1, 0.25};
    if (std::find(l41_alphas.begin(), l41_alphas.end(), c.alpha) == l41_alphas.end()) l41_alphas.push_back(c.alpha);
    for (double a : l41_alphas) {
        const auto r = lemma::lemma41_check(a, c.lemma41_samples, c.seed);
        checks.push_back({"lemma41@" + json(a).dump(), r.violations == 0 && r.reduced_violations == 0,
                          "the four-term image expression is positive for 0 < x1 <= x2 < min(b1, b2)",
                          json{{"samples", r.samples}, {"violations", r.violations},
                               {"reduced_violations", r.reduced_violations}, {"min_scaled_value", r.min_value}}});
    }

    // kernel symmetry and axis conditions on the blow-up datum
    RunConfig bc = c;
    bc.scenario = "blowup";
    const BlowupScenario sc = scenario_of(bc);
    const ScalarField field = build_blowup_datum(sc, smoothing_of(bc), blowup_grid(bc.h, 4.0, 4.0));
    const KernelParams kp(c.alpha);
    guarded(checks, o.status, "kernel_symmetry", "the K1/K2 quadrant form equals the image-kernel velocity", [&] {
        double worst = 0.0;
        for (int k = 0; k < 20; ++k) {
            // deterministic probes spread over the quadrant, some near each axis
            const Vec2 x{0.05 + 0.13 * ((k * 7) % 20), 0.02 + 0.11 * ((k * 3) % 20)};
            const auto a = velocity_at(field, kp, x, c.quad);
            const auto b = velocity_quarter_at(field, kp, x, c.quad);
            worst = std::max(worst, norm(a.u - b.u));
        }
        checks.push_back({"kernel_symmetry", worst <= 1e-5,
                          "the K1/K2 quadrant form equals the image-kernel velocity",
                          json{{"probes", 20}, {"max_difference", worst}, {"tolerance", 1e-5}}});
    });
    guarded(checks, o.status, "axis_u1", "u1(t, 0, s) = 0 for data odd in x1", [&] {
        double worst = 0.0, worst_ratio = 0.0;
        for (int k = 1; k <= 10; ++k) {
            const auto r = velocity_at(field, kp, {0.0, 0.3 * k}, c.quad);
            worst = std::max(worst, std::abs(r.u.x1));
            worst_ratio = std::max(worst_ratio, std::abs(r.u.x1) / std::max(r.err_est, 1e-300));
        }
        checks.push_back({"axis_u1", worst_ratio <= 1.0, "u1(t, 0, s) = 0 for data odd in x1",
                          json{{"heights", 10}, {"max_abs_u1", worst}, {"max_ratio_to_err", worst_ratio}}});
    });
    guarded(checks, o.status, "barrier_t0", "u1 <= -(45 alpha)^{-1} X^{1-2 alpha} on I_0 and u2 >= 0 on J_0", [&] {
        const auto b = barrier_check(field, sc, 0.0, kp, c.quad, c.probes);
        checks.push_back({"barrier_t0", b.ok(), "u1 <= -(45 alpha)^{-1} X^{1-2 alpha} on I_0 and u2 >= 0 on J_0",
                          json{{"X0", b.X}, {"threshold", b.threshold}, {"max_margin_I", b.max_margin_I},
                               {"min_u2_J", b.min_u2_J}, {"probes", c.probes}}});
    });

    o.report = finish("verify-all", c, checks, body, o.status);
    return o;
}

Outcome run(const RunConfig& c) {
    c.quad.validate();
    if (c.command == "lemmas") return run_lemmas(c);
    if (c.command == "thresholds") return run_thresholds(c);
    if (c.command == "velocity") return run_velocity(c);
    if (c.command == "simulate") return run_simulate(c);
    if (c.command == "illposed") return run_illposed(c);
    if (c.command == "verify-all") return run_verify_all(c);
    throw ValidationError("unknown command '" + c.command + "'");
}

}  // namespace gsqg::cli

#include "cli.hpp"

#include "curvehedge/analytics.hpp"
#include "curvehedge/arbitrage.hpp"
#include "curvehedge/errors.hpp"
#include "curvehedge/extrapolation.hpp"
#include "curvehedge/hedging.hpp"
#include "curvehedge/io.hpp"
#include "curvehedge/sensitivity.hpp"
#include "curvehedge/shifts.hpp"
#include "curvehedge/variation.hpp"

#include <CLI11.hpp>

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <fstream>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <sstream>

namespace curvehedge::cli {

namespace {

struct Tolerances {
    double variation_rel = 1e-6;    // analytic vs numeric first variation
    double first_order_rel = 1e-8;  // hedge-equation residual / L*_T
    double perfect_rel = 1e-9;      // revaluation gap / L*_T
    double remainder_noise = 1e-14; // relative rounding level of one valuation; remainders below
                                    // remainder_noise * L*_T / eps are treated as rounding

    static Tolerances from_env() {
        Tolerances t;
        const char* raw = std::getenv("CURVEHEDGE_TOL_OVERRIDE");
        if (!raw || !*raw) return t;
        Json j;
        try {
            j = Json::parse(raw);
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(std::string("CURVEHEDGE_TOL_OVERRIDE: ") + e.what());
        }
        if (!j.is_object()) throw ParseError("CURVEHEDGE_TOL_OVERRIDE: expected a JSON object");
        std::map<std::string, double*> slots{{"variation_rel", &t.variation_rel},
                                             {"first_order_rel", &t.first_order_rel},
                                             {"perfect_rel", &t.perfect_rel},
                                             {"remainder_noise", &t.remainder_noise}};
        for (const auto& [key, value] : j.items()) {
            auto it = slots.find(key);
            if (it == slots.end()) throw ParseError("CURVEHEDGE_TOL_OVERRIDE: unknown tolerance '" + key + "'");
            if (!value.is_number() || !(value.get<double>() >= 0.0))
                throw ParseError("CURVEHEDGE_TOL_OVERRIDE: '" + key + "' must be a non-negative number");
            *it->second = value.get<double>();
        }
        return t;
    }
};

struct RunConfig {
    std::string curve_path;
    std::string liabilities_path;
    std::string method_arg;
    std::string format = "table";
    std::string out_path;
    int shifts = 20;
    std::uint64_t seed = 1;
    std::optional<double> parallel_bp;
    std::string shift_file;
    double grid = 1.0;
    double step = kDefaultScanStep;
    double scan_from = 0.0;
    double scan_to = -1.0;
    double fra_eps = kDefaultFraLength;
    std::vector<double> sweep_alpha;
    std::string inject_fault;
};

std::string fmt(double v, int prec = 10) {
    if (std::isnan(v)) return "nan";
    char buf[64];
    std::snprintf(buf, sizeof buf, "%.*g", prec, v);
    return buf;
}

// Column-aligned text table.
std::string table(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
    std::vector<std::size_t> w(head.size());
    for (std::size_t c = 0; c < head.size(); ++c) w[c] = head[c].size();
    for (const auto& r : rows)
        for (std::size_t c = 0; c < r.size() && c < w.size(); ++c) w[c] = std::max(w[c], r[c].size());
    std::ostringstream o;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) {
            o << r[c];
            if (c + 1 < r.size()) o << std::string(w[c] - r[c].size() + 2, ' ');
        }
        o << '\n';
    };
    line(head);
    for (const auto& r : rows) line(r);
    return o.str();
}

std::string csv(const std::vector<std::string>& head, const std::vector<std::vector<std::string>>& rows) {
    std::ostringstream o;
    auto line = [&](const std::vector<std::string>& r) {
        for (std::size_t c = 0; c < r.size(); ++c) o << (c ? "," : "") << r[c];
        o << '\n';
    };
    line(head);
    for (const auto& r : rows) line(r);
    return o.str();
}

std::string rows_out(const RunConfig& cfg, const std::vector<std::string>& head,
                     const std::vector<std::vector<std::string>>& rows) {
    return cfg.format == "csv" ? csv(head, rows) : table(head, rows);
}

std::string dump(const Json& j) { return j.dump(2) + "\n"; }

void require(const std::string& value, const char* flag) {
    if (value.empty()) throw DomainError(std::string(flag) + " is required for this command");
}

std::vector<CurveShift> build_shifts(const RunConfig& cfg) {
    if (cfg.parallel_bp) return {parallel_shift_bp(*cfg.parallel_bp)};
    if (!cfg.shift_file.empty()) {
        const std::string text = read_text_file(cfg.shift_file);
        std::istringstream in(text);
        std::string line;
        std::vector<double> t, df;
        std::size_t n = 0;
        while (std::getline(in, line)) {
            ++n;
            if (line.empty() || line[0] == '#' || line.rfind("t,", 0) == 0) continue;
            double a = 0.0, b = 0.0;
            char comma = 0;
            std::istringstream cells(line);
            if (!(cells >> a >> comma >> b) || comma != ',')
                throw ParseError(cfg.shift_file + ":" + std::to_string(n) + ": expected 't,df'");
            t.push_back(a);
            df.push_back(b);
        }
        return {CurveShift(TimeGrid(t), df)};
    }
    if (cfg.shifts < 1) throw DomainError("--shifts must be at least 1");
    return random_shift_suite(cfg.seed, cfg.shifts);
}

// ---------------------------------------------------------------------------

std::string cmd_extrapolate(const RunConfig& cfg, int& code) {
    require(cfg.curve_path, "--curve");
    require(cfg.method_arg, "--method");
    const ForwardCurve z = read_curve(cfg.curve_path);
    const MethodSpec spec = parse_method_argument(cfg.method_arg);
    const ExtrapolatedCurve curve(z, spec);
    if (!(cfg.grid > 0.0)) throw DomainError("--grid must be positive");
    const DefectReport defects = arbitrage_scan(curve, cfg.step);
    code = defects.empty() ? kOk : kDomainError;

    std::vector<double> ts;
    const auto n = static_cast<long>(std::floor(curve.horizon() / cfg.grid + 1e-9));
    for (long k = 0; k <= n; ++k) ts.push_back(static_cast<double>(k) * cfg.grid);
    if (ts.back() < curve.horizon()) ts.push_back(curve.horizon());

    if (cfg.format == "json") {
        Json j;
        j["command"] = "extrapolate";
        j["method"] = to_json(curve.spec());
        j["samples"] = Json::array();
        for (double t : ts) {
            const ForwardSample f = forward_of_extrapolated(curve, t);
            j["samples"].push_back({{"t", t},
                                    {"zero_yield", curve.zero_yield(t)},
                                    {"forward", f.value},
                                    {"discount", curve.discount(t)},
                                    {"defective", f.defective}});
        }
        j["scan_step"] = defects.step;
        j["defects"] = to_json(defects);
        return dump(j);
    }
    std::vector<std::vector<std::string>> rows;
    for (double t : ts) {
        const ForwardSample f = forward_of_extrapolated(curve, t);
        rows.push_back({fmt(t, 6), fmt(curve.zero_yield(t)), fmt(f.value), fmt(curve.discount(t)),
                        f.defective ? "1" : "0"});
    }
    std::string text = rows_out(cfg, {"t", "zero_yield", "forward", "discount", "defective"}, rows);
    if (cfg.format == "table") {
        text += "\narbitrage scan (step " + fmt(defects.step, 4) + "): ";
        if (defects.empty()) text += "no defects\n";
        else {
            text += std::to_string(defects.intervals.size()) + " interval(s)\n";
            for (const auto& i : defects.intervals)
                text += "  " + std::string(to_string(i.kind)) + " on [" + fmt(i.a, 6) + ", " + fmt(i.b, 6) + "]\n";
        }
    }
    return text;
}

std::string cmd_scan(const RunConfig& cfg) {
    require(cfg.curve_path, "--curve");
    require(cfg.method_arg, "--method");
    const ExtrapolatedCurve curve(read_curve(cfg.curve_path), parse_method_argument(cfg.method_arg));
    const DefectReport defects = arbitrage_scan(curve, cfg.step, cfg.scan_from, cfg.scan_to);
    if (cfg.format == "json") {
        Json j;
        j["command"] = "scan-arbitrage";
        j["method"] = to_json(curve.spec());
        j["step"] = defects.step;
        j["arbitrage_free"] = defects.empty();
        j["defects"] = to_json(defects);
        return dump(j);
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& i : defects.intervals) rows.push_back({std::string(to_string(i.kind)), fmt(i.a, 8), fmt(i.b, 8)});
    std::string text = rows_out(cfg, {"kind", "a", "b"}, rows);
    if (cfg.format == "table" && defects.empty()) text += "no defects on the scan grid\n";
    return text;
}

std::string cmd_hedge(const RunConfig& cfg) {
    require(cfg.curve_path, "--curve");
    require(cfg.liabilities_path, "--liabilities");
    require(cfg.method_arg, "--method");
    const ForwardCurve z = read_curve(cfg.curve_path);
    const CashFlow L = read_cashflow(cfg.liabilities_path);
    const MethodSpec spec = parse_method_argument(cfg.method_arg);
    const ExtrapolatedCurve curve(z, spec);
    const HedgePlan plan = hedge(curve, L);
    const double LT = plan.diagnostics.liability_value;

    Json j;
    j["command"] = "hedge";
    j["method"] = to_json(curve.spec());
    j["liability_value"] = LT;
    j["plan"] = to_json(plan);
    j["total_value"] = plan.diagnostics.plan_value;
    j["leverage"] = plan.diagnostics.leverage;

    std::vector<std::pair<std::string, std::string>> facts;
    facts.emplace_back("kind", std::string(to_string(plan.kind)));
    facts.emplace_back("liability value L*_T", fmt(LT, 14));
    facts.emplace_back("plan value", fmt(plan.diagnostics.plan_value, 14));
    facts.emplace_back("leverage (value / L*_T)", fmt(plan.diagnostics.leverage, 14));

    if (plan.kind == HedgeKind::infeasible) {
        const InfeasibilityReport rep = infeasibility_decomposition(curve.spec(), z, L, cfg.fra_eps);
        j["infeasibility"] = to_json(rep);
        std::vector<double> residuals;
        for (const auto& dz : build_shifts(cfg)) residuals.push_back(first_order_residual(rep.with_overlay, curve, L, dz));
        j["overlay_residuals"] = residuals;
        facts.emplace_back("bond lump at tau", fmt(rep.bond_lump, 14));
        facts.emplace_back("forward exposure coefficient K", fmt(rep.forward_coefficient, 14));
        facts.emplace_back("FRA length eps", fmt(rep.fra.eps, 6));
        facts.emplace_back("FRA units", fmt(rep.fra_units, 14));
        facts.emplace_back("FRA overlay lumps", fmt(-rep.forward_coefficient / rep.fra.eps, 10) + " at " +
                                                    fmt(rep.fra.borrow_time, 6) + ", " +
                                                    fmt(rep.forward_coefficient / rep.fra.eps, 10) + " at " +
                                                    fmt(rep.tau, 6));
        facts.emplace_back("max overlay residual over shifts",
                           fmt(*std::max_element(residuals.begin(), residuals.end()), 4));
    } else {
        std::vector<double> residuals;
        for (const auto& dz : build_shifts(cfg)) residuals.push_back(first_order_residual(plan, curve, L, dz));
        j["first_order_residuals"] = residuals;
        const double gap = convexity_gap(plan, curve, L, CurveShift::constant(1.0, curve.horizon()));
        j["convexity_gap_parallel"] = gap;
        facts.emplace_back("max first-order residual", fmt(*std::max_element(residuals.begin(), residuals.end()), 4));
        facts.emplace_back("convexity gap (unit parallel shift)", fmt(gap, 12));
        if (plan.method == MethodKind::M5_SFSA) {
            const double kappa = curve.spec().kappa_value();
            bool inside = true;
            for (double b : plan.support_breaks()) inside = inside && b >= curve.tau() && b <= kappa;
            const bool value_ok = std::abs(plan.diagnostics.plan_value - LT) <= 1e-10 * std::abs(LT);
            j["support_in_tau_kappa"] = inside;
            j["total_equals_liability_value"] = value_ok;
            facts.emplace_back("support within (tau, kappa]", inside ? "yes" : "NO");
            facts.emplace_back("total value = L*_T", value_ok ? "yes" : "NO");
        }
    }
    if (cfg.format == "json") return dump(j);
    if (cfg.format == "csv") return plan_lumps_csv(plan);
    std::vector<std::vector<std::string>> rows;
    for (const auto& [k, v] : facts) rows.push_back({k, v});
    std::string text = table({"item", "value"}, rows);
    std::vector<std::vector<std::string>> lumps;
    for (const auto& l : plan.lumps) lumps.push_back({"lump", fmt(l.t, 8), fmt(l.amount, 14)});
    for (const auto& d : plan.densities) {
        HedgePlan one;
        one.densities.push_back(d);
        lumps.push_back({"density", fmt(d.a, 8) + ".." + fmt(d.b, 8), fmt(one.total_value(), 14)});
    }
    if (!lumps.empty()) text += "\n" + table({"piece", "time", "present value"}, lumps);
    return text;
}

struct Check {
    std::string name;
    double value;
    double tolerance;
    bool pass;
};

std::string cmd_verify(const RunConfig& cfg, int& code, std::string& failed) {
    require(cfg.curve_path, "--curve");
    require(cfg.liabilities_path, "--liabilities");
    require(cfg.method_arg, "--method");
    const Tolerances tol = Tolerances::from_env();
    const ForwardCurve z = read_curve(cfg.curve_path);
    const CashFlow L = read_cashflow(cfg.liabilities_path);
    const MethodSpec spec = parse_method_argument(cfg.method_arg);
    const ExtrapolatedCurve curve(z, spec);
    const auto shifts = build_shifts(cfg);
    const double fault = cfg.inject_fault == "analytic-variation" ? 1e-3 : 0.0;
    if (!cfg.inject_fault.empty() && fault == 0.0) throw DomainError("unknown fault '" + cfg.inject_fault + "'");

    std::vector<Check> checks;
    double LT = present_value(curve, L);
    const double scale = std::max(std::abs(LT), 1e-300);

    double worst_var = 0.0, worst_rem = 0.0;
    bool decay_ok = true;
    bool all_zero = true;
    for (const auto& dz : shifts) {
        VariationReport r = method_variation_report(curve.spec(), z, dz, L);
        if (fault != 0.0) {
            r.analytic *= 1.0 + fault;
            r.analytic += fault * scale;
            r.residual = std::abs(r.analytic - r.numeric);
            for (std::size_t k = 0; k < r.remainders.size(); ++k)
                r.remainders[k] = std::abs(r.quotients[k] - r.analytic);
        }
        const double rel = r.residual / std::max(std::abs(r.numeric), scale);
        worst_var = std::max(worst_var, rel);
        const double tiny = tol.remainder_noise * scale / r.eps_schedule.back();
        all_zero = all_zero && std::abs(r.analytic) <= tiny && std::abs(r.numeric) <= tiny;
        const auto& rem = r.remainders;
        const std::size_t n = rem.size();
        for (std::size_t k = n - 3; k < n; ++k) {
            const bool floor = rem[k] <= tol.remainder_noise * scale / r.eps_schedule[k];
            if (!floor && !(rem[k] < rem[k - 1])) decay_ok = false;
        }
        worst_rem = std::max(worst_rem, rem.back() / scale);
    }
    checks.push_back({"variation: analytic vs numeric (max rel residual)", worst_var, tol.variation_rel,
                      worst_var <= tol.variation_rel});
    checks.push_back({"variation: remainder decay over last 4 epsilons", worst_rem, tol.variation_rel, decay_ok});
    if (curve.kind() == MethodKind::M1)
        checks.push_back({"variation: M1 variations all zero", 0.0, 0.0, all_zero});

    const bool liabilities_beyond = !L.empty() && L.first_time() > curve.tau();
    if (liabilities_beyond) {
        const HedgePlan plan = hedge(curve, L);
        if (plan.kind == HedgeKind::perfect) {
            const double gap = verify_perfect(plan, curve.spec(), z, L, shifts) / scale;
            checks.push_back({"hedge: perfect revaluation gap / L*_T", gap, tol.perfect_rel, gap <= tol.perfect_rel});
        }
        if (plan.kind != HedgeKind::infeasible) {
            double worst = 0.0;
            for (const auto& dz : shifts) worst = std::max(worst, first_order_residual(plan, curve, L, dz) / scale);
            if (fault != 0.0) worst += fault;
            checks.push_back(
                {"hedge: first-order residual / L*_T", worst, tol.first_order_rel, worst <= tol.first_order_rel});
        } else {
            const double K = plan.diagnostics.df_tau_coefficient;
            checks.push_back({"hedge: bond-only plan leaves forward exposure", std::abs(K), 0.0, std::abs(K) > 0.0});
        }
    }

    bool all = true;
    for (const auto& c : checks) {
        all = all && c.pass;
        if (!c.pass) failed += (failed.empty() ? "" : "; ") + c.name;
    }
    code = all ? kOk : kVerificationFailed;

    if (cfg.format == "json") {
        Json j;
        j["command"] = "verify";
        j["method"] = to_json(curve.spec());
        j["shifts"] = shifts.size();
        j["checks"] = Json::array();
        for (const auto& c : checks)
            j["checks"].push_back({{"name", c.name}, {"value", c.value}, {"tolerance", c.tolerance}, {"pass", c.pass}});
        j["pass"] = all;
        return dump(j);
    }
    std::vector<std::vector<std::string>> rows;
    for (const auto& c : checks) rows.push_back({c.pass ? "PASS" : "FAIL", c.name, fmt(c.value, 4), fmt(c.tolerance, 4)});
    std::string text = rows_out(cfg, {"status", "check", "value", "tolerance"}, rows);
    if (cfg.format == "table") text += all ? "all checks passed\n" : "verification FAILED\n";
    return text;
}

std::string cmd_sensitivity(const RunConfig& cfg) {
    require(cfg.curve_path, "--curve");
    require(cfg.liabilities_path, "--liabilities");
    require(cfg.method_arg, "--method");
    const ForwardCurve z = read_curve(cfg.curve_path);
    const CashFlow L = read_cashflow(cfg.liabilities_path);
    const MethodSpec spec = parse_method_argument(cfg.method_arg);
    const UfrSensitivityReport r = ufr_sensitivity(spec, z, L);

    std::vector<std::pair<double, double>> sweep;
    if (!cfg.sweep_alpha.empty()) {
        if (!spec.is_smith_wilson()) throw DomainError("--sweep-alpha needs a Smith-Wilson method");
        for (double a : cfg.sweep_alpha) {
            MethodSpec s = spec;
            s.alpha = a;
            sweep.emplace_back(a, ufr_sensitivity(s, z, L).S);
        }
    }
    if (cfg.format == "json") {
        Json j = to_json(r);
        if (!sweep.empty()) {
            j["sweep"] = Json::array();
            for (const auto& [a, s] : sweep) j["sweep"].push_back({{"alpha", a}, {"S", s}});
        }
        return dump(j);
    }
    auto opt = [](const std::optional<double>& v) { return v ? fmt(*v, 12) : std::string("-"); };
    std::string text = rows_out(cfg, {"method", "S", "lower", "upper", "oracle", "rel_residual"},
                                {{std::string(to_string(r.method)), fmt(r.S, 12), opt(r.lower), opt(r.upper),
                                  fmt(r.oracle, 12), fmt(r.rel_residual, 3)}});
    if (r.oracle_only && cfg.format == "table") text += "no closed form for this method: S is oracle-only\n";
    if (!sweep.empty()) {
        std::vector<std::vector<std::string>> rows;
        for (const auto& [a, s] : sweep) rows.push_back({fmt(a, 8), fmt(s, 12)});
        text += "\n" + rows_out(cfg, {"alpha", "S"}, rows);
    }
    return text;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
    CLI::App app{"Extrapolated yield curves: variations, hedges and UFR sensitivities", "curvehedge"};
    app.require_subcommand(1, 1);
    RunConfig cfg;

    auto common = [&cfg](CLI::App* sub, bool liabilities, bool shifts) {
        sub->add_option("--curve", cfg.curve_path, "market curve (CSV or JSON)");
        sub->add_option("--method", cfg.method_arg, "method spec as JSON, or @file");
        sub->add_option("--format", cfg.format, "table | json | csv")->check(CLI::IsMember({"table", "json", "csv"}));
        sub->add_option("--out", cfg.out_path, "write the report to this file");
        if (liabilities) sub->add_option("--liabilities", cfg.liabilities_path, "liability cash flow (CSV or JSON)");
        if (shifts) {
            sub->add_option("--shifts", cfg.shifts, "number of random smooth shifts");
            sub->add_option("--seed", cfg.seed, "seed of the shift suite");
            sub->add_option("--parallel-bp", cfg.parallel_bp, "use one parallel shift of this many basis points");
            sub->add_option("--shift-file", cfg.shift_file, "use one shift from a 't,df' CSV file");
        }
    };
    auto* ext = app.add_subcommand("extrapolate", "sample zbar, fbar and Dbar and scan for defects");
    common(ext, false, false);
    ext->add_option("--grid", cfg.grid, "sampling step in years");
    ext->add_option("--step", cfg.step, "arbitrage scan step in years");
    auto* hed = app.add_subcommand("hedge", "solve the hedge equation");
    common(hed, true, true);
    hed->add_option("--fra-eps", cfg.fra_eps, "FRA accrual length for the overlay");
    auto* ver = app.add_subcommand("verify", "run the analytic-vs-numeric and hedge checks");
    common(ver, true, true);
    ver->add_option("--inject-fault", cfg.inject_fault)->group("");
    auto* sen = app.add_subcommand("sensitivity", "UFR sensitivity with bounds and oracle");
    common(sen, true, false);
    sen->add_option("--sweep-alpha", cfg.sweep_alpha, "alpha values for a Smith-Wilson sweep")->delimiter(',');
    auto* scan = app.add_subcommand("scan-arbitrage", "report negative forwards and non-positive discount factors");
    common(scan, false, false);
    scan->add_option("--step", cfg.step, "scan step in years");
    scan->add_option("--from", cfg.scan_from, "scan start");
    scan->add_option("--to", cfg.scan_to, "scan end (default: horizon)");

    try {
        std::vector<std::string> reversed(args.rbegin(), args.rend());
        app.parse(reversed);
    } catch (const CLI::CallForHelp&) {
        out << app.help();
        return kOk;
    } catch (const CLI::CallForAllHelp&) {
        out << app.help("", CLI::AppFormatMode::All);
        return kOk;
    } catch (const CLI::ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }

    int code = kOk;
    std::string report, failed;
    try {
        if (ext->parsed()) report = cmd_extrapolate(cfg, code);
        else if (hed->parsed()) report = cmd_hedge(cfg);
        else if (ver->parsed()) report = cmd_verify(cfg, code, failed);
        else if (sen->parsed()) report = cmd_sensitivity(cfg);
        else if (scan->parsed()) report = cmd_scan(cfg);
    } catch (const IoError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const ParseError& e) {
        err << "error: " << e.what() << "\n";
        return kIoError;
    } catch (const Error& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    } catch (const std::exception& e) {
        err << "error: " << e.what() << "\n";
        return kDomainError;
    }

    if (cfg.out_path.empty()) {
        out << report;
    } else {
        std::ofstream f(cfg.out_path, std::ios::binary);
        if (!f || !(f << report)) {
            err << "error: cannot write '" << cfg.out_path << "'\n";
            return kIoError;
        }
    }
    if (code == kDomainError) err << "error: the extrapolated curve is defective (see the arbitrage scan)\n";
    if (code == kVerificationFailed) err << "error: verification failed: " << failed << "\n";
    return code;
}

int main_entry(int argc, char** argv) {
    std::vector<std::string> args(argv + 1, argv + argc);
    return run(args, std::cout, std::cerr);
}

}  // namespace curvehedge::cli

#include "curvehedge/io.hpp"

#include "curvehedge/errors.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <cstdlib>
#include <fstream>
#include <sstream>

namespace curvehedge {

namespace {

std::string trim(std::string_view s) {
    std::size_t a = 0, b = s.size();
    while (a < b && std::isspace(static_cast<unsigned char>(s[a]))) ++a;
    while (b > a && std::isspace(static_cast<unsigned char>(s[b - 1]))) --b;
    return std::string(s.substr(a, b - a));
}

std::vector<std::string> split_csv(const std::string& line) {
    std::vector<std::string> out;
    std::string cell;
    std::istringstream in(line);
    while (std::getline(in, cell, ',')) out.push_back(trim(cell));
    if (!line.empty() && line.back() == ',') out.emplace_back();
    return out;
}

struct Row {
    std::size_t line;
    std::vector<std::string> cells;
};

// Non-empty, non-comment lines with their 1-based line numbers.
std::vector<Row> csv_rows(std::string_view text) {
    std::vector<Row> rows;
    std::size_t line_no = 0, pos = 0;
    while (pos <= text.size()) {
        const std::size_t end = std::min(text.find('\n', pos), text.size());
        ++line_no;
        std::string line = trim(text.substr(pos, end - pos));
        if (const auto hash = line.find('#'); hash != std::string::npos) line = trim(line.substr(0, hash));
        if (!line.empty()) rows.push_back({line_no, split_csv(line)});
        if (end == text.size()) break;
        pos = end + 1;
    }
    return rows;
}

[[noreturn]] void fail(std::string_view source, std::size_t line, const std::string& msg) {
    throw ParseError(std::string(source) + ":" + std::to_string(line) + ": " + msg);
}

double number(const std::string& cell, std::string_view source, std::size_t line) {
    if (cell.empty()) fail(source, line, "empty field");
    char* end = nullptr;
    const double v = std::strtod(cell.c_str(), &end);
    if (end != cell.c_str() + cell.size() || !std::isfinite(v)) fail(source, line, "not a number: '" + cell + "'");
    return v;
}

ForwardCurve curve_from_columns(const std::vector<double>& t, const std::vector<double>& v, bool forward) {
    if (t.size() < 1) throw ParseError("curve: no data rows");
    for (std::size_t i = 1; i < t.size(); ++i)
        if (!(t[i] > t[i - 1])) throw ParseError("curve: times must be strictly ascending");
    if (forward) {
        if (t.front() != 0.0) throw ParseError("curve: forward input must start at t = 0");
        if (t.size() < 2) throw ParseError("curve: forward input needs at least two nodes");
        return ForwardCurve(TimeGrid(t), v);
    }
    if (t.front() < 0.0) throw ParseError("curve: negative time");
    return ForwardCurve::from_zero_yields(t, v);
}

double get_number(const Json& j, const char* key, std::string_view where) {
    if (!j.contains(key) || !j.at(key).is_number())
        throw ParseError(std::string(where) + ": missing numeric field '" + key + "'");
    return j.at(key).get<double>();
}

std::vector<double> get_array(const Json& j, const char* key) {
    if (!j.at(key).is_array()) throw ParseError(std::string("field '") + key + "' must be an array");
    std::vector<double> out;
    for (const auto& x : j.at(key)) {
        if (!x.is_number()) throw ParseError(std::string("field '") + key + "' must hold numbers");
        out.push_back(x.get<double>());
    }
    return out;
}

bool ends_with(std::string_view s, std::string_view suffix) {
    return s.size() >= suffix.size() && s.substr(s.size() - suffix.size()) == suffix;
}

Json parse_json_text(const std::string& text, std::string_view source) {
    try {
        return Json::parse(text);
    } catch (const nlohmann::json::parse_error& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
}

Json optional_number(const std::optional<double>& v) { return v ? Json(*v) : Json(nullptr); }

Json finite_or_null(double v) { return std::isfinite(v) ? Json(v) : Json(nullptr); }

}  // namespace

ForwardCurve parse_curve_csv(std::string_view text, std::string_view source) {
    const auto rows = csv_rows(text);
    if (rows.empty()) throw ParseError(std::string(source) + ": empty curve file");
    const auto& head = rows.front();
    if (head.cells.size() != 2 || head.cells[0] != "t" || (head.cells[1] != "zero_yield" && head.cells[1] != "forward"))
        fail(source, head.line, "header must be 't,zero_yield' or 't,forward'");
    const bool forward = head.cells[1] == "forward";
    std::vector<double> t, v;
    for (std::size_t i = 1; i < rows.size(); ++i) {
        const auto& r = rows[i];
        if (r.cells.size() != 2) fail(source, r.line, "expected 2 fields");
        t.push_back(number(r.cells[0], source, r.line));
        v.push_back(number(r.cells[1], source, r.line));
        if (t.size() > 1 && !(t.back() > t[t.size() - 2])) fail(source, r.line, "times must be strictly ascending");
    }
    if (t.empty()) fail(source, head.line, "no data rows");
    try {
        return curve_from_columns(t, v, forward);
    } catch (const ParseError& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
}

ForwardCurve parse_curve_json(const Json& j) {
    if (!j.is_object() || !j.contains("t")) throw ParseError("curve JSON: expected an object with 't'");
    const bool forward = j.contains("forward");
    if (forward == j.contains("zero_yield")) throw ParseError("curve JSON: give exactly one of 'zero_yield' or 'forward'");
    const auto t = get_array(j, "t");
    const auto v = get_array(j, forward ? "forward" : "zero_yield");
    if (t.size() != v.size()) throw ParseError("curve JSON: column lengths differ");
    return curve_from_columns(t, v, forward);
}

CashFlow parse_cashflow_csv(std::string_view text, std::string_view source) {
    std::vector<Lump> lumps;
    std::vector<Density> dens;
    const auto rows = csv_rows(text);
    for (std::size_t i = 0; i < rows.size(); ++i) {
        const auto& r = rows[i];
        const std::string& kind = r.cells[0];
        if (i == 0 && kind != "lump" && kind != "density") continue;  // header
        if (kind == "lump") {
            if (r.cells.size() != 3) fail(source, r.line, "lump rows are 'lump,t,amount'");
            lumps.push_back({number(r.cells[1], source, r.line), number(r.cells[2], source, r.line)});
        } else if (kind == "density") {
            if (r.cells.size() != 4) fail(source, r.line, "density rows are 'density,a,b,rate'");
            dens.push_back({number(r.cells[1], source, r.line), number(r.cells[2], source, r.line),
                            number(r.cells[3], source, r.line)});
        } else {
            fail(source, r.line, "unknown row kind '" + kind + "'");
        }
    }
    try {
        return CashFlow(std::move(lumps), std::move(dens));
    } catch (const Error& e) {
        throw ParseError(std::string(source) + ": " + e.what());
    }
}

CashFlow parse_cashflow_json(const Json& j) {
    if (!j.is_object()) throw ParseError("cash-flow JSON: expected an object");
    std::vector<Lump> lumps;
    std::vector<Density> dens;
    if (j.contains("lumps"))
        for (const auto& l : j.at("lumps")) lumps.push_back({get_number(l, "t", "lump"), get_number(l, "amount", "lump")});
    if (j.contains("densities"))
        for (const auto& d : j.at("densities"))
            dens.push_back({get_number(d, "a", "density"), get_number(d, "b", "density"), get_number(d, "rate", "density")});
    return CashFlow(std::move(lumps), std::move(dens));
}

std::string read_text_file(const std::string& path) {
    std::ifstream in(path, std::ios::binary);
    if (!in) throw IoError("cannot open '" + path + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    if (in.bad()) throw IoError("error reading '" + path + "'");
    return ss.str();
}

ForwardCurve read_curve(const std::string& path) {
    const std::string text = read_text_file(path);
    if (ends_with(path, ".json")) {
        try {
            return parse_curve_json(parse_json_text(text, path));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    return parse_curve_csv(text, path);
}

CashFlow read_cashflow(const std::string& path) {
    const std::string text = read_text_file(path);
    if (ends_with(path, ".json")) {
        try {
            return parse_cashflow_json(parse_json_text(text, path));
        } catch (const nlohmann::json::exception& e) {
            throw ParseError(path + ": " + e.what());
        }
    }
    return parse_cashflow_csv(text, path);
}

MethodSpec method_spec_from_json(const Json& j) {
    if (!j.is_object()) throw ParseError("method: expected a JSON object");
    static const char* known[] = {"kind",     "tau",      "ufr",       "kappa",    "alpha",   "epsilon",
                                  "offset",   "horizon",  "sw_nodes",  "alpha_min", "alpha_max"};
    for (const auto& [key, _] : j.items())
        if (std::find_if(std::begin(known), std::end(known), [&](const char* k) { return key == k; }) == std::end(known))
            throw ParseError("method: unknown field '" + key + "'");
    if (!j.contains("kind") || !j.at("kind").is_string()) throw ParseError("method: missing 'kind'");
    MethodSpec s;
    s.kind = method_kind_from_string(j.at("kind").get<std::string>());
    s.tau = get_number(j, "tau", "method");
    auto opt = [&](const char* key) -> std::optional<double> {
        if (!j.contains(key) || j.at(key).is_null()) return std::nullopt;
        return get_number(j, key, "method");
    };
    s.ufr = opt("ufr");
    s.kappa = opt("kappa");
    s.alpha = opt("alpha");
    s.epsilon = opt("epsilon");
    if (auto v = opt("offset")) s.offset = *v;
    if (auto v = opt("horizon")) s.horizon = *v;
    if (auto v = opt("alpha_min")) s.alpha_min = *v;
    if (auto v = opt("alpha_max")) s.alpha_max = *v;
    if (j.contains("sw_nodes")) s.sw_nodes = get_array(j, "sw_nodes");
    s.validate();
    return s;
}

Json to_json(const MethodSpec& s) {
    Json j;
    j["kind"] = std::string(to_string(s.kind));
    j["tau"] = s.tau;
    if (s.ufr) j["ufr"] = *s.ufr;
    if (s.kappa) j["kappa"] = *s.kappa;
    if (s.alpha) j["alpha"] = *s.alpha;
    if (s.epsilon) j["epsilon"] = *s.epsilon;
    j["offset"] = s.offset;
    j["horizon"] = s.horizon;
    if (!s.sw_nodes.empty()) j["sw_nodes"] = s.sw_nodes;
    return j;
}

MethodSpec parse_method_argument(std::string_view arg) {
    std::string text;
    std::string source = "--method";
    if (!arg.empty() && arg.front() == '@') {
        source = std::string(arg.substr(1));
        text = read_text_file(source);
    } else {
        text = std::string(arg);
    }
    try {
        return method_spec_from_json(parse_json_text(text, source));
    } catch (const nlohmann::json::exception& e) {
        throw ParseError(source + ": " + e.what());
    }
}

Json to_json(const CashFlow& flow) {
    Json j;
    j["lumps"] = Json::array();
    for (const auto& l : flow.lumps()) j["lumps"].push_back({{"t", l.t}, {"amount", l.amount}});
    j["densities"] = Json::array();
    for (const auto& d : flow.densities()) j["densities"].push_back({{"a", d.a}, {"b", d.b}, {"rate", d.rate}});
    return j;
}

Json to_json(const DefectReport& report) {
    Json j = Json::array();
    for (const auto& i : report.intervals)
        j.push_back({{"kind", std::string(to_string(i.kind))}, {"a", i.a}, {"b", i.b}});
    return j;
}

Json to_json(const VariationReport& r) {
    Json j;
    j["order"] = r.order;
    j["analytic"] = finite_or_null(r.analytic);
    j["numeric"] = finite_or_null(r.numeric);
    j["raw"] = finite_or_null(r.raw);
    j["residual"] = finite_or_null(r.residual);
    j["error_estimate"] = finite_or_null(r.error_estimate);
    j["eps_schedule"] = r.eps_schedule;
    if (!r.remainders.empty()) j["remainders"] = r.remainders;
    if (r.antisymmetry_defect) {
        j["antisymmetry_defect"] = *r.antisymmetry_defect;
        j["nonlinear"] = r.nonlinear;
    }
    return j;
}

Json to_json(const HedgePlan& plan) {
    Json j;
    j["kind"] = std::string(to_string(plan.kind));
    j["method"] = std::string(to_string(plan.method));
    j["tau"] = plan.tau;
    j["lumps"] = Json::array();
    for (const auto& l : plan.lumps) j["lumps"].push_back({{"t", l.t}, {"amount", l.amount}});
    j["densities"] = Json::array();
    for (const auto& d : plan.densities) {
        HedgePlan one;
        one.densities.push_back(d);
        const double value = one.total_value();
        Json samples = Json::array();
        const int n = std::max(1, static_cast<int>(std::ceil((d.b - d.a) / 0.25 - 1e-9)));
        for (int k = 0; k <= n; ++k) {
            const double t = k == n ? d.b : d.a + 0.25 * k;
            samples.push_back({t, d.rate(t)});
        }
        j["densities"].push_back({{"a", d.a}, {"b", d.b}, {"rate", value / (d.b - d.a)}, {"value", value},
                                  {"samples", samples}});
    }
    const auto& g = plan.diagnostics;
    j["diagnostics"] = {{"liability_value", g.liability_value},
                        {"plan_value", g.plan_value},
                        {"leverage", g.leverage},
                        {"dz_tau_coefficient", g.dz_tau_coefficient},
                        {"df_tau_coefficient", g.df_tau_coefficient},
                        {"note", g.note}};
    return j;
}

Json to_json(const FraContract& f) {
    return {{"tau", f.tau},
            {"eps", f.eps},
            {"borrow_time", f.borrow_time},
            {"borrow_amount", f.borrow_amount},
            {"repay_amount", f.repay_amount}};
}

Json to_json(const InfeasibilityReport& r) {
    return {{"method", std::string(to_string(r.method))},
            {"tau", r.tau},
            {"bond_lump", r.bond_lump},
            {"forward_coefficient", r.forward_coefficient},
            {"fra", to_json(r.fra)},
            {"fra_units", r.fra_units},
            {"bond_only", to_json(r.bond_only)},
            {"with_overlay", to_json(r.with_overlay)}};
}

Json to_json(const UfrSensitivityReport& r) {
    Json j;
    j["method"] = std::string(to_string(r.method));
    j["S"] = r.S;
    j["lower"] = optional_number(r.lower);
    j["upper"] = optional_number(r.upper);
    j["oracle"] = r.oracle;
    j["rel_residual"] = r.rel_residual;
    j["oracle_only"] = r.oracle_only;
    j["liability_value"] = r.liability_value;
    return j;
}

std::string plan_lumps_csv(const HedgePlan& plan) {
    std::ostringstream out;
    out.precision(17);
    out << "t,amount\n";
    for (const auto& l : plan.lumps) out << l.t << ',' << l.amount << '\n';
    return out.str();
}

}  // namespace curvehedge

#pragma once

#include "curvehedge/arbitrage.hpp"
#include "curvehedge/cash_flow.hpp"
#include "curvehedge/forward_curve.hpp"
#include "curvehedge/hedging.hpp"
#include "curvehedge/method.hpp"
#include "curvehedge/sensitivity.hpp"
#include "curvehedge/variation.hpp"

#include <json.hpp>

#include <string>
#include <string_view>

namespace curvehedge {

using Json = nlohmann::ordered_json;

/// CSV with header `t,zero_yield` or `t,forward`; `#` starts a comment.
ForwardCurve parse_curve_csv(std::string_view text, std::string_view source = "<curve>");
/// `{"t": [...], "zero_yield": [...]}` or `{"t": [...], "forward": [...]}`.
ForwardCurve parse_curve_json(const Json& j);
/// Rows `lump,t,amount` or `density,a,b,rate`; an optional header row is skipped.
CashFlow parse_cashflow_csv(std::string_view text, std::string_view source = "<cashflow>");
/// `{"lumps": [{"t","amount"}], "densities": [{"a","b","rate"}]}`.
CashFlow parse_cashflow_json(const Json& j);

/// Reads a file; `.json` selects the JSON reader. Throws IoError naming the path.
std::string read_text_file(const std::string& path);
ForwardCurve read_curve(const std::string& path);
CashFlow read_cashflow(const std::string& path);

MethodSpec method_spec_from_json(const Json& j);
Json to_json(const MethodSpec& spec);
/// Inline JSON, or `@path` to read it from a file.
MethodSpec parse_method_argument(std::string_view arg);

Json to_json(const CashFlow& flow);
Json to_json(const DefectReport& report);
Json to_json(const VariationReport& report);
/// Densities are emitted with their average present-value rate and samples on a 0.25-year grid.
Json to_json(const HedgePlan& plan);
Json to_json(const FraContract& fra);
Json to_json(const InfeasibilityReport& report);
Json to_json(const UfrSensitivityReport& report);

/// Lump rows `t,amount` with a header.
std::string plan_lumps_csv(const HedgePlan& plan);

}  // namespace curvehedge

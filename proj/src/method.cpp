#include "curvehedge/method.hpp"

#include "curvehedge/errors.hpp"

#include <array>
#include <cmath>
#include <utility>

namespace curvehedge {

namespace {
constexpr std::array<std::pair<MethodKind, std::string_view>, 7> kNames{{
    {MethodKind::M1, "M1"},
    {MethodKind::M2, "M2"},
    {MethodKind::M3, "M3"},
    {MethodKind::M4, "M4"},
    {MethodKind::M5_SFSA, "M5_SFSA"},
    {MethodKind::M6_SW_continuous, "M6_SW_continuous"},
    {MethodKind::M6_SW_discrete, "M6_SW_discrete"},
}};
}  // namespace

std::string_view to_string(MethodKind kind) {
    for (const auto& [k, name] : kNames)
        if (k == kind) return name;
    return "unknown";
}

MethodKind method_kind_from_string(std::string_view name) {
    for (const auto& [k, n] : kNames)
        if (n == name) return k;
    throw DomainError("unknown method kind '" + std::string(name) + "'");
}

bool MethodSpec::has_ufr() const { return kind != MethodKind::M2 && kind != MethodKind::M4; }

double MethodSpec::ufr_value() const {
    if (!ufr) throw DomainError(std::string(to_string(kind)) + ": ufr required");
    return *ufr;
}

double MethodSpec::kappa_value() const {
    if (!kappa) throw DomainError(std::string(to_string(kind)) + ": kappa required");
    return *kappa;
}

double MethodSpec::alpha_value() const {
    if (!alpha) throw DomainError(std::string(to_string(kind)) + ": alpha required");
    return *alpha;
}

void MethodSpec::validate() const {
    const std::string name(to_string(kind));
    if (!(tau > 0.0) || !std::isfinite(tau)) throw DomainError(name + ": tau must be positive");
    if (!(horizon > tau)) throw DomainError(name + ": horizon must exceed tau");
    if (!std::isfinite(offset)) throw DomainError(name + ": offset must be finite");
    if (has_ufr() && (!ufr || !std::isfinite(*ufr))) throw DomainError(name + ": ufr required");
    if (kappa && !(*kappa > tau)) throw DomainError(name + ": kappa must exceed tau");
    if (kind == MethodKind::M5_SFSA) {
        if (!kappa) throw DomainError(name + ": kappa required");
        if (*kappa > horizon) throw DomainError(name + ": kappa beyond horizon");
    }
    if (alpha && !(*alpha > 0.0)) throw DomainError(name + ": alpha must be positive");
    if (epsilon && !(*epsilon > 0.0)) throw DomainError(name + ": epsilon must be positive");
    if (!(alpha_min > 0.0 && alpha_max > alpha_min)) throw DomainError(name + ": need 0 < alpha_min < alpha_max");
    if (kind == MethodKind::M6_SW_continuous && !alpha && !(kappa && epsilon))
        throw DomainError(name + ": alpha, or kappa and epsilon for calibration, required");
    if (kind == MethodKind::M6_SW_discrete && !alpha) throw DomainError(name + ": alpha required");
    for (double t : sw_nodes)
        if (!(t > 0.0 && t <= tau)) throw DomainError(name + ": Smith-Wilson nodes must lie in (0, tau]");
}

}  // namespace curvehedge

#pragma once

#include "curvehedge/time_grid.hpp"

#include <optional>
#include <string>
#include <string_view>
#include <vector>

namespace curvehedge {

enum class MethodKind {
    M1,                ///< predetermined zero yield beyond tau
    M2,                ///< constant zero yield z_tau beyond tau
    M3,                ///< predetermined forward rate beyond tau
    M4,                ///< constant forward f_tau beyond tau
    M5_SFSA,           ///< forward phased linearly into the UFR on (tau, kappa]
    M6_SW_continuous,  ///< Smith-Wilson conditioned on the whole curve up to tau
    M6_SW_discrete,    ///< Smith-Wilson fitted to finitely many discount factors
};

std::string_view to_string(MethodKind kind);
MethodKind method_kind_from_string(std::string_view name);

/// Parameters of one extrapolation method.
///
/// `alpha` may be left empty for the continuous Smith-Wilson method when
/// `kappa` and `epsilon` are given; it is then calibrated so that the
/// forward at kappa lies within epsilon of the UFR.
struct MethodSpec {
    MethodKind kind = MethodKind::M3;
    double tau = 0.0;
    std::optional<double> ufr;
    std::optional<double> kappa;
    std::optional<double> alpha;
    std::optional<double> epsilon;
    double offset = 0.0;
    double horizon = kDefaultHorizon;
    /// Discrete Smith-Wilson nodes; empty means the market grid nodes in (0, tau].
    std::vector<double> sw_nodes;
    double alpha_min = 1e-4;
    double alpha_max = 1.0;

    bool has_ufr() const;
    bool is_smith_wilson() const {
        return kind == MethodKind::M6_SW_continuous || kind == MethodKind::M6_SW_discrete;
    }
    double ufr_value() const;
    double kappa_value() const;
    double alpha_value() const;

    /// Throws DomainError on missing or inconsistent parameters.
    void validate() const;
};

}  // namespace curvehedge

#pragma once

#include <limits>
#include <string>

#include "dgch/grid.hpp"
#include "dgch/model.hpp"

namespace dgch {

struct EnergyBreakdown {
    double gradient_part = 0.0;   // int eps |grad u|^2 / (2 g)
    double potential_part = 0.0;  // int W / (eps g)
    double total = 0.0;
    bool singular = false;  // a cell with g ~ 0 carried a non-negligible gradient; total is +inf
};

/// Thresholds of the singular-evaluation rule. A cell with g < g_floor and
/// |grad u|^2 > grad_floor makes the energy +inf; a cell with g < g_floor and
/// |grad u|^2 <= grad_floor contributes nothing to the gradient part.
struct SingularThresholds {
    double g_floor;
    double grad_floor;
};

SingularThresholds singular_thresholds(const Grid& grid, CoefficientForm form, const ModelParamsd& m);

/// Cahn-Hilliard energy int (eps/2 |grad u|^2 + W(u)/eps).
EnergyBreakdown energy_ch_breakdown(const FieldXd& u, const ModelParamsd& m);
double energy_ch(const FieldXd& u, const ModelParamsd& m);

/// de Gennes-Cahn-Hilliard energy int (1/g(u)) (eps/2 |grad u|^2 + W(u)/eps).
EnergyBreakdown energy_dgch(const FieldXd& u, CoefficientForm form, const ModelParamsd& m);

/// Per-cell energy densities (gradient + potential). Cells hit by the
/// singular rule hold +inf, so the result is a raw array rather than a Field.
FieldXd::Values energy_density_ch(const FieldXd& u, const ModelParamsd& m);
FieldXd::Values energy_density_dgch(const FieldXd& u, CoefficientForm form, const ModelParamsd& m);

/// int W(u)/g(u) with the fused ratio; O(eps) along bounded-energy sequences.
double w_over_g_integral(const FieldXd& u, CoefficientForm form, const ModelParamsd& m);

/// AM-GM lower bound: lhs = sqrt(2) int (sqrt(W)/g) |grad u|, rhs = energy_dgch(u).total.
/// lhs <= rhs holds cellwise for the discrete energy.
struct LowerBound {
    double lhs = 0.0;
    double rhs = 0.0;
};
LowerBound bv_lower_bound(const FieldXd& u, CoefficientForm form, const ModelParamsd& m);

/// int |grad f| with |grad f| = sqrt(gradient_sq(f)).
double total_variation(const FieldXd& f);

/// Cellwise w = h_K(u) with the cut-off transform of the model module.
FieldXd cutoff_transform_field(const FieldXd& u, double K, const ModelParamsd& m);

/// Cellwise w = F(u) with the regularized transform of the model module.
FieldXd regularized_transform_field(const FieldXd& u, const ModelParamsd& m);

/// CSV serialization: epsilon,p,alpha,form,gradient_part,potential_part,total,singular
std::string energy_csv_header();
std::string energy_csv_row(const ModelParamsd& m, CoefficientForm form, const EnergyBreakdown& e);

}  // namespace dgch

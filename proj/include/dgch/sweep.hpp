#pragma once

#include <iosfwd>
#include <string>
#include <vector>

#include "dgch/energy.hpp"
#include "dgch/recovery.hpp"

namespace dgch {

/// Grid refinement rule for a sweep: each epsilon gets the same domain with
/// h <= width / cells_per_width, where width is that epsilon's profile width.
struct GridPolicy {
    Grid domain;
    double cells_per_width = 32.0;  // >= 8
    Index max_cells_per_axis = Index{1} << 16;

    void validate() const;
    Grid grid_for(double width) const;
};

struct SweepOptions {
    ProfileKind profile = ProfileKind::Equipartition;
    double cutoff_K = 10.0;
    int threads = 0;  // 0: DGCH_THREADS or the hardware count
};

struct SweepPoint {
    double epsilon = 0.0;
    double h = 0.0;
    Index cells = 0;
    double width = 0.0;
    EnergyBreakdown energy;
    double w_over_g = 0.0;
    double l1_gap = 0.0;
    LowerBound lower_bound;
    double transformed_variation = 0.0;  // int |grad w| with w = h_K(u), or F(u) for the regularized form
};

/// E(eps) = E0 + c eps^r.
struct PowerLawFit {
    double E0 = 0.0;
    double c = 0.0;
    double r = 0.0;
    double residual = 0.0;
};

/// Least squares fit of E0 + c x^r. r is searched on [r_min, r_max]; for a
/// fixed r the problem is linear in (E0, c).
PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, double r_min = 0.1,
                          double r_max = 4.0);

struct SweepReport {
    CoefficientForm form = CoefficientForm::SingularP;
    ModelParamsd params;
    double perimeter = 0.0;
    double sigma = 0.0;
    double target = 0.0;  // sigma * Per
    std::vector<SweepPoint> points;
    PowerLawFit fit;
    double rel_gap = 0.0;
    bool singular = false;
    int gap_monotonicity_violations = 0;  // steps where |E - target| / target did not decrease
    bool l1_strictly_decreasing = true;

    std::vector<double> w_over_g_constants() const;  // w_over_g / eps per point
};

/// Builds the recovery field at each eps of eps_list, evaluates the energy and
/// the compactness diagnostics, and extrapolates the limit from the last three
/// points. eps_list must be strictly decreasing with at least 3 entries.
/// Singular points are reported (report.singular) and make the fit NaN.
SweepReport gamma_sweep(const Region& region, const GridPolicy& policy, CoefficientForm form,
                        const ModelParamsd& params, const std::vector<double>& eps_list,
                        const SweepOptions& options = {});

/// Threads to use: `requested` if positive, else DGCH_THREADS, else the
/// hardware count; never more than `tasks`.
int resolve_threads(int requested, std::size_t tasks);

void write_sweep_csv(std::ostream& os, const SweepReport& report);

}  // namespace dgch

#include "dgch/sweep.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <atomic>
#include <cmath>
#include <cstdlib>
#include <limits>
#include <ostream>
#include <thread>

#include "dgch/field_io.hpp"

namespace dgch {

void GridPolicy::validate() const
{
    if (!(cells_per_width >= 8.0)) throw ConfigError("cells_per_width must be at least 8 (h <= width / 8)");
    if (max_cells_per_axis < 4) throw ConfigError("max_cells_per_axis must be at least 4");
}

Grid GridPolicy::grid_for(double width) const
{
    validate();
    const double target_h = width / cells_per_width;
    Index n[2] = {1, 1};
    for (int a = 0; a < domain.dim(); ++a) {
        n[a] = std::max<Index>(4, static_cast<Index>(std::ceil(domain.length(a) / target_h - 1e-9)));
        if (n[a] > max_cells_per_axis)
            throw ConfigError("sweep needs " + std::to_string(n[a]) + " cells per axis, above max_cells_per_axis");
    }
    if (domain.dim() == 1) return Grid::line(n[0], domain.length(0), domain.bc());
    return Grid::plane(n[0], n[1], domain.length(0), domain.length(1), domain.bc());
}

PowerLawFit fit_power_law(const std::vector<double>& x, const std::vector<double>& y, double r_min, double r_max)
{
    if (x.size() != y.size() || x.size() < 3) throw ConfigError("power-law fit needs at least 3 points");
    const auto n = static_cast<Index>(x.size());
    const double scale = *std::max_element(x.begin(), x.end());
    Eigen::VectorXd b(n);
    for (Index i = 0; i < n; ++i) b(i) = y[static_cast<std::size_t>(i)];

    auto solve = [&](double r) {
        Eigen::MatrixXd A(n, 2);
        for (Index i = 0; i < n; ++i) {
            A(i, 0) = 1.0;
            A(i, 1) = std::pow(x[static_cast<std::size_t>(i)] / scale, r);
        }
        const Eigen::Vector2d coef = A.colPivHouseholderQr().solve(b);
        PowerLawFit f;
        f.E0 = coef(0);
        f.c = coef(1) / std::pow(scale, r);
        f.r = r;
        f.residual = (A * coef - b).norm();
        return f;
    };

    constexpr int kScan = 400;
    PowerLawFit best = solve(r_min);
    int best_i = 0;
    for (int i = 1; i <= kScan; ++i) {
        const auto f = solve(r_min + (r_max - r_min) * i / kScan);
        if (f.residual < best.residual) {
            best = f;
            best_i = i;
        }
    }
    // golden-section refinement around the best scan point
    const double step = (r_max - r_min) / kScan;
    double lo = std::max(r_min, r_min + (best_i - 1) * step);
    double hi = std::min(r_max, r_min + (best_i + 1) * step);
    const double g = 0.5 * (std::sqrt(5.0) - 1.0);
    for (int it = 0; it < 80; ++it) {
        const double a = hi - g * (hi - lo);
        const double c = lo + g * (hi - lo);
        if (solve(a).residual < solve(c).residual)
            hi = c;
        else
            lo = a;
    }
    const auto refined = solve(0.5 * (lo + hi));
    return refined.residual <= best.residual ? refined : best;
}

std::vector<double> SweepReport::w_over_g_constants() const
{
    std::vector<double> c;
    for (const auto& p : points) c.push_back(p.w_over_g / p.epsilon);
    return c;
}

int resolve_threads(int requested, std::size_t tasks)
{
    int n = requested;
    if (n <= 0) {
        if (const char* env = std::getenv("DGCH_THREADS")) n = std::atoi(env);
    }
    if (n <= 0) n = static_cast<int>(std::max(1u, std::thread::hardware_concurrency()));
    return std::max(1, std::min<int>(n, static_cast<int>(tasks)));
}

namespace {

double effective_p(CoefficientForm form, const ModelParamsd& m)
{
    return form == CoefficientForm::SingularP ? m.p : 1.0;
}

SweepPoint evaluate_point(const Region& region, const GridPolicy& policy, CoefficientForm form,
                          const ModelParamsd& base, double eps, const SweepOptions& options)
{
    ModelParamsd m = base;
    m.epsilon = eps;
    const auto profile = build_profile(m, options.profile);
    const Grid grid = policy.grid_for(profile.width());
    const auto u = build_recovery_field(region, grid, profile);

    SweepPoint pt;
    pt.epsilon = eps;
    pt.h = grid.min_h();
    pt.cells = grid.cells();
    pt.width = profile.width();
    pt.energy = energy_dgch(u, form, m);
    pt.w_over_g = w_over_g_integral(u, form, m);
    pt.l1_gap = l1_gap(u, region, m);
    pt.lower_bound = bv_lower_bound(u, form, m);
    if (form == CoefficientForm::Regularized) {
        pt.transformed_variation = total_variation(regularized_transform_field(u, m));
    } else {
        ModelParamsd mp = m;
        mp.p = effective_p(form, m);
        pt.transformed_variation = total_variation(cutoff_transform_field(u, options.cutoff_K, mp));
    }
    return pt;
}

}  // namespace

SweepReport gamma_sweep(const Region& region, const GridPolicy& policy, CoefficientForm form,
                        const ModelParamsd& params, const std::vector<double>& eps_list, const SweepOptions& options)
{
    params.validate(form);
    policy.validate();
    validate_region(region, policy.domain);
    if (eps_list.size() < 3) throw ConfigError("eps_list needs at least 3 entries");
    for (std::size_t i = 0; i < eps_list.size(); ++i) {
        if (!(eps_list[i] > 0.0)) throw ConfigError("eps_list entries must be positive");
        if (i > 0 && !(eps_list[i] < eps_list[i - 1])) throw ConfigError("eps_list must be strictly decreasing");
    }
    if (!(options.cutoff_K > 0.0)) throw ConfigError("cutoff K must be positive");

    SweepReport rep;
    rep.form = form;
    rep.params = params;
    rep.perimeter = perimeter(region, policy.domain);
    rep.sigma = surface_tension(effective_p(form, params), params);
    rep.target = rep.sigma * rep.perimeter;
    rep.points.resize(eps_list.size());

    // Each point writes only its own slot, so the report does not depend on
    // scheduling.
    const int nthreads = resolve_threads(options.threads, eps_list.size());
    std::vector<std::exception_ptr> errors(eps_list.size());
    std::atomic<std::size_t> next{0};
    auto worker = [&] {
        for (std::size_t i = next++; i < eps_list.size(); i = next++) {
            try {
                rep.points[i] = evaluate_point(region, policy, form, params, eps_list[i], options);
            } catch (...) {
                errors[i] = std::current_exception();
            }
        }
    };
    if (nthreads == 1) {
        worker();
    } else {
        std::vector<std::thread> pool;
        for (int t = 0; t < nthreads; ++t) pool.emplace_back(worker);
        for (auto& t : pool) t.join();
    }
    for (const auto& e : errors)
        if (e) std::rethrow_exception(e);

    for (const auto& p : rep.points) rep.singular = rep.singular || p.energy.singular;

    double prev_gap = std::numeric_limits<double>::infinity();
    for (std::size_t i = 0; i < rep.points.size(); ++i) {
        const auto& p = rep.points[i];
        const double gap = std::abs(p.energy.total - rep.target) / rep.target;
        if (i > 0 && !(gap < prev_gap)) ++rep.gap_monotonicity_violations;
        if (i > 0 && !(p.l1_gap < rep.points[i - 1].l1_gap)) rep.l1_strictly_decreasing = false;
        prev_gap = gap;
    }

    if (rep.singular) {
        const double nan = std::numeric_limits<double>::quiet_NaN();
        rep.fit = {nan, nan, nan, nan};
        rep.rel_gap = nan;
        return rep;
    }
    std::vector<double> x, y;
    for (std::size_t i = rep.points.size() - 3; i < rep.points.size(); ++i) {
        x.push_back(rep.points[i].epsilon);
        y.push_back(rep.points[i].energy.total);
    }
    rep.fit = fit_power_law(x, y);
    rep.rel_gap = std::abs(rep.fit.E0 - rep.target) / rep.target;
    return rep;
}

void write_sweep_csv(std::ostream& os, const SweepReport& report)
{
    os << "epsilon,h,energy_total,gradient_part,potential_part,W_over_g_integral,L1_gap\n";
    for (const auto& p : report.points) {
        os << format_double(p.epsilon) << ',' << format_double(p.h) << ',' << format_double(p.energy.total) << ','
           << format_double(p.energy.gradient_part) << ',' << format_double(p.energy.potential_part) << ','
           << format_double(p.w_over_g) << ',' << format_double(p.l1_gap) << '\n';
    }
    os << '\n';
    os << "E0_fit,r_fit,target_sigma_Per,rel_gap\n";
    os << format_double(report.fit.E0) << ',' << format_double(report.fit.r) << ',' << format_double(report.target)
       << ',' << format_double(report.rel_gap) << '\n';
}

}  // namespace dgch

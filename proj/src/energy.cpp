#include "dgch/energy.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

#include "dgch/field_io.hpp"
#include "dgch/quadrature.hpp"

namespace dgch {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double effective_p(CoefficientForm form, const ModelParamsd& m)
{
    return form == CoefficientForm::SingularP ? m.p : 1.0;
}

struct Densities {
    FieldXd::Values gradient;
    FieldXd::Values potential;
    bool singular = false;
};

Densities densities(const FieldXd& u, CoefficientForm form, const ModelParamsd& m)
{
    const auto G = gradient_sq(u);
    const auto& v = u.values();
    const auto& g2 = G.values();
    const auto thr = singular_thresholds(u.grid(), form, m);
    Densities d;
    d.gradient.resize(v.size());
    d.potential.resize(v.size());
    for (Index k = 0; k < v.size(); ++k) {
        const double g = coefficient(v(k), form, m);
        d.potential(k) = potential_over_coefficient(v(k), form, m) / m.epsilon;
        if (g < thr.g_floor) {
            if (g2(k) > thr.grad_floor) {
                d.gradient(k) = kInf;
                d.singular = true;
            } else {
                d.gradient(k) = 0.0;
            }
        } else {
            d.gradient(k) = 0.5 * m.epsilon * g2(k) / g;
        }
    }
    return d;
}

EnergyBreakdown summarize(const Grid& grid, const Densities& d)
{
    EnergyBreakdown e;
    e.potential_part = integrate(grid, d.potential);
    e.singular = d.singular;
    if (d.singular) {
        e.gradient_part = kInf;
        e.total = kInf;
    } else {
        e.gradient_part = integrate(grid, d.gradient);
        e.total = e.gradient_part + e.potential_part;
    }
    return e;
}

}  // namespace

SingularThresholds singular_thresholds(const Grid& grid, CoefficientForm form, const ModelParamsd& m)
{
    const double span = m.span();
    const double p = effective_p(form, m);
    const double h = grid.min_h();
    return {1e-12 * std::pow(span, 2.0 * p), 1e-12 * (span / h) * (span / h)};
}

FieldXd::Values energy_density_ch(const FieldXd& u, const ModelParamsd& m)
{
    const auto G = gradient_sq(u);
    return u.values().unaryExpr([&](double x) { return potential(x, m) / m.epsilon; }) +
           0.5 * m.epsilon * G.values();
}

EnergyBreakdown energy_ch_breakdown(const FieldXd& u, const ModelParamsd& m)
{
    const auto G = gradient_sq(u);
    const FieldXd::Values pot = u.values().unaryExpr([&](double x) { return potential(x, m) / m.epsilon; });
    const FieldXd::Values grad = 0.5 * m.epsilon * G.values();
    EnergyBreakdown e;
    e.gradient_part = integrate(u.grid(), grad);
    e.potential_part = integrate(u.grid(), pot);
    e.total = e.gradient_part + e.potential_part;
    return e;
}

double energy_ch(const FieldXd& u, const ModelParamsd& m) { return energy_ch_breakdown(u, m).total; }

EnergyBreakdown energy_dgch(const FieldXd& u, CoefficientForm form, const ModelParamsd& m)
{
    return summarize(u.grid(), densities(u, form, m));
}

FieldXd::Values energy_density_dgch(const FieldXd& u, CoefficientForm form, const ModelParamsd& m)
{
    auto d = densities(u, form, m);
    return d.gradient + d.potential;
}

double w_over_g_integral(const FieldXd& u, CoefficientForm form, const ModelParamsd& m)
{
    const FieldXd::Values r = u.values().unaryExpr([&](double x) { return potential_over_coefficient(x, form, m); });
    return integrate(u.grid(), r);
}

LowerBound bv_lower_bound(const FieldXd& u, CoefficientForm form, const ModelParamsd& m)
{
    const auto G = gradient_sq(u);
    const auto& v = u.values();
    const auto thr = singular_thresholds(u.grid(), form, m);
    FieldXd::Values density(v.size());
    for (Index k = 0; k < v.size(); ++k) {
        // sqrt(W)/g is unbounded at the pure phases for p > 1; cells the
        // singular rule drops from the gradient part carry no density either
        if (G(k) == 0.0 || (coefficient(v(k), form, m) < thr.g_floor && G(k) <= thr.grad_floor))
            density(k) = 0.0;
        else
            density(k) = std::sqrt(2.0) * sqrt_potential_over_coefficient(v(k), form, m) * std::sqrt(G(k));
    }
    LowerBound b;
    b.lhs = integrate(u.grid(), density);
    b.rhs = energy_dgch(u, form, m).total;
    if (!std::isfinite(b.lhs)) b.lhs = kInf;
    return b;
}

double total_variation(const FieldXd& f)
{
    const auto G = gradient_sq(f);
    return integrate(f.grid(), G.values().sqrt().eval());
}

namespace {

// For a monotone transform T(t) = T(u-) + int_{u-}^t f: sort the cell values
// and accumulate the integral between neighbours instead of integrating from
// u- per cell.
template <typename F>
FieldXd accumulate_transform(const FieldXd& u, double start, double first, F&& integrand)
{
    const auto& v = u.values();
    std::vector<Index> order(static_cast<std::size_t>(v.size()));
    std::iota(order.begin(), order.end(), Index{0});
    std::sort(order.begin(), order.end(), [&](Index a, Index b) { return v(a) < v(b); });

    const QuadratureOptions opt{1e-14, 1e-12, 2000};
    FieldXd::Values w(v.size());
    double prev_u = v(order.front());
    double prev_w = first;
    for (const Index k : order) {
        const double x = v(k);
        if (x != prev_u) {
            // below u- the transform is constant (0)
            if (x > start) prev_w += integrate_adaptive(integrand, std::max(prev_u, start), x, opt).value;
            prev_u = x;
        }
        w(k) = prev_w;
    }
    return FieldXd(u.grid(), std::move(w));
}

}  // namespace

FieldXd cutoff_transform_field(const FieldXd& u, double K, const ModelParamsd& m)
{
    const double e = 1.0 - m.p;
    const double scale = std::sqrt(2.0 * m.gamma);
    const double first = cutoff_transform(u.values().minCoeff(), K, m);
    return accumulate_transform(u, m.u_minus, first, [&](double s) {
        const double aq = std::abs((s - m.u_minus) * (s - m.u_plus));
        return scale * std::min(std::pow(aq, e), K);
    });
}

FieldXd regularized_transform_field(const FieldXd& u, const ModelParamsd& m)
{
    const double shift = m.alpha * m.epsilon * m.epsilon;
    const double first = regularized_transform(u.values().minCoeff(), m);
    return accumulate_transform(u, m.u_minus, first, [&](double t) {
        const double q = (t - m.u_minus) * (t - m.u_plus);
        return std::sqrt(2.0 * m.gamma * q * q / (q * q + shift));
    });
}

std::string energy_csv_header() { return "epsilon,p,alpha,form,gradient_part,potential_part,total,singular"; }

std::string energy_csv_row(const ModelParamsd& m, CoefficientForm form, const EnergyBreakdown& e)
{
    return format_double(m.epsilon) + "," + format_double(m.p) + "," + format_double(m.alpha) + "," +
           std::string(to_string(form)) + "," + format_double(e.gradient_part) + "," +
           format_double(e.potential_part) + "," + format_double(e.total) + "," + (e.singular ? "1" : "0");
}

}  // namespace dgch

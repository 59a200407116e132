#pragma once

#include <algorithm>
#include <array>
#include <cmath>
#include <limits>
#include <utility>
#include <vector>

namespace dgch {

struct QuadratureResult {
    double value = 0.0;
    double error = 0.0;  // estimated absolute error
    int intervals = 0;
    bool converged = true;
};

struct QuadratureOptions {
    double abs_tol = 1e-12;
    double rel_tol = 1e-12;
    int max_intervals = 4000;
};

namespace detail {

// Gauss-Kronrod 7/15 nodes and weights on [-1, 1] (QUADPACK qk15).
inline constexpr std::array<double, 8> kXgk = {
    0.991455371120812639206854697526329, 0.949107912342758524526189684047851,
    0.864864423359769072789712788640926, 0.741531185599394439863864773280788,
    0.586087235467691130294144845693013, 0.405845151377397166906606412076961,
    0.207784955007898467600689403773245, 0.000000000000000000000000000000000};
inline constexpr std::array<double, 8> kWgk = {
    0.022935322010529224963732008058970, 0.063092092629978553290700663189204,
    0.104790010322250183839876322541518, 0.140653259715525918745189590510238,
    0.169004726639267902826583426598550, 0.190350578064785409913256402421014,
    0.204432940075298892414161999234649, 0.209482141084727828012999174891714};
inline constexpr std::array<double, 4> kWg = {
    0.129484966168869693270611432679082, 0.279705391489276667901467771423780,
    0.381830050505118944950369775488975, 0.417959183673469387755102040816327};

struct Segment {
    double a, b, value, error;
};

template <typename F>
Segment gauss_kronrod_15(F&& f, double a, double b)
{
    const double center = 0.5 * (a + b);
    const double half = 0.5 * (b - a);
    const double fc = f(center);
    double kronrod = fc * kWgk[7];
    double gauss = fc * kWg[3];
    for (int j = 0; j < 7; ++j) {
        const double dx = half * kXgk[j];
        const double f1 = f(center - dx);
        const double f2 = f(center + dx);
        kronrod += kWgk[j] * (f1 + f2);
        if (j % 2 == 1) gauss += kWg[j / 2] * (f1 + f2);
    }
    return {a, b, kronrod * half, std::abs((kronrod - gauss) * half)};
}

}  // namespace detail

/// Globally adaptive Gauss-Kronrod (7/15) quadrature of f over [a, b].
///
/// The segment with the largest error estimate is bisected until the summed
/// estimate drops below max(abs_tol, rel_tol * |I|). The integrand is never
/// evaluated at the endpoints, so integrable endpoint singularities are
/// tolerated; for fast convergence use a desingularizing substitution
/// (see integrate_with_endpoint_powers).
template <typename F>
QuadratureResult integrate_adaptive(F&& f, double a, double b, const QuadratureOptions& opt = {})
{
    QuadratureResult out;
    if (a == b) return out;
    double sign = 1.0;
    if (b < a) {
        std::swap(a, b);
        sign = -1.0;
    }

    auto by_error = [](const detail::Segment& x, const detail::Segment& y) { return x.error < y.error; };
    std::vector<detail::Segment> heap;
    heap.reserve(64);
    heap.push_back(detail::gauss_kronrod_15(f, a, b));

    double total = heap.front().value;
    double err = heap.front().error;
    while (err > std::max(opt.abs_tol, opt.rel_tol * std::abs(total))) {
        if (static_cast<int>(heap.size()) >= opt.max_intervals) {
            out.converged = false;
            break;
        }
        std::pop_heap(heap.begin(), heap.end(), by_error);
        const detail::Segment worst = heap.back();
        heap.pop_back();
        const double mid = 0.5 * (worst.a + worst.b);
        if (!(mid > worst.a && mid < worst.b)) {
            // interval exhausted at double resolution
            heap.push_back(worst);
            std::push_heap(heap.begin(), heap.end(), by_error);
            out.converged = false;
            break;
        }
        const auto left = detail::gauss_kronrod_15(f, worst.a, mid);
        const auto right = detail::gauss_kronrod_15(f, mid, worst.b);
        heap.push_back(left);
        std::push_heap(heap.begin(), heap.end(), by_error);
        heap.push_back(right);
        std::push_heap(heap.begin(), heap.end(), by_error);

        // re-sum instead of incremental update to avoid drift
        total = 0.0;
        err = 0.0;
        for (const auto& s : heap) {
            total += s.value;
            err += s.error;
        }
    }

    // fixed summation order for reproducibility
    std::sort(heap.begin(), heap.end(), [](const auto& x, const auto& y) { return x.a < y.a; });
    total = 0.0;
    err = 0.0;
    for (const auto& s : heap) {
        total += s.value;
        err += s.error;
    }
    out.value = sign * total;
    out.error = err;
    out.intervals = static_cast<int>(heap.size());
    return out;
}

/// Integrates f over [a, b] where f behaves like (x-a)^left_power near a and
/// (b-x)^right_power near b (powers > -1).
///
/// Each half of the interval is mapped through x - a = t^m with m = 1/(1+power),
/// which turns the power-law endpoint behaviour into a bounded smooth
/// integrand before adaptive Gauss-Kronrod is applied.
template <typename F>
QuadratureResult integrate_with_endpoint_powers(F&& f, double a, double b, double left_power,
                                                double right_power, const QuadratureOptions& opt = {})
{
    const double mid = 0.5 * (a + b);
    QuadratureResult out;

    auto half = [&](double endpoint, double other, double power, double direction) {
        const double m = 1.0 / (1.0 + power);
        const double length = std::abs(other - endpoint);
        const double t_end = std::pow(length, 1.0 / m);
        auto mapped = [&](double t) {
            const double offset = std::pow(t, m);
            return f(endpoint + direction * offset) * m * std::pow(t, m - 1.0);
        };
        return integrate_adaptive(mapped, 0.0, t_end, opt);
    };

    const auto left = half(a, mid, left_power, +1.0);
    const auto right = half(b, mid, right_power, -1.0);
    out.value = left.value + right.value;
    out.error = left.error + right.error;
    out.intervals = left.intervals + right.intervals;
    out.converged = left.converged && right.converged;
    return out;
}

}  // namespace dgch

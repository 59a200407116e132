#include "dgch/model.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

#include "dgch/quadrature.hpp"

namespace dgch {

std::string_view to_string(CoefficientForm form)
{
    switch (form) {
    case CoefficientForm::SingularP: return "singular";
    case CoefficientForm::SingularOne: return "singular_one";
    case CoefficientForm::Regularized: return "regularized";
    }
    return "unknown";
}

CoefficientForm coefficient_form_from_string(std::string_view name)
{
    if (name == "singular" || name == "singular_p") return CoefficientForm::SingularP;
    if (name == "singular_one") return CoefficientForm::SingularOne;
    if (name == "regularized") return CoefficientForm::Regularized;
    throw ConfigError("unknown coefficient form '" + std::string(name) + "'");
}

namespace {

constexpr QuadratureOptions kTight{1e-13, 1e-13, 20000};

double check_quadrature(const QuadratureResult& r, const char* what)
{
    if (!r.converged && r.error > 1e-10 * std::max(1.0, std::abs(r.value)))
        throw Error(std::string(what) + ": quadrature did not reach tolerance");
    return r.value;
}

}  // namespace

double surface_tension(double p, const ModelParamsd& m)
{
    if (!(p < 2.0)) throw DomainError("surface tension integral diverges for p >= 2");
    const double a = m.u_minus;
    const double b = m.u_plus;
    const double e = 1.0 - p;
    auto integrand = [&](double s) { return std::pow((s - a) * (b - s), e); };
    const auto r = integrate_with_endpoint_powers(integrand, a, b, e, e, kTight);
    return std::sqrt(2.0 * m.gamma) * check_quadrature(r, "surface_tension");
}

double surface_tension_closed_form(double p, const ModelParamsd& m)
{
    if (!(p < 2.0)) throw DomainError("surface tension integral diverges for p >= 2");
    return std::sqrt(2.0 * m.gamma) * std::pow(m.span(), 3.0 - 2.0 * p) * std::beta(2.0 - p, 2.0 - p);
}

double cutoff_transform(double t, double K, const ModelParamsd& m)
{
    if (!(K > 0.0)) throw DomainError("cutoff_transform requires K > 0");
    const double a = m.u_minus;
    const double b = m.u_plus;
    const double e = 1.0 - m.p;
    if (t <= a) return 0.0;

    auto integrand = [&](double s) {
        const double aq = std::abs((s - a) * (s - b));
        return std::min(std::pow(aq, e), K);
    };

    // Breakpoints where |q|^(1-p) crosses K; the integrand has kinks there.
    std::vector<double> cuts{a};
    if (e != 0.0) {
        const double level = std::pow(K, 1.0 / e);  // |q| value at the crossing
        const double half = 0.5 * (b - a);
        if (level < half * half) {
            const double offset = std::sqrt(half * half - level);
            const double mid = 0.5 * (a + b);
            cuts.push_back(mid - offset);
            cuts.push_back(mid + offset);
        }
    }
    cuts.push_back(b);

    double total = 0.0;
    const double upper = t;
    for (std::size_t i = 0; i + 1 < cuts.size() && cuts[i] < upper; ++i) {
        const double lo = cuts[i];
        const double hi = std::min(cuts[i + 1], upper);
        if (hi > lo) total += check_quadrature(integrate_adaptive(integrand, lo, hi, kTight), "cutoff_transform");
    }
    if (upper > b) {
        if (e != 0.0) {
            const double level = std::pow(K, 1.0 / e);
            // outside [a, b], |q| grows monotonically; split where it reaches the cut level
            const double mid = 0.5 * (a + b);
            const double half = 0.5 * (b - a);
            const double cross = mid + std::sqrt(half * half + level);
            if (cross < upper) {
                total += check_quadrature(integrate_adaptive(integrand, b, cross, kTight), "cutoff_transform");
                total += check_quadrature(integrate_adaptive(integrand, cross, upper, kTight), "cutoff_transform");
            } else {
                total += check_quadrature(integrate_adaptive(integrand, b, upper, kTight), "cutoff_transform");
            }
        } else {
            total += check_quadrature(integrate_adaptive(integrand, b, upper, kTight), "cutoff_transform");
        }
    }
    return std::sqrt(2.0 * m.gamma) * total;
}

double regularized_transform(double s, const ModelParamsd& m)
{
    if (!(m.alpha > 0.0) || !(m.epsilon > 0.0))
        throw DomainError("regularized_transform requires alpha > 0 and epsilon > 0");
    const double a = m.u_minus;
    if (s <= a) return 0.0;
    const double shift = m.alpha * m.epsilon * m.epsilon;
    auto integrand = [&](double t) {
        const double q = (t - m.u_minus) * (t - m.u_plus);
        return std::sqrt(2.0 * m.gamma * q * q / (q * q + shift));
    };
    // The integrand switches from 0 to sqrt(2 gamma) over a layer of width
    // ~sqrt(alpha) eps next to each pure phase; split there so the adaptive
    // rule resolves both layers.
    std::vector<double> cuts{a};
    const double layer = 8.0 * std::sqrt(shift) / std::max(m.span(), 1e-300);
    if (a + layer < m.u_plus - layer) {
        cuts.push_back(a + layer);
        cuts.push_back(m.u_plus - layer);
    }
    cuts.push_back(m.u_plus);
    double total = 0.0;
    for (std::size_t i = 0; i + 1 < cuts.size() && cuts[i] < s; ++i) {
        const double hi = std::min(cuts[i + 1], s);
        total += check_quadrature(integrate_adaptive(integrand, cuts[i], hi, kTight), "regularized_transform");
    }
    if (s > m.u_plus)
        total += check_quadrature(integrate_adaptive(integrand, m.u_plus, s, kTight), "regularized_transform");
    return total;
}

}  // namespace dgch

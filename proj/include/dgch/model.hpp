#pragma once

#include <cmath>
#include <string>
#include <string_view>

#include "dgch/errors.hpp"

namespace dgch {

/// Selects the de Gennes coefficient g(u) weighting the energy density.
enum class CoefficientForm {
    SingularP,    // g0(u) = |q(u)|^p
    SingularOne,  // g0(u) = |q(u)|, the p = 1 member of SingularP
    Regularized,  // g_alpha(u) = sqrt(q(u)^2 + alpha^2 eps^2)
};

std::string_view to_string(CoefficientForm form);
CoefficientForm coefficient_form_from_string(std::string_view name);

inline bool is_singular(CoefficientForm form) { return form != CoefficientForm::Regularized; }

/// Parameters of the energy family. Defaults are the symmetric double well
/// with pure phases -1 and +1.
template <typename Scalar>
struct ModelParams {
    Scalar u_minus = Scalar(-1);
    Scalar u_plus = Scalar(1);
    Scalar gamma = Scalar(1);
    Scalar p = Scalar(1);
    Scalar alpha = Scalar(1);
    Scalar epsilon = Scalar(0.1);

    Scalar span() const { return u_plus - u_minus; }
    Scalar midpoint() const { return Scalar(0.5) * (u_plus + u_minus); }

    /// Throws ConfigError if the parameters are invalid for `form`.
    void validate(CoefficientForm form) const
    {
        using std::isfinite;
        if (!(isfinite(u_minus) && isfinite(u_plus) && isfinite(gamma) && isfinite(p) && isfinite(alpha) &&
              isfinite(epsilon)))
            throw ConfigError("model parameters must be finite");
        if (!(u_minus < u_plus)) throw ConfigError("u_minus must be smaller than u_plus");
        if (gamma < Scalar(0)) throw ConfigError("gamma must be non-negative");
        if (!(epsilon > Scalar(0))) throw ConfigError("epsilon must be positive");
        if (alpha < Scalar(0)) throw ConfigError("alpha must be non-negative");
        switch (form) {
        case CoefficientForm::SingularP:
            // p = 0 is admitted: it is the plain Cahn-Hilliard baseline (g = 1).
            if (p < Scalar(0) || p > Scalar(1.5)) throw ConfigError("singular form requires 0 <= p <= 3/2");
            break;
        case CoefficientForm::SingularOne:
            if (p != Scalar(1)) throw ConfigError("singular_one form requires p = 1");
            break;
        case CoefficientForm::Regularized:
            if (!(alpha > Scalar(0))) throw ConfigError("regularized form requires alpha > 0");
            break;
        }
    }
};

using ModelParamsd = ModelParams<double>;

/// Shared degeneracy factor q(u) = (u - u-)(u - u+).
template <typename Scalar>
Scalar degeneracy(Scalar u, const ModelParams<Scalar>& m)
{
    return (u - m.u_minus) * (u - m.u_plus);
}

/// Double-well potential W(u) = gamma (u - u+)^2 (u - u-)^2.
template <typename Scalar>
Scalar potential(Scalar u, const ModelParams<Scalar>& m)
{
    const Scalar q = degeneracy(u, m);
    return m.gamma * q * q;
}

template <typename Scalar>
Scalar potential_derivative(Scalar u, const ModelParams<Scalar>& m)
{
    return Scalar(2) * m.gamma * (u - m.u_plus) * (u - m.u_minus) * (Scalar(2) * u - m.u_plus - m.u_minus);
}

template <typename Scalar>
Scalar potential_second_derivative(Scalar u, const ModelParams<Scalar>& m)
{
    const Scalar q = degeneracy(u, m);
    const Scalar dq = Scalar(2) * u - m.u_plus - m.u_minus;
    return Scalar(2) * m.gamma * (dq * dq + Scalar(2) * q);
}

namespace detail {
template <typename Scalar>
Scalar singular_exponent(CoefficientForm form, const ModelParams<Scalar>& m)
{
    return form == CoefficientForm::SingularOne ? Scalar(1) : m.p;
}
}  // namespace detail

/// De Gennes coefficient g(u). Singular forms vanish exactly at u- and u+.
template <typename Scalar>
Scalar coefficient(Scalar u, CoefficientForm form, const ModelParams<Scalar>& m)
{
    using std::abs;
    using std::pow;
    using std::sqrt;
    const Scalar q = degeneracy(u, m);
    if (form == CoefficientForm::Regularized) {
        const Scalar ae = m.alpha * m.epsilon;
        return sqrt(q * q + ae * ae);
    }
    const Scalar p = detail::singular_exponent(form, m);
    if (p == Scalar(1)) return abs(q);
    return pow(abs(q), p);
}

/// g'(u) / g(u)^2, the factor multiplying the energy density in the chemical
/// potential. Singular forms are only defined strictly between the pure phases.
template <typename Scalar>
Scalar coefficient_derivative_over_square(Scalar u, CoefficientForm form, const ModelParams<Scalar>& m)
{
    using std::pow;
    const Scalar dq = Scalar(2) * u - m.u_plus - m.u_minus;
    const Scalar q = degeneracy(u, m);
    if (form == CoefficientForm::Regularized) {
        const Scalar g = coefficient(u, form, m);
        return q * dq / (g * g * g);
    }
    if (!(u > m.u_minus && u < m.u_plus))
        throw DomainError("g'/g^2 of the singular coefficient is undefined outside (u_minus, u_plus)");
    const Scalar p = detail::singular_exponent(form, m);
    const Scalar denom = pow((u - m.u_minus) * (m.u_plus - u), p + Scalar(1));
    return -p * dq / denom;
}

/// Fused W(u)/g(u). For singular forms this is gamma |q|^(2-p), the continuous
/// extension that vanishes at both pure phases.
template <typename Scalar>
Scalar potential_over_coefficient(Scalar u, CoefficientForm form, const ModelParams<Scalar>& m)
{
    using std::abs;
    using std::pow;
    if (form == CoefficientForm::Regularized) return potential(u, m) / coefficient(u, form, m);
    const Scalar aq = abs(degeneracy(u, m));
    const Scalar p = detail::singular_exponent(form, m);
    if (p == Scalar(1)) return m.gamma * aq;
    return m.gamma * pow(aq, Scalar(2) - p);
}

/// Fused sqrt(W(u))/g(u): sqrt(gamma) |q|^(1-p) for singular forms. Only
/// finite at the pure phases when p <= 1.
template <typename Scalar>
Scalar sqrt_potential_over_coefficient(Scalar u, CoefficientForm form, const ModelParams<Scalar>& m)
{
    using std::abs;
    using std::pow;
    using std::sqrt;
    const Scalar aq = abs(degeneracy(u, m));
    if (form == CoefficientForm::Regularized) return sqrt(m.gamma) * aq / coefficient(u, form, m);
    const Scalar p = detail::singular_exponent(form, m);
    if (p == Scalar(1)) return sqrt(m.gamma);
    return sqrt(m.gamma) * pow(aq, Scalar(1) - p);
}

/// Mobility q(u)^2, plus alpha*eps when regularized.
template <typename Scalar>
Scalar mobility(Scalar u, bool regularized, const ModelParams<Scalar>& m)
{
    const Scalar q = degeneracy(u, m);
    return regularized ? q * q + m.alpha * m.epsilon : q * q;
}

/// Limiting surface tension sqrt(2 gamma) * int_{u-}^{u+} |q(s)|^(1-p) ds by
/// endpoint-aware adaptive quadrature. Throws DomainError for p >= 2.
double surface_tension(double p, const ModelParamsd& m);

/// Beta-function closed form of surface_tension.
double surface_tension_closed_form(double p, const ModelParamsd& m);

/// Cut-off transform h_K(t) = sqrt(2 gamma) int_{u-}^t min(|q(s)|^(1-p), K) ds.
/// Uses m.p. Requires K > 0.
double cutoff_transform(double t, double K, const ModelParamsd& m);

/// Regularized transform F(s) = int_{u-}^s sqrt(2 gamma q^2 / (q^2 + alpha eps^2)) dt.
double regularized_transform(double s, const ModelParamsd& m);

}  // namespace dgch

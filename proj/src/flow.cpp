#include "dgch/flow.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace dgch {

namespace {

constexpr auto kForm = CoefficientForm::Regularized;
constexpr double kGrowth = 1.2;
constexpr double kEnergySlack = 1e-12;

double overshoot(const FieldXd& u, const ModelParamsd& m)
{
    const double above = u.values().maxCoeff() - m.u_plus;
    const double below = m.u_minus - u.values().minCoeff();
    return std::max({0.0, above, below});
}

double dt_cap(const FieldXd& u, const FlowConfig& c)
{
    return std::min(c.dt_init, c.safety * stability_limit(u, c.params));
}

}  // namespace

void FlowConfig::validate() const
{
    params.validate(kForm);
    if (!(params.alpha > 0.0)) throw ConfigError("the flow needs alpha > 0 (the singular flow is not supported)");
    if (!(dt_init > 0.0) || !std::isfinite(dt_init)) throw ConfigError("dt_init must be positive");
    if (!(dt_min > 0.0) || !(dt_min < dt_init)) throw ConfigError("dt_min must be positive and below dt_init");
    if (!(t_end >= 0.0) || !std::isfinite(t_end)) throw ConfigError("t_end must be non-negative");
    if (save_every < 1) throw ConfigError("save_every must be at least 1");
    if (!(safety > 0.0 && safety < 1.0)) throw ConfigError("safety must lie in (0, 1)");
}

FieldXd chemical_potential(const FieldXd& u, const ModelParamsd& m)
{
    const double eps = m.epsilon;
    const auto inv_g = u.map([&](double x) { return 1.0 / coefficient(x, kForm, m); });
    const auto div = divergence_of_flux(inv_g, u);
    const auto G = gradient_sq(u);
    const auto& v = u.values();
    FieldXd::Values mu(v.size());
    for (Index k = 0; k < v.size(); ++k) {
        const double x = v(k);
        const double W = potential(x, m);
        mu(k) = -eps * div(k) + potential_derivative(x, m) * inv_g(k) / eps -
                coefficient_derivative_over_square(x, kForm, m) * (0.5 * eps * G(k) + W / eps);
    }
    return FieldXd(u.grid(), std::move(mu));
}

FieldXd flow_rate(const FieldXd& u, const ModelParamsd& m)
{
    const auto mu = chemical_potential(u, m);
    const auto M = u.map([&](double x) { return mobility(x, true, m); });
    const auto div = divergence_of_flux(M, mu);
    return FieldXd(u.grid(), (div.values() / m.epsilon).eval());
}

double stability_limit(const FieldXd& u, const ModelParamsd& m)
{
    // Linearizing around u, the operator acts on a Fourier mode with discrete
    // Laplacian eigenvalue lambda <= sum_a 4/h_a^2 roughly as
    // (M/g) (lambda^2 + |W''| lambda / eps^2).
    const Grid& g = u.grid();
    double lambda = 0.0;
    for (int a = 0; a < g.dim(); ++a) lambda += 4.0 / (g.h(a) * g.h(a));
    double ratio = 0.0;
    double curv = 0.0;
    for (Index k = 0; k < u.size(); ++k) {
        const double x = u(k);
        ratio = std::max(ratio, mobility(x, true, m) / coefficient(x, kForm, m));
        curv = std::max(curv, std::abs(potential_second_derivative(x, m)));
    }
    const double rate = ratio * (lambda * lambda + curv * lambda / (m.epsilon * m.epsilon));
    return rate > 0.0 ? 2.0 / rate : std::numeric_limits<double>::infinity();
}

FlowState initial_state(const FieldXd& u0, const FlowConfig& config)
{
    config.validate();
    FlowState s;
    s.u = u0;
    s.carry = FieldXd::Values::Zero(u0.size());
    s.energy = energy_dgch(u0, kForm, config.params).total;
    s.mass = integrate(u0);
    s.overshoot = overshoot(u0, config.params);
    s.dt_next = dt_cap(u0, config);
    return s;
}

FlowState step(const FlowState& state, const FlowConfig& config)
{
    const auto& m = config.params;
    const auto rate = flow_rate(state.u, m);
    const double remaining = config.t_end - state.t;
    double dt = std::min(state.dt_next, remaining);
    int rejected = 0;
    while (true) {
        const FieldXd::Values y = dt * rate.values() + state.carry;
        const FieldXd::Values trial = state.u.values() + y;
        if (trial.allFinite()) {
            FieldXd u(state.u.grid(), trial);
            const double e = energy_dgch(u, kForm, m).total;
            if (std::isfinite(e) && e <= state.energy + kEnergySlack * std::abs(state.energy)) {
                FlowState next;
                next.t = dt == remaining ? config.t_end : state.t + dt;
                next.dt = dt;
                next.rejected = rejected;
                next.energy = e;
                next.mass = integrate(u);
                next.overshoot = overshoot(u, m);
                next.carry = y - (trial - state.u.values());
                next.dt_next = std::min(kGrowth * (rejected ? dt : state.dt_next), dt_cap(u, config));
                next.u = std::move(u);
                return next;
            }
        }
        dt *= 0.5;
        ++rejected;
        if (dt < config.dt_min) {
            std::ostringstream os;
            os << "time step fell below dt_min (" << config.dt_min << ") at t = " << state.t;
            throw StepFailure(os.str(), state);
        }
    }
}

FlowRun run(const FieldXd& u0, const FlowConfig& config, const std::function<void(const FlowState&)>& on_save)
{
    FlowRun out;
    auto save = [&](const FlowState& s) {
        out.trajectory.push_back(s);
        if (on_save) on_save(s);
    };
    FlowState s = initial_state(u0, config);
    const double mass0 = s.mass;
    const double scale = std::max(integrate(u0.grid(), u0.values().abs().eval()), std::numeric_limits<double>::min());
    save(s);
    Index since_save = 0;
    while (s.t < config.t_end) {
        FlowState next = step(s, config);
        out.stats.rejected += next.rejected;
        if (next.energy > s.energy) {
            ++out.stats.energy_increases;
            out.stats.max_energy_increase =
                std::max(out.stats.max_energy_increase, (next.energy - s.energy) / std::abs(s.energy));
            if (next.energy > s.energy + kEnergySlack * std::abs(s.energy)) out.stats.energy_non_increasing = false;
        }
        out.stats.max_mass_drift = std::max(out.stats.max_mass_drift, std::abs(next.mass - mass0) / scale);
        ++out.stats.accepted;
        s = std::move(next);
        if (++since_save == config.save_every && s.t < config.t_end) {
            save(s);
            since_save = 0;
        }
    }
    if (out.stats.accepted > 0) save(s);
    return out;
}

}  // namespace dgch

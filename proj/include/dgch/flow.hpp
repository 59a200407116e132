#pragma once

#include <functional>
#include <vector>

#include "dgch/energy.hpp"

namespace dgch {

/// Explicit time stepping of the regularized system
///   du/dt = (1/eps) div(M_alpha(u) grad mu),  mu = dE/du.
struct FlowConfig {
    ModelParamsd params;
    double dt_init = 1e-6;
    double t_end = 0.1;
    double dt_min = 1e-14;
    Index save_every = 1000;
    /// Fraction of the explicit stability estimate the step size may reach.
    double safety = 0.9;

    void validate() const;
};

struct FlowState {
    double t = 0.0;
    double dt = 0.0;       // size of the step that produced this state (0 for the initial state)
    double dt_next = 0.0;  // size the next step will try first
    int rejected = 0;      // trials rejected before this state was accepted
    FieldXd u;
    /// Low-order bits of u lost when increments were rounded into it
    /// (compensated summation keeps long runs conservative).
    FieldXd::Values carry;
    double energy = 0.0;
    double mass = 0.0;
    double overshoot = 0.0;  // max(0, max(u - u+), max(u- - u))
};

/// Thrown when dt would drop below dt_min; carries the last accepted state.
class StepFailure : public Error {
public:
    StepFailure(const std::string& what, FlowState last) : Error(what), last_(std::move(last)) {}
    const FlowState& last_state() const { return last_; }

private:
    FlowState last_;
};

/// mu = -eps div((1/g) grad u) + W'/(eps g) - (g'/g^2)(eps |grad u|^2 / 2 + W/eps)
/// with g = g_alpha. This is the exact gradient of the discrete regularized
/// energy divided by the cell volume.
FieldXd chemical_potential(const FieldXd& u, const ModelParamsd& m);

/// Right-hand side (1/eps) div(M_alpha grad mu).
FieldXd flow_rate(const FieldXd& u, const ModelParamsd& m);

/// Largest stable explicit step for the linearized operator at u (a
/// Gershgorin-type estimate).
double stability_limit(const FieldXd& u, const ModelParamsd& m);

FlowState initial_state(const FieldXd& u0, const FlowConfig& config);

/// One accepted step. A trial is accepted iff the new energy is at most
/// old + 1e-12 |old| and every value is finite; otherwise dt is halved.
/// After acceptance the next trial dt grows by 1.2, capped by dt_init and the
/// stability estimate. Never steps past t_end.
FlowState step(const FlowState& state, const FlowConfig& config);

struct FlowStats {
    Index accepted = 0;
    Index rejected = 0;
    double max_mass_drift = 0.0;  // |mass - mass0| / int |u0|
    /// Accepted steps whose evaluated energy rose at all, and the largest such
    /// rise relative to |E|. These are round-off in the energy sum.
    Index energy_increases = 0;
    double max_energy_increase = 0.0;
    /// Every accepted step satisfied E_next <= E + 1e-12 |E|, the acceptance
    /// rule's floating-point allowance.
    bool energy_non_increasing = true;
};

struct FlowRun {
    std::vector<FlowState> trajectory;  // initial, every save_every-th accepted state, final
    FlowStats stats;
};

/// Steps until t_end. `on_save` (optional) sees every saved state as it is
/// produced.
FlowRun run(const FieldXd& u0, const FlowConfig& config,
            const std::function<void(const FlowState&)>& on_save = {});

}  // namespace dgch

#include <doctest.h>

#include <cmath>
#include <random>

#include "dgch/flow.hpp"
#include "dgch/recovery.hpp"

using namespace dgch;

namespace {

ModelParamsd flow_params()
{
    ModelParamsd m;
    m.alpha = 1.0;
    m.epsilon = 0.05;
    return m;
}

FieldXd wavy(const Grid& g, double phase)
{
    return FieldXd::sample(g, [&](double x) { return 0.8 * std::sin(2 * M_PI * x / g.length(0) + phase); });
}

}  // namespace

TEST_CASE("chemical potential vanishes on the equilibria")
{
    const auto m = flow_params();
    for (auto g : {Grid::line(16, 1.0), Grid::square(8, 1.0, Boundary::Neumann)}) {
        CHECK(chemical_potential(FieldXd::constant(g, m.u_plus), m).values().abs().maxCoeff() == 0.0);
        CHECK(chemical_potential(FieldXd::constant(g, m.midpoint()), m).values().abs().maxCoeff() == 0.0);
    }
}

TEST_CASE("chemical potential is the gradient of the discrete energy")
{
    const auto m = flow_params();
    std::mt19937_64 rng(77);
    std::uniform_real_distribution<double> U(-1.1, 1.1);
    for (auto bc : {Boundary::Periodic, Boundary::Neumann}) {
        const auto g = Grid::line(32, 1.0, bc);
        FieldXd::Values v(g.cells());
        for (Index k = 0; k < v.size(); ++k) v(k) = U(rng);
        const FieldXd u(g, v);
        const auto mu = chemical_potential(u, m);
        const double delta = 1e-6;
        for (Index i : {0, 5, 17, 31}) {
            FieldXd::Values up = v, dn = v;
            up(i) += delta;
            dn(i) -= delta;
            const double fd = (energy_dgch(FieldXd(g, up), CoefficientForm::Regularized, m).total -
                               energy_dgch(FieldXd(g, dn), CoefficientForm::Regularized, m).total) /
                              (2 * delta * g.cell_volume());
            CHECK(std::abs(mu(i) - fd) <= 1e-5 * std::max(1.0, std::abs(fd)));
        }
    }
}

TEST_CASE("equilibria are fixed points of step")
{
    const auto m = flow_params();
    FlowConfig c;
    c.params = m;
    c.t_end = 1.0;
    for (double value : {m.u_plus, m.u_minus, m.midpoint()}) {
        const auto u = FieldXd::constant(Grid::line(16, 1.0), value);
        const auto s0 = initial_state(u, c);
        const auto s1 = step(s0, c);
        CHECK((s1.u.values() == u.values()).all());
        CHECK(s1.t > s0.t);
        CHECK(s1.energy == s0.energy);
    }
}

TEST_CASE("short runs dissipate and conserve mass")
{
    const auto m = flow_params();
    FlowConfig c;
    c.params = m;
    c.t_end = 2e-4;
    c.save_every = 50;
    for (auto bc : {Boundary::Periodic, Boundary::Neumann}) {
        const auto g = Grid::line(48, 1.0, bc);
        const auto r = run(wavy(g, 0.3), c);
        REQUIRE(r.trajectory.size() >= 2);
        CHECK(r.trajectory.back().t == c.t_end);
        CHECK(r.stats.energy_non_increasing);
        CHECK(r.stats.max_mass_drift <= 1e-12);
        for (std::size_t i = 1; i < r.trajectory.size(); ++i) {
            CHECK(r.trajectory[i].energy <= r.trajectory[i - 1].energy * (1 + 1e-12));
            CHECK(r.trajectory[i].t > r.trajectory[i - 1].t);
        }
        CHECK(r.trajectory.back().energy < r.trajectory.front().energy);
    }

    const auto g2 = Grid::square(12, 1.0, Boundary::Neumann);
    const auto u2 = FieldXd::sample(g2, [](double x, double y) { return 0.5 * std::cos(M_PI * x) * std::cos(M_PI * y); });
    c.t_end = 1e-4;
    const auto r2 = run(u2, c);
    CHECK(r2.stats.max_mass_drift <= 1e-12);
    CHECK(r2.trajectory.back().energy < r2.trajectory.front().energy);
}

TEST_CASE("run bookkeeping")
{
    FlowConfig c;
    c.params = flow_params();
    c.t_end = 0.0;
    const auto g = Grid::line(16, 1.0);
    const auto r = run(wavy(g, 0.0), c);
    CHECK(r.trajectory.size() == 1);
    CHECK(r.stats.accepted == 0);

    c.t_end = 1e-5;
    c.save_every = 3;
    std::vector<double> seen;
    const auto r2 = run(wavy(g, 0.0), c, [&](const FlowState& s) { seen.push_back(s.t); });
    CHECK(seen.size() == r2.trajectory.size());
    CHECK(r2.trajectory.front().t == 0.0);
    CHECK(r2.trajectory.back().t == c.t_end);
    CHECK(r2.trajectory.size() == static_cast<std::size_t>(1 + (r2.stats.accepted - 1) / 3 + 1));
}

TEST_CASE("overshoot diagnostic")
{
    FlowConfig c;
    c.params = flow_params();
    FieldXd::Values v = FieldXd::Values::Constant(8, 0.0);
    v(2) = 1.25;
    v(5) = -1.5;
    const auto s = initial_state(FieldXd(Grid::line(8, 1.0), v), c);
    CHECK(s.overshoot == doctest::Approx(0.5));
}

TEST_CASE("step failure carries the last state")
{
    FlowConfig c;
    c.params = flow_params();
    c.dt_init = 1.0;
    c.dt_min = 0.1;
    c.t_end = 10.0;
    auto s = initial_state(wavy(Grid::line(32, 1.0), 0.0), c);
    s.dt_next = 1.0;  // far beyond the explicit limit
    try {
        step(s, c);
        FAIL("expected a step failure");
    } catch (const StepFailure& e) {
        CHECK(e.last_state().t == s.t);
        CHECK((e.last_state().u.values() == s.u.values()).all());
    }
}

TEST_CASE("flow configuration")
{
    FlowConfig c;
    c.params = flow_params();
    CHECK_NOTHROW(c.validate());
    c.params.alpha = 0.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = FlowConfig{};
    c.params = flow_params();
    c.dt_min = c.dt_init;
    CHECK_THROWS_AS(c.validate(), ConfigError);
    c = FlowConfig{};
    c.params = flow_params();
    c.safety = 1.0;
    CHECK_THROWS_AS(c.validate(), ConfigError);
}

#include <doctest.h>

#include <cmath>
#include <numbers>

#include "dgch/energy.hpp"
#include "dgch/recovery.hpp"

using namespace dgch;

namespace {

// Composite Simpson for Phi(s) = int_{u-}^s eps / sqrt(2 (W + eps)); the
// integrand is smooth and bounded for eps > 0.
double phi_inverse_oracle(double s, const ModelParamsd& m, bool literal = false)
{
    const int n = 20000;
    const double a = m.u_minus;
    const double h = (s - a) / n;
    auto f = [&](double x) {
        const double W = potential(x, m);
        return m.epsilon / (literal ? std::sqrt(2.0 * W + m.epsilon) : std::sqrt(2.0 * (W + m.epsilon)));
    };
    double sum = f(a) + f(s);
    for (int i = 1; i < n; ++i) sum += (i % 2 ? 4.0 : 2.0) * f(a + i * h);
    return sum * h / 3.0;
}

}  // namespace

TEST_CASE("perimeters")
{
    const auto sq = Grid::square(8, 1.0);
    CHECK(perimeter(Region::disk(0.5, 0.5, 0.2), sq) == doctest::Approx(2 * std::numbers::pi * 0.2));
    CHECK(perimeter(Region::disk(0.5, 0.5, 0.2), sq) == doctest::Approx(1.2566371).epsilon(1e-7));
    CHECK(perimeter(Region::interval(0.25, 0.75), Grid::line(8, 1.0)) == 2.0);
    CHECK(perimeter(Region::rectangle(0.1, 0.2, 0.4, 0.9), sq) == doctest::Approx(2.0));
    CHECK(perimeter(Region::union_of({Region::disk(0.25, 0.5, 0.1), Region::disk(0.75, 0.5, 0.1)}), sq) ==
          doctest::Approx(0.4 * std::numbers::pi));
    CHECK_THROWS_AS(perimeter(Region::half_space(0, 0.5), sq), ConfigError);
    CHECK(perimeter(Region::half_space(0, 0.5), Grid::plane(8, 8, 1.0, 3.0, Boundary::Neumann)) ==
          doctest::Approx(3.0));
    CHECK(perimeter(Region::half_space(0, 0.5), Grid::line(8, 1.0, Boundary::Neumann)) == 1.0);
}

TEST_CASE("region validation")
{
    const auto sq = Grid::square(8, 1.0);
    CHECK_THROWS_AS(validate_region(Region::interval(0.2, 0.4), sq), ConfigError);
    CHECK_THROWS_AS(validate_region(Region::disk(0.5, 0.5, 0.5), sq), ConfigError);
    CHECK_THROWS_AS(validate_region(Region::disk(0.5, 0.5, -0.1), sq), ConfigError);
    CHECK_THROWS_AS(validate_region(Region::union_of({Region::disk(0.4, 0.5, 0.15), Region::disk(0.6, 0.5, 0.15)}), sq),
                    ConfigError);
    CHECK_THROWS_AS(
        validate_region(Region::union_of({Region::rectangle(0.1, 0.1, 0.5, 0.5), Region::disk(0.6, 0.6, 0.15)}), sq),
        ConfigError);
    CHECK_NOTHROW(
        validate_region(Region::union_of({Region::rectangle(0.1, 0.1, 0.3, 0.3), Region::disk(0.6, 0.6, 0.15)}), sq));
    CHECK(clearance(Region::disk(0.4, 0.5, 0.2), sq) == doctest::Approx(0.2));
}

TEST_CASE("signed distances")
{
    const auto d = Region::disk(0.5, 0.5, 0.2);
    CHECK(d.signed_distance(0.5, 0.5) == doctest::Approx(0.2));
    CHECK(d.signed_distance(0.7, 0.5) == doctest::Approx(0.0));
    CHECK(d.signed_distance(0.5, 0.8) == doctest::Approx(-0.1));

    const auto r = Region::rectangle(0.2, 0.2, 0.6, 0.8);
    CHECK(r.signed_distance(0.3, 0.5) == doctest::Approx(0.1));
    CHECK(r.signed_distance(0.7, 0.5) == doctest::Approx(-0.1));
    CHECK(r.signed_distance(0.9, 1.2) == doctest::Approx(-0.5));

    const auto i = Region::interval(0.25, 0.75);
    CHECK(i.signed_distance(0.5) == doctest::Approx(0.25));
    CHECK(i.signed_distance(0.1) == doctest::Approx(-0.15));

    const auto u = Region::union_of({Region::interval(0.1, 0.2), Region::interval(0.5, 0.9)});
    CHECK(u.signed_distance(0.3) == doctest::Approx(-0.1));
    CHECK(u.signed_distance(0.6) == doctest::Approx(0.1));

    const auto g = Grid::square(5, 1.0);
    const auto f = signed_distance(Region::disk(0.5, 0.5, 0.2), g);
    CHECK(f(g.index(2, 2)) == doctest::Approx(0.2));
}

TEST_CASE("shifted profile")
{
    for (double eps : {1e-1, 1e-2, 1e-3, 1e-4}) {
        ModelParamsd m;
        m.epsilon = eps;
        const auto pr = build_profile(m);
        CHECK(pr.inverse(m.u_minus) == 0.0);
        CHECK(pr(0.0) == m.u_minus);
        CHECK(pr(-1.0) == m.u_minus);
        CHECK(pr(pr.width()) == m.u_plus);
        CHECK(pr(2.0 * pr.width()) == m.u_plus);
        CHECK(pr.width() < std::sqrt(eps) * m.span());
        CHECK(pr.width() == doctest::Approx(phi_inverse_oracle(m.u_plus, m)).epsilon(1e-9));

        // interpolation error against the independent inverse
        double worst = 0.0;
        for (int k = 1; k < 400; ++k) {
            const double s = m.u_minus + m.span() * k / 400.0;
            worst = std::max(worst, std::abs(pr(phi_inverse_oracle(s, m)) - s));
        }
        CHECK(worst <= 1e-8 * m.span());

        double prev = m.u_minus;
        for (int k = 1; k < 1000; ++k) {
            const double v = pr(pr.width() * k / 1000.0);
            REQUIRE(v > prev);
            prev = v;
        }
    }
}

TEST_CASE("profile slope at the midpoint")
{
    ModelParamsd m;
    m.epsilon = 0.01;
    const auto pr = build_profile(m);
    const double t_mid = pr.inverse(0.0);
    const double d = 1e-4 * pr.width();
    const double fd = (pr(t_mid + d) - pr(t_mid - d)) / (2 * d);
    const double exact = std::sqrt(2.0 * (1.0 + m.epsilon)) / m.epsilon;
    CHECK(std::abs(fd - exact) / exact <= 1e-6);
    CHECK(pr.slope(t_mid) == doctest::Approx(exact).epsilon(1e-10));

    const auto lit = build_profile(m, ProfileKind::ShiftedLiteral);
    CHECK(lit.width() == doctest::Approx(phi_inverse_oracle(m.u_plus, m, true)).epsilon(1e-9));
    CHECK(lit.slope(lit.inverse(0.0)) == doctest::Approx(std::sqrt(2.0 + m.epsilon) / m.epsilon).epsilon(1e-10));
    CHECK_THROWS_AS(build_profile(m, ProfileKind::Shifted, 100), ConfigError);
}

TEST_CASE("equipartition profile")
{
    ModelParamsd m;
    m.epsilon = 0.02;
    const auto pr = build_profile(m, ProfileKind::Equipartition);
    const double kappa = std::sqrt(2.0) / m.epsilon;
    for (double t : {-0.05, -0.01, 0.0, 0.003, 0.04}) CHECK(pr(t) == doctest::Approx(std::tanh(kappa * t)));
    CHECK(pr.width() == doctest::Approx(2.0 * std::atanh(1.0 - 2e-3) / kappa));
    const auto [lo, hi] = pr.band();
    CHECK(pr(hi) == doctest::Approx(1.0 - 2e-3));
    CHECK(pr(lo) == doctest::Approx(-1.0 + 2e-3));
    CHECK(pr.inverse(0.5) == doctest::Approx(std::atanh(0.5) / kappa));
    // slope solves phi' = sqrt(2 W(phi)) / eps
    CHECK(pr.slope(0.01) == doctest::Approx(std::sqrt(2.0 * potential(pr(0.01), m)) / m.epsilon));
}

TEST_CASE("recovery fields")
{
    ModelParamsd m;
    m.epsilon = 1e-3;
    const auto g = Grid::square(200, 1.0);
    const auto region = Region::disk(0.5, 0.5, 0.2);
    const auto pr = build_profile(m);
    const auto u = build_recovery_field(region, g, pr);
    const auto d = signed_distance(region, g);
    CHECK(u(g.index(100, 100)) == m.u_plus);
    CHECK(u(g.index(2, 3)) == m.u_minus);
    for (Index k = 0; k < u.size(); ++k) {
        REQUIRE(u(k) >= m.u_minus);
        REQUIRE(u(k) <= m.u_plus);
        if (d(k) > pr.width()) REQUIRE(u(k) == m.u_plus);
        if (d(k) <= 0.0) REQUIRE(u(k) == m.u_minus);
    }

    m.epsilon = 0.01;
    CHECK_THROWS_AS(build_recovery_field(Region::disk(0.5, 0.5, 0.45), g, m), ConfigError);
}

TEST_CASE("L1 gap to the sharp field")
{
    const auto region = Region::interval(0.25, 0.75);
    double prev = INFINITY;
    for (double eps : {1e-2, 5e-3, 2.5e-3}) {
        ModelParamsd m;
        m.epsilon = eps;
        const auto pr = build_profile(m);
        const auto g = Grid::line(static_cast<Index>(std::ceil(16.0 / pr.width())), 1.0);
        const auto u = build_recovery_field(region, g, pr);
        const double gap = l1_gap(u, region, m);
        CHECK(gap <= m.span() * pr.width() * (2.0 + pr.width()));
        CHECK(gap < prev);
        prev = gap;
    }
}

TEST_CASE("shifted profile with a singular coefficient is flagged")
{
    // the shifted profile reaches u+ with a nonzero slope, so a cell at the
    // pure phase carries a gradient and the singular energy is +inf
    for (double p : {0.5, 1.0, 1.5}) {
        ModelParamsd m;
        m.p = p;
        m.epsilon = 2e-3;
        const auto pr = build_profile(m);
        const auto g = Grid::line(static_cast<Index>(std::ceil(32.0 / pr.width())), 1.0);
        const auto u = build_recovery_field(Region::interval(0.25, 0.75), g, pr);
        CHECK(energy_dgch(u, CoefficientForm::SingularP, m).singular);
        CHECK_FALSE(energy_dgch(u, CoefficientForm::Regularized, m).singular);
    }
}

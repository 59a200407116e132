#pragma once

#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "dgch/grid.hpp"
#include "dgch/model.hpp"

namespace dgch {

// ---------------------------------------------------------------------------
// Regions

/// {x : x[axis] >= offset}. Only meaningful with Neumann walls.
struct HalfSpace {
    int axis = 0;
    double offset = 0.0;
};

/// [a, b] on a 1D domain.
struct Interval {
    double a = 0.0;
    double b = 0.0;
};

struct Disk {
    double cx = 0.0;
    double cy = 0.0;
    double radius = 0.0;
};

/// Axis-aligned [x0, x1] x [y0, y1].
struct Rectangle {
    double x0 = 0.0;
    double y0 = 0.0;
    double x1 = 0.0;
    double y1 = 0.0;
};

/// The phase region A: a single primitive or a union of pairwise separated
/// primitives.
class Region {
public:
    using Primitive = std::variant<HalfSpace, Interval, Disk, Rectangle>;

    Region() = default;
    explicit Region(Primitive p) : members_{std::move(p)} {}

    static Region half_space(int axis, double offset) { return Region(HalfSpace{axis, offset}); }
    static Region interval(double a, double b) { return Region(Interval{a, b}); }
    static Region disk(double cx, double cy, double radius) { return Region(Disk{cx, cy, radius}); }
    static Region rectangle(double x0, double y0, double x1, double y1) { return Region(Rectangle{x0, y0, x1, y1}); }
    static Region union_of(const std::vector<Region>& parts);

    const std::vector<Primitive>& members() const { return members_; }
    bool is_union() const { return members_.size() > 1; }

    /// Dimension the region lives in (1 for intervals, 0 for half-spaces
    /// which fit either).
    int dim() const;

    /// Exact signed distance to the boundary, positive inside.
    double signed_distance(double x, double y = 0.0) const;

    std::string describe() const;

private:
    std::vector<Primitive> members_;
};

/// Throws ConfigError unless the region is well formed on this grid: matching
/// dimension, positive sizes, pairwise separated union members, and a
/// boundary that stays strictly inside the domain. Half-spaces require Neumann
/// walls.
void validate_region(const Region& region, const Grid& grid);

/// Smallest distance between the region boundary and the domain boundary.
/// For a half-space only the walls crossed by its normal count.
double clearance(const Region& region, const Grid& grid);

/// Perimeter of A inside the domain: number of jump points in 1D, boundary
/// length in 2D.
double perimeter(const Region& region, const Grid& grid);

/// Cellwise signed distance d_A (positive inside A).
FieldXd signed_distance(const Region& region, const Grid& grid);

// ---------------------------------------------------------------------------
// Transition profiles

enum class ProfileKind {
    /// phi' = sqrt(2 (W(phi) + eps)) / eps, phi(0) = u-; reaches u+ at t = width.
    Shifted,
    /// phi' = sqrt(2 W(phi) + eps) / eps, phi(0) = u-.
    ShiftedLiteral,
    /// phi' = sqrt(2 W(phi)) / eps centred on t = 0 (the tanh profile). Never
    /// reaches the pure phases exactly; width is the band where phi is more than
    /// 1e-3 (u+ - u-) away from both of them.
    Equipartition,
};

std::string_view to_string(ProfileKind kind);
ProfileKind profile_kind_from_string(std::string_view name);

/// One-dimensional transition profile phi(t) used to build recovery fields.
///
/// The shifted kinds store Phi(s) = int_{u-}^s dt/ds on a Chebyshev-graded
/// table of s values; phi = Phi^-1 is evaluated by bisection on the table and
/// cubic Hermite interpolation with the exact slopes 1/Phi'(s).
class Profile {
public:
    ProfileKind kind() const { return kind_; }
    double epsilon() const { return eps_; }
    double width() const { return width_; }

    /// [start, end] of the transition band in t.
    std::pair<double, double> band() const;

    double operator()(double t) const;
    /// dphi/dt from the defining ODE, evaluated at phi(t).
    double slope(double t) const;

    /// Phi(s): the inverse of phi, from the table (shifted kinds) or closed form.
    double inverse(double s) const;

    const std::vector<double>& table_t() const { return t_; }
    const std::vector<double>& table_s() const { return s_; }

    friend Profile build_profile(const ModelParamsd& m, ProfileKind kind, Index samples);

private:
    double slope_at_value(double s) const;

    ProfileKind kind_ = ProfileKind::Shifted;
    ModelParamsd params_;
    double eps_ = 0.0;
    double width_ = 0.0;
    double kappa_ = 0.0;  // equipartition rate
    std::vector<double> t_;
    std::vector<double> s_;
    std::vector<double> dsdt_;
};

/// Builds the profile for params.epsilon. `samples` >= 2048 table nodes.
Profile build_profile(const ModelParamsd& m, ProfileKind kind = ProfileKind::Shifted, Index samples = 4097);

/// Required clearance between the region and the domain walls, in units of
/// the profile width.
inline constexpr double kClearanceFactor = 5.0;

/// u = phi(d_A(x)). Throws ConfigError if the clearance is below 5 * width.
FieldXd build_recovery_field(const Region& region, const Grid& grid, const Profile& profile);
FieldXd build_recovery_field(const Region& region, const Grid& grid, const ModelParamsd& m,
                             ProfileKind kind = ProfileKind::Shifted);

/// Sharp field u- + (u+ - u-) chi_A sampled at cell centres (d_A > 0 is inside).
FieldXd sharp_field(const Region& region, const Grid& grid, const ModelParamsd& m);

/// int |u - sharp_field|.
double l1_gap(const FieldXd& u, const Region& region, const ModelParamsd& m);

}  // namespace dgch

#include "dgch/recovery.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <sstream>

#include "dgch/field_io.hpp"
#include "dgch/quadrature.hpp"

namespace dgch {

namespace {

template <class... Ts>
struct overloaded : Ts... {
    using Ts::operator()...;
};
template <class... Ts>
overloaded(Ts...) -> overloaded<Ts...>;

double box_signed_distance(const Rectangle& r, double x, double y)
{
    // positive inside
    const double dx = std::max(r.x0 - x, x - r.x1);
    const double dy = std::max(r.y0 - y, y - r.y1);
    const double outside = std::hypot(std::max(dx, 0.0), std::max(dy, 0.0));
    const double inside = std::min(std::max(dx, dy), 0.0);
    return -(outside + inside);
}

double primitive_distance(const Region::Primitive& p, double x, double y)
{
    return std::visit(overloaded{
                          [&](const HalfSpace& h) { return (h.axis == 0 ? x : y) - h.offset; },
                          [&](const Interval& i) { return std::min(x - i.a, i.b - x); },
                          [&](const Disk& d) { return d.radius - std::hypot(x - d.cx, y - d.cy); },
                          [&](const Rectangle& r) { return box_signed_distance(r, x, y); },
                      },
                      p);
}

int primitive_dim(const Region::Primitive& p)
{
    return std::visit(overloaded{
                          [](const HalfSpace&) { return 0; },
                          [](const Interval&) { return 1; },
                          [](const Disk&) { return 2; },
                          [](const Rectangle&) { return 2; },
                      },
                      p);
}

// Positive when the two primitives are disjoint with a gap.
double separation(const Region::Primitive& a, const Region::Primitive& b)
{
    if (std::holds_alternative<HalfSpace>(a) || std::holds_alternative<HalfSpace>(b))
        throw ConfigError("half-spaces cannot be part of a union");
    if (const auto* ia = std::get_if<Interval>(&a)) {
        const auto* ib = std::get_if<Interval>(&b);
        if (!ib) throw ConfigError("union mixes 1D and 2D members");
        return std::max(ib->a - ia->b, ia->a - ib->b);
    }
    if (std::holds_alternative<Interval>(b)) throw ConfigError("union mixes 1D and 2D members");
    if (const auto* da = std::get_if<Disk>(&a)) {
        if (const auto* db = std::get_if<Disk>(&b))
            return std::hypot(da->cx - db->cx, da->cy - db->cy) - da->radius - db->radius;
        return -box_signed_distance(std::get<Rectangle>(b), da->cx, da->cy) - da->radius;
    }
    const auto& ra = std::get<Rectangle>(a);
    if (const auto* db = std::get_if<Disk>(&b)) return -box_signed_distance(ra, db->cx, db->cy) - db->radius;
    const auto& rb = std::get<Rectangle>(b);
    const double gx = std::max(rb.x0 - ra.x1, ra.x0 - rb.x1);
    const double gy = std::max(rb.y0 - ra.y1, ra.y0 - rb.y1);
    if (gx > 0.0 || gy > 0.0) return std::hypot(std::max(gx, 0.0), std::max(gy, 0.0));
    return std::max(gx, gy);
}

double primitive_clearance(const Region::Primitive& p, const Grid& g)
{
    return std::visit(overloaded{
                          [&](const HalfSpace& h) { return std::min(h.offset, g.length(h.axis) - h.offset); },
                          [&](const Interval& i) { return std::min(i.a, g.length(0) - i.b); },
                          [&](const Disk& d) {
                              return std::min({d.cx - d.radius, g.length(0) - d.cx - d.radius, d.cy - d.radius,
                                               g.length(1) - d.cy - d.radius});
                          },
                          [&](const Rectangle& r) {
                              return std::min({r.x0, g.length(0) - r.x1, r.y0, g.length(1) - r.y1});
                          },
                      },
                      p);
}

double primitive_perimeter(const Region::Primitive& p, const Grid& g)
{
    return std::visit(overloaded{
                          [&](const HalfSpace& h) { return g.dim() == 1 ? 1.0 : g.length(1 - h.axis); },
                          [](const Interval&) { return 2.0; },
                          [](const Disk& d) { return 2.0 * std::numbers::pi * d.radius; },
                          [](const Rectangle& r) { return 2.0 * ((r.x1 - r.x0) + (r.y1 - r.y0)); },
                      },
                      p);
}

void validate_primitive(const Region::Primitive& p, const Grid& g)
{
    std::visit(overloaded{
                   [&](const HalfSpace& h) {
                       if (h.axis < 0 || h.axis >= g.dim()) throw ConfigError("half-space axis out of range");
                       if (g.bc() == Boundary::Periodic)
                           throw ConfigError("half-space regions touch the domain boundary; use a rectangle or "
                                             "interval with periodic boundaries");
                   },
                   [&](const Interval& i) {
                       if (!(i.a < i.b)) throw ConfigError("interval requires a < b");
                   },
                   [&](const Disk& d) {
                       if (!(d.radius > 0.0)) throw ConfigError("disk radius must be positive");
                   },
                   [&](const Rectangle& r) {
                       if (!(r.x0 < r.x1 && r.y0 < r.y1)) throw ConfigError("rectangle corners must be ordered");
                   },
               },
               p);
}

std::string describe_primitive(const Region::Primitive& p)
{
    std::ostringstream os;
    std::visit(overloaded{
                   [&](const HalfSpace& h) {
                       os << "halfspace(" << h.axis << "," << format_double(h.offset) << ")";
                   },
                   [&](const Interval& i) {
                       os << "interval(" << format_double(i.a) << "," << format_double(i.b) << ")";
                   },
                   [&](const Disk& d) {
                       os << "disk(" << format_double(d.cx) << "," << format_double(d.cy) << ","
                          << format_double(d.radius) << ")";
                   },
                   [&](const Rectangle& r) {
                       os << "rectangle(" << format_double(r.x0) << "," << format_double(r.y0) << ","
                          << format_double(r.x1) << "," << format_double(r.y1) << ")";
                   },
               },
               p);
    return os.str();
}

}  // namespace

// ---------------------------------------------------------------------------
// Region

Region Region::union_of(const std::vector<Region>& parts)
{
    Region r;
    for (const auto& part : parts)
        for (const auto& m : part.members_) r.members_.push_back(m);
    if (r.members_.empty()) throw ConfigError("union needs at least one member");
    return r;
}

int Region::dim() const
{
    int d = 0;
    for (const auto& m : members_) {
        const int md = primitive_dim(m);
        if (md == 0) continue;
        if (d != 0 && md != d) throw ConfigError("region mixes 1D and 2D members");
        d = md;
    }
    return d;
}

double Region::signed_distance(double x, double y) const
{
    double d = -std::numeric_limits<double>::infinity();
    for (const auto& m : members_) d = std::max(d, primitive_distance(m, x, y));
    return d;
}

std::string Region::describe() const
{
    if (members_.size() == 1) return describe_primitive(members_.front());
    std::string s = "union(";
    for (std::size_t i = 0; i < members_.size(); ++i) {
        if (i) s += ",";
        s += describe_primitive(members_[i]);
    }
    return s + ")";
}

void validate_region(const Region& region, const Grid& grid)
{
    if (region.members().empty()) throw ConfigError("empty region");
    const int d = region.dim();
    if (d != 0 && d != grid.dim()) throw ConfigError("region dimension does not match the grid");
    for (const auto& m : region.members()) validate_primitive(m, grid);
    const auto& ms = region.members();
    for (std::size_t i = 0; i < ms.size(); ++i)
        for (std::size_t j = i + 1; j < ms.size(); ++j)
            if (!(separation(ms[i], ms[j]) > 0.0)) throw ConfigError("union members must be disjoint and separated");
    if (!(clearance(region, grid) > 0.0)) throw ConfigError("region boundary touches or leaves the domain");
}

double clearance(const Region& region, const Grid& grid)
{
    double c = std::numeric_limits<double>::infinity();
    for (const auto& m : region.members()) c = std::min(c, primitive_clearance(m, grid));
    return c;
}

double perimeter(const Region& region, const Grid& grid)
{
    validate_region(region, grid);
    double total = 0.0;
    for (const auto& m : region.members()) total += primitive_perimeter(m, grid);
    return total;
}

FieldXd signed_distance(const Region& region, const Grid& grid)
{
    validate_region(region, grid);
    if (grid.dim() == 1) return FieldXd::sample(grid, [&](double x) { return region.signed_distance(x); });
    return FieldXd::sample(grid, [&](double x, double y) { return region.signed_distance(x, y); });
}

// ---------------------------------------------------------------------------
// Profiles

std::string_view to_string(ProfileKind kind)
{
    switch (kind) {
    case ProfileKind::Shifted: return "shifted";
    case ProfileKind::ShiftedLiteral: return "shifted_literal";
    case ProfileKind::Equipartition: return "equipartition";
    }
    return "unknown";
}

ProfileKind profile_kind_from_string(std::string_view name)
{
    if (name == "shifted") return ProfileKind::Shifted;
    if (name == "shifted_literal") return ProfileKind::ShiftedLiteral;
    if (name == "equipartition") return ProfileKind::Equipartition;
    throw ConfigError("unknown profile kind '" + std::string(name) + "'");
}

namespace {

constexpr double kEquipartitionBandTolerance = 1e-3;

}  // namespace

double Profile::slope_at_value(double s) const
{
    const double W = potential(s, params_);
    switch (kind_) {
    case ProfileKind::Shifted: return std::sqrt(2.0 * (W + eps_)) / eps_;
    case ProfileKind::ShiftedLiteral: return std::sqrt(2.0 * W + eps_) / eps_;
    case ProfileKind::Equipartition: return std::sqrt(2.0 * W) / eps_;
    }
    return 0.0;
}

std::pair<double, double> Profile::band() const
{
    if (kind_ == ProfileKind::Equipartition) return {-0.5 * width_, 0.5 * width_};
    return {0.0, width_};
}

double Profile::operator()(double t) const
{
    const double lo = params_.u_minus;
    const double hi = params_.u_plus;
    if (kind_ == ProfileKind::Equipartition) return params_.midpoint() + 0.5 * params_.span() * std::tanh(kappa_ * t);
    if (t <= 0.0) return lo;
    if (t >= width_) return hi;

    const auto it = std::upper_bound(t_.begin(), t_.end(), t);
    const std::size_t i = static_cast<std::size_t>(std::clamp<std::ptrdiff_t>(it - t_.begin() - 1, 0,
                                                                             static_cast<std::ptrdiff_t>(t_.size()) - 2));
    const double h = t_[i + 1] - t_[i];
    const double x = (t - t_[i]) / h;
    const double x2 = x * x;
    const double x3 = x2 * x;
    const double h00 = 2 * x3 - 3 * x2 + 1;
    const double h10 = x3 - 2 * x2 + x;
    const double h01 = -2 * x3 + 3 * x2;
    const double h11 = x3 - x2;
    const double s = h00 * s_[i] + h10 * h * dsdt_[i] + h01 * s_[i + 1] + h11 * h * dsdt_[i + 1];
    return std::clamp(s, s_[i], s_[i + 1]);
}

double Profile::slope(double t) const
{
    if (kind_ != ProfileKind::Equipartition && (t <= 0.0 || t > width_)) return 0.0;
    if (kind_ == ProfileKind::Equipartition) {
        const double th = std::tanh(kappa_ * t);
        return 0.5 * params_.span() * kappa_ * (1.0 - th * th);
    }
    return slope_at_value((*this)(t));
}

double Profile::inverse(double s) const
{
    const double lo = params_.u_minus;
    const double hi = params_.u_plus;
    if (kind_ == ProfileKind::Equipartition) {
        const double y = (s - params_.midpoint()) / (0.5 * params_.span());
        if (y <= -1.0) return -std::numeric_limits<double>::infinity();
        if (y >= 1.0) return std::numeric_limits<double>::infinity();
        return std::atanh(y) / kappa_;
    }
    if (s <= lo) return 0.0;
    if (s >= hi) return width_;
    const auto it = std::upper_bound(s_.begin(), s_.end(), s);
    const std::size_t i = static_cast<std::size_t>(it - s_.begin() - 1);
    auto rate = [&](double x) { return 1.0 / slope_at_value(x); };
    return t_[i] + integrate_adaptive(rate, s_[i], s, {1e-15, 1e-14, 200}).value;
}

Profile build_profile(const ModelParamsd& m, ProfileKind kind, Index samples)
{
    if (!(m.u_minus < m.u_plus) || !(m.epsilon > 0.0) || !(m.gamma >= 0.0))
        throw ConfigError("profile needs u_minus < u_plus, epsilon > 0 and gamma >= 0");
    if (samples < 2048) throw ConfigError("profile table needs at least 2048 samples");
    Profile pr;
    pr.kind_ = kind;
    pr.params_ = m;
    pr.eps_ = m.epsilon;

    const double mid = m.midpoint();
    const double half = 0.5 * m.span();

    if (kind == ProfileKind::Equipartition) {
        if (!(m.gamma > 0.0)) throw ConfigError("equipartition profile requires gamma > 0");
        pr.kappa_ = std::sqrt(2.0 * m.gamma) * half / m.epsilon;
        pr.width_ = 2.0 * std::atanh(1.0 - 2.0 * kEquipartitionBandTolerance) / pr.kappa_;
        pr.t_.resize(static_cast<std::size_t>(samples));
        pr.s_.resize(pr.t_.size());
        pr.dsdt_.resize(pr.t_.size());
        for (std::size_t i = 0; i < pr.t_.size(); ++i) {
            const double t = -0.5 * pr.width_ + pr.width_ * static_cast<double>(i) / static_cast<double>(samples - 1);
            pr.t_[i] = t;
            pr.s_[i] = pr(t);
            pr.dsdt_[i] = pr.slope(t);
        }
        return pr;
    }

    // Chebyshev-Lobatto nodes in s cluster next to the pure phases, where phi
    // leaves u- and approaches u+.
    const auto n = static_cast<std::size_t>(samples);
    pr.s_.resize(n);
    for (std::size_t i = 0; i < n; ++i)
        pr.s_[i] = mid - half * std::cos(std::numbers::pi * static_cast<double>(i) / static_cast<double>(n - 1));
    pr.s_.front() = m.u_minus;
    pr.s_.back() = m.u_plus;
    pr.s_[(n - 1) / 2] = (n % 2 == 1) ? mid : pr.s_[(n - 1) / 2];

    pr.t_.assign(n, 0.0);
    pr.dsdt_.resize(n);
    auto rate = [&](double s) { return 1.0 / pr.slope_at_value(s); };
    for (std::size_t i = 0; i + 1 < n; ++i)
        pr.t_[i + 1] = pr.t_[i] + integrate_adaptive(rate, pr.s_[i], pr.s_[i + 1], {1e-16, 1e-14, 200}).value;
    for (std::size_t i = 0; i < n; ++i) pr.dsdt_[i] = pr.slope_at_value(pr.s_[i]);
    pr.width_ = pr.t_.back();
    return pr;
}

// ---------------------------------------------------------------------------
// Recovery fields

FieldXd build_recovery_field(const Region& region, const Grid& grid, const Profile& profile)
{
    validate_region(region, grid);
    const double needed = kClearanceFactor * profile.width();
    if (clearance(region, grid) < needed) {
        std::ostringstream os;
        os << "region clearance " << clearance(region, grid) << " is below " << kClearanceFactor
           << " x profile width (" << needed << ")";
        throw ConfigError(os.str());
    }
    const auto d = signed_distance(region, grid);
    return d.map([&](double x) { return profile(x); });
}

FieldXd build_recovery_field(const Region& region, const Grid& grid, const ModelParamsd& m, ProfileKind kind)
{
    return build_recovery_field(region, grid, build_profile(m, kind));
}

FieldXd sharp_field(const Region& region, const Grid& grid, const ModelParamsd& m)
{
    const auto d = signed_distance(region, grid);
    return d.map([&](double x) { return x > 0.0 ? m.u_plus : m.u_minus; });
}

double l1_gap(const FieldXd& u, const Region& region, const ModelParamsd& m)
{
    const auto sharp = sharp_field(region, u.grid(), m);
    return integrate(u.grid(), (u.values() - sharp.values()).abs().eval());
}

}  // namespace dgch

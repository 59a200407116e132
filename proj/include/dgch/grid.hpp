#pragma once

#include <Eigen/Core>
#include <array>
#include <cmath>
#include <string>
#include <string_view>
#include <type_traits>

#include "dgch/errors.hpp"

namespace dgch {

using Index = Eigen::Index;

enum class Boundary { Periodic, Neumann };

std::string_view to_string(Boundary bc);
Boundary boundary_from_string(std::string_view name);

/// Uniform cell-centred grid on [0, L0] or [0, L0] x [0, L1].
///
/// Cell (i, j) has linear index i + n0 * j, so axis 0 varies fastest and a
/// "row" is a fixed j. Cell centres sit at ((i + 1/2) h0, (j + 1/2) h1).
class Grid {
public:
    Grid() = default;

    static Grid line(Index n, double length, Boundary bc = Boundary::Periodic);
    static Grid plane(Index n0, Index n1, double length0, double length1, Boundary bc = Boundary::Periodic);
    static Grid square(Index n, double length, Boundary bc = Boundary::Periodic)
    {
        return plane(n, n, length, length, bc);
    }

    int dim() const { return dim_; }
    Index n(int axis) const { return n_[axis]; }
    double length(int axis) const { return length_[axis]; }
    double h(int axis) const { return h_[axis]; }
    double min_h() const { return dim_ == 1 ? h_[0] : std::min(h_[0], h_[1]); }
    Boundary bc() const { return bc_; }

    Index cells() const { return dim_ == 1 ? n_[0] : n_[0] * n_[1]; }
    double cell_volume() const { return dim_ == 1 ? h_[0] : h_[0] * h_[1]; }
    double measure() const { return dim_ == 1 ? length_[0] : length_[0] * length_[1]; }

    double center(int axis, Index i) const { return (static_cast<double>(i) + 0.5) * h_[axis]; }
    Index index(Index i, Index j = 0) const { return i + n_[0] * j; }

    bool operator==(const Grid& other) const
    {
        return dim_ == other.dim_ && n_ == other.n_ && length_ == other.length_ && bc_ == other.bc_;
    }
    bool operator!=(const Grid& other) const { return !(*this == other); }

    std::string describe() const;

private:
    int dim_ = 1;
    std::array<Index, 2> n_{4, 1};
    std::array<double, 2> length_{1.0, 1.0};
    std::array<double, 2> h_{0.25, 1.0};
    Boundary bc_ = Boundary::Periodic;
};

/// Cell-centred scalar field on a grid.
template <typename Scalar>
class Field {
public:
    using Values = Eigen::Array<Scalar, Eigen::Dynamic, 1>;

    Field() = default;

    /// Throws ConfigError on size mismatch or non-finite values.
    Field(const Grid& grid, Values values) : grid_(grid), values_(std::move(values))
    {
        if (values_.size() != grid_.cells()) throw ConfigError("field size does not match grid cell count");
        if (!values_.allFinite()) throw ConfigError("field values must be finite");
    }

    static Field constant(const Grid& grid, Scalar value)
    {
        return Field(grid, Values::Constant(grid.cells(), value));
    }

    /// Samples f(x) (1D) or f(x, y) (2D) at cell centres.
    template <typename F>
    static Field sample(const Grid& grid, F&& f)
    {
        Values v(grid.cells());
        if constexpr (std::is_invocable_v<F&, double>) {
            if (grid.dim() != 1) throw ConfigError("one-argument sampler used on a 2D grid");
            for (Index i = 0; i < grid.n(0); ++i) v(i) = f(grid.center(0, i));
        } else {
            if (grid.dim() != 2) throw ConfigError("two-argument sampler used on a 1D grid");
            for (Index j = 0; j < grid.n(1); ++j)
                for (Index i = 0; i < grid.n(0); ++i) v(grid.index(i, j)) = f(grid.center(0, i), grid.center(1, j));
        }
        return Field(grid, std::move(v));
    }

    const Grid& grid() const { return grid_; }
    const Values& values() const { return values_; }
    Scalar operator()(Index k) const { return values_(k); }
    Index size() const { return values_.size(); }

    /// Elementwise map; the result must stay finite.
    template <typename F>
    Field map(F&& f) const
    {
        return Field(grid_, values_.unaryExpr(std::forward<F>(f)).eval());
    }

private:
    Grid grid_;
    Values values_;
};

using FieldXd = Field<double>;

namespace detail {

// Neighbour of cell i along an axis with n cells; returns i itself for the
// Neumann ghost (reflection gives a zero difference across the wall).
inline Index neighbour(Index i, Index n, int step, Boundary bc)
{
    const Index k = i + step;
    if (k >= 0 && k < n) return k;
    if (bc == Boundary::Periodic) return (k + n) % n;
    return i;
}

}  // namespace detail

/// Per-cell |grad u|^2: on each axis, the mean of the squared forward and
/// backward differences. Neumann walls reflect (the wall difference is 0),
/// periodic axes wrap.
template <typename Scalar>
Field<Scalar> gradient_sq(const Field<Scalar>& f)
{
    const Grid& g = f.grid();
    const auto& u = f.values();
    typename Field<Scalar>::Values out = Field<Scalar>::Values::Zero(g.cells());
    const Index n0 = g.n(0);
    const Index n1 = g.dim() == 2 ? g.n(1) : 1;
    const Scalar inv0 = Scalar(1) / (Scalar(2) * Scalar(g.h(0)) * Scalar(g.h(0)));
    for (Index j = 0; j < n1; ++j) {
        for (Index i = 0; i < n0; ++i) {
            const Index k = g.index(i, j);
            const Scalar fw = u(g.index(detail::neighbour(i, n0, +1, g.bc()), j)) - u(k);
            const Scalar bw = u(k) - u(g.index(detail::neighbour(i, n0, -1, g.bc()), j));
            out(k) = (fw * fw + bw * bw) * inv0;
        }
    }
    if (g.dim() == 2) {
        const Scalar inv1 = Scalar(1) / (Scalar(2) * Scalar(g.h(1)) * Scalar(g.h(1)));
        for (Index j = 0; j < n1; ++j) {
            const Index jp = detail::neighbour(j, n1, +1, g.bc());
            const Index jm = detail::neighbour(j, n1, -1, g.bc());
            for (Index i = 0; i < n0; ++i) {
                const Index k = g.index(i, j);
                const Scalar fw = u(g.index(i, jp)) - u(k);
                const Scalar bw = u(k) - u(g.index(i, jm));
                out(k) += (fw * fw + bw * bw) * inv1;
            }
        }
    }
    return Field<Scalar>(g, std::move(out));
}

/// Per-cell div(coef grad f) in conservative flux form: face coefficients are
/// the arithmetic mean of the two adjacent cells, fluxes are compact
/// differences, and Neumann walls carry zero flux.
template <typename Scalar>
Field<Scalar> divergence_of_flux(const Field<Scalar>& coef, const Field<Scalar>& f)
{
    const Grid& g = f.grid();
    if (coef.grid() != g) throw ConfigError("divergence_of_flux: coefficient and field live on different grids");
    const auto& c = coef.values();
    const auto& u = f.values();
    typename Field<Scalar>::Values out = Field<Scalar>::Values::Zero(g.cells());
    const Index n0 = g.n(0);
    const Index n1 = g.dim() == 2 ? g.n(1) : 1;

    auto sweep_axis = [&](int axis) {
        const Scalar inv = Scalar(1) / (Scalar(g.h(axis)) * Scalar(g.h(axis)));
        const Index n_axis = g.n(axis);
        const Index lines = axis == 0 ? n1 : n0;
        for (Index line = 0; line < lines; ++line) {
            auto at = [&](Index s) { return axis == 0 ? g.index(s, line) : g.index(line, s); };
            // faces s+1/2 for s = 0..n-1 (periodic) or 0..n-2 (Neumann)
            const Index faces = g.bc() == Boundary::Periodic ? n_axis : n_axis - 1;
            for (Index s = 0; s < faces; ++s) {
                const Index a = at(s);
                const Index b = at((s + 1) % n_axis);
                const Scalar flux = Scalar(0.5) * (c(a) + c(b)) * (u(b) - u(a)) * inv;
                out(a) += flux;
                out(b) -= flux;
            }
        }
    };
    sweep_axis(0);
    if (g.dim() == 2) sweep_axis(1);
    return Field<Scalar>(g, std::move(out));
}

/// Midpoint rule: sum of values times the cell volume, summed in index order.
template <typename Scalar>
Scalar integrate(const Field<Scalar>& f)
{
    Scalar sum(0);
    const auto& v = f.values();
    for (Index k = 0; k < v.size(); ++k) sum += v(k);
    return sum * Scalar(f.grid().cell_volume());
}

/// Midpoint rule applied to any per-cell array on the grid.
template <typename Derived>
typename Derived::Scalar integrate(const Grid& grid, const Eigen::ArrayBase<Derived>& values)
{
    typename Derived::Scalar sum(0);
    for (Index k = 0; k < values.size(); ++k) sum += values(k);
    return sum * typename Derived::Scalar(grid.cell_volume());
}

}  // namespace dgch

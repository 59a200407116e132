#include "dgch/grid.hpp"

#include <sstream>

namespace dgch {

std::string_view to_string(Boundary bc)
{
    return bc == Boundary::Periodic ? "periodic" : "neumann";
}

Boundary boundary_from_string(std::string_view name)
{
    if (name == "periodic") return Boundary::Periodic;
    if (name == "neumann") return Boundary::Neumann;
    throw ConfigError("unknown boundary condition '" + std::string(name) + "'");
}

namespace {

void check_axis(Index n, double length)
{
    if (n < 4) throw ConfigError("grid needs at least 4 cells per axis");
    if (!(length > 0.0) || !std::isfinite(length)) throw ConfigError("grid length must be positive and finite");
}

}  // namespace

Grid Grid::line(Index n, double length, Boundary bc)
{
    check_axis(n, length);
    Grid g;
    g.dim_ = 1;
    g.n_ = {n, 1};
    g.length_ = {length, 1.0};
    g.h_ = {length / static_cast<double>(n), 1.0};
    g.bc_ = bc;
    return g;
}

Grid Grid::plane(Index n0, Index n1, double length0, double length1, Boundary bc)
{
    check_axis(n0, length0);
    check_axis(n1, length1);
    Grid g;
    g.dim_ = 2;
    g.n_ = {n0, n1};
    g.length_ = {length0, length1};
    g.h_ = {length0 / static_cast<double>(n0), length1 / static_cast<double>(n1)};
    g.bc_ = bc;
    return g;
}

std::string Grid::describe() const
{
    std::ostringstream os;
    os.precision(17);
    os << "dim=" << dim_ << " n=" << n_[0];
    if (dim_ == 2) os << "x" << n_[1];
    os << " length=" << length_[0];
    if (dim_ == 2) os << "x" << length_[1];
    os << " bc=" << to_string(bc_);
    return os.str();
}

}  // namespace dgch

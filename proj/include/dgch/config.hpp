#pragma once

#include <optional>
#include <string>
#include <vector>

#include "dgch/flow.hpp"
#include "dgch/recovery.hpp"
#include "dgch/sweep.hpp"

namespace dgch {

/// Run configuration read from an INI-style file:
///
///   [model]   u_minus u_plus gamma p alpha epsilon form
///   [grid]    dim n length bc
///   [region]  shape            e.g. disk(0.5,0.5,0.2), union(interval(1,2),interval(3,4))
///   [sweep]   eps_list cells_per_width max_cells_per_axis cutoff_K tolerance profile threads
///   [flow]    dt_init t_end dt_min save_every safety
///   [initial] profile
///   [output]  dir
///
/// '#' and ';' start comments. Unknown sections or keys are errors.
struct RunConfig {
    ModelParamsd params;
    CoefficientForm form = CoefficientForm::SingularP;

    int dim = 1;
    std::vector<Index> n;  // empty unless given
    std::vector<double> length{1.0};
    Boundary bc = Boundary::Periodic;

    std::optional<Region> region;

    std::vector<double> eps_list;
    GridPolicy policy;
    SweepOptions sweep;
    double tolerance = 0.02;

    bool has_flow = false;
    FlowConfig flow;
    ProfileKind initial_profile = ProfileKind::Shifted;

    std::string output_dir;

    /// Domain grid; uses n when given, otherwise 4 cells per axis (sweeps
    /// choose their own resolution).
    Grid domain() const;

    /// One line "key=value ..." with every resolved setting.
    std::string describe() const;
};

/// Throws ConfigError with a line number on any syntax, key or value error.
RunConfig parse_config(const std::string& text);
RunConfig load_config(const std::string& path);

/// Parses "disk(0.5,0.5,0.2)" and friends.
Region parse_region(const std::string& text);

/// Comma or whitespace separated numbers.
std::vector<double> parse_number_list(const std::string& text);

}  // namespace dgch

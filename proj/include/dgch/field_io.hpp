#pragma once

#include <iosfwd>
#include <string>

#include "dgch/grid.hpp"

namespace dgch {

/// "%.17g" formatting used for every number written by the toolkit.
std::string format_double(double x);

/// CSV layout: optional "# ..." comment lines, then one line per grid row
/// (one line in 1D), values comma separated. write_csv emits a leading
/// "# grid dim=.. n=.. length=.. bc=.." line that read_csv needs.
void write_csv(std::ostream& os, const FieldXd& field);
FieldXd read_csv(std::istream& is);

/// Binary layout, all little-endian:
///   int32 dims | int64 n[dims] | float64 length[dims] | int32 bc (0 periodic, 1 neumann)
///   | float64 values[cells] in row-major order (axis 0 fastest).
void write_binary(std::ostream& os, const FieldXd& field);
FieldXd read_binary(std::istream& is);

void write_binary_file(const std::string& path, const FieldXd& field);
FieldXd read_binary_file(const std::string& path);

}  // namespace dgch

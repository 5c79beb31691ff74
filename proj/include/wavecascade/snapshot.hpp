#pragma once

#include <iosfwd>
#include <string>

#include "wavecascade/grid.hpp"

namespace wavecascade {

/// Binary field file: 16-byte magic "WAVECASCADE-F64\0", u32 nx, u32 ny, f64 lx,
/// f64 ly, then nx*ny f64 values in storage order.  Everything little-endian.
void write_snapshot(std::ostream& out, const ScalarField& u);
ScalarField read_snapshot(std::istream& in);

void write_snapshot(const std::string& path, const ScalarField& u);
ScalarField read_snapshot(const std::string& path);

}  // namespace wavecascade

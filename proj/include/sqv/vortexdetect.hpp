#pragma once

#include <cstddef>
#include <vector>

#include "sqv/quadfield.hpp"

namespace sqv {

struct Vortex {
  double x = 0.0;
  double y = 0.0;
  int charge = 0;
};

struct DetectionParams {
  double amplitude_floor = 1e-3;  // relative to the global max amplitude
  double merge_radius = 3.0;      // in grid spacings
};

struct VortexReport {
  std::vector<Vortex> vortices;
  int total_charge = 0;
  std::size_t count = 0;
  DetectionParams params;
  std::size_t indeterminate_cells = 0;
};

/// Winding of the closed counter-clockwise loop along the perimeter of the
/// node rectangle [i0, i1] x [j0, j1]: the sum of principal-value phase steps
/// divided by 2 pi. A loop whose steps are all 0 or +-pi (a real field up to a
/// global phase) has winding 0. Nodes must lie inside the grid, i0 < i1, j0 < j1.
int loop_winding(const ComplexField& field, int i0, int j0, int i1, int j1);

/// Winding around the unit cell with lower-left node (i, j). A cell whose
/// lower-left node is an exact zero is resolved on the ring one node outward;
/// zeros on the other corners belong to the cells they are lower-left of.
/// Cells with a +-pi step on a non-collinear loop are reported as 0 here and
/// counted as indeterminate by detect_vortices.
int plaquette_winding(const ComplexField& field, int i, int j);

/// Throws std::invalid_argument for resolution < 32.
VortexReport detect_vortices(const ComplexField& field, const DetectionParams& params = {});

}  // namespace sqv

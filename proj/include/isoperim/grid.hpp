#pragma once

#include <cstddef>
#include <vector>

namespace isoperim {

/// Evaluation grid on [edge, 1-edge], symmetric, endpoint-refined:
/// geometric spacing on [edge, shoulder] and [1-shoulder, 1-edge], uniform in
/// between. Includes edge, 1-edge and 0.5 exactly. The profiles and the
/// inequalities they enter degenerate at 0 and 1, so uniform grids waste all
/// their resolution in the middle where nothing happens.
std::vector<double> refined_grid(std::size_t nodes, double edge, double shoulder = 0.1);

/// Geometric grid on [lo, hi], endpoints included.
std::vector<double> geometric_grid(std::size_t nodes, double lo, double hi);

} // namespace isoperim
